# %% [markdown]
# # Continuum limit
#
# With N -> infinity the amplitudes become a field psi(x, t) obeying an
# integro-differential equation with kernel exp(i|x - y|). For a uniform
# sample of length k sigma >> 1 the field is e^{ix} J0(2 sqrt(kappa t x / sigma)).

# %%
import numpy as np

from wgqed import (GaussianProfile, UniformInterval, analytic_continuum_field,
                   pw_chiral_asymptotic, pw_from_field, solve_continuum)
from wgqed.continuum import default_x_grid

n = 100.0
t = np.linspace(0, 10, 21) / n
prof = UniformInterval(5000.0, n)
x = default_x_grid(prof, 0.2)
field = solve_continuum(prof, 1.0, x, t)
exact = analytic_continuum_field(x[None, :], t[:, None], n, prof.sigma_phase)
print("max field deviation from the Bessel solution:", np.abs(field.psi - exact).max())

# %% [markdown]
# The bright-state population does not depend on the profile shape.

# %%
gauss = GaussianProfile(1000.0, n)
pw_u = pw_from_field(field, prof).p_w
pw_g = pw_from_field(solve_continuum(gauss, 1.0, default_x_grid(gauss, 0.2), t), gauss).p_w
print(np.column_stack([n * t, pw_u, pw_g, pw_chiral_asymptotic(n, t)])[::4])

# %% [markdown]
# A sub-wavelength sample decays collectively: psi = e^{ix} e^{-kappa t}.

# %%
tiny = UniformInterval(1e-3, n)
f = solve_continuum(tiny, 1.0, default_x_grid(tiny), t)
print("P_W:", np.round(pw_from_field(f, tiny).p_w[:5], 6))
print("e^-2kt:", np.round(np.exp(-2 * n * t[:5]), 6))
