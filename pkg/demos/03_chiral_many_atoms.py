# %% [markdown]
# # Many atoms on a chiral waveguide
#
# The bright-state population is (1/N^2) e^{-gamma t} L_{N-1}^(1)(gamma t)^2.
# With kappa = N gamma fixed and N -> infinity it tends to
# J1(2 sqrt(kappa t))^2 / (kappa t), which falls off as (kappa t)^{-3/2}
# instead of exponentially.

# %%
import numpy as np

from wgqed import pw_chiral_asymptotic, pw_chiral_exact, pw_longtime, simulate_decay, AtomEnsemble
from wgqed.analytic import local_maxima

kt = np.linspace(0, 20, 2001)
for n in (10, 100, 1000):
    err = np.max(np.abs(pw_chiral_exact(n, 1.0 / n, kt) - pw_chiral_asymptotic(1.0, kt)))
    print(f"N={n:5d}: max |exact - Bessel limit| over kappa t <= 20 = {err:.2e}")

# %% [markdown]
# Direct time evolution agrees with the Laguerre formula, whatever the
# positions are.

# %%
t = np.linspace(0, 30, 300)
ens = AtomEnsemble(np.random.default_rng(0).uniform(0, 100, 8), kind="chiral")
print("N=8 max deviation:", np.max(np.abs(simulate_decay(ens, t).p_w - pw_chiral_exact(8, 1.0, t))))

# %% [markdown]
# Long-time tail: fit the local maxima of the algebraic law on a log-log scale.

# %%
u = np.geomspace(10, 1000, 200001)
xm, ym = local_maxima(u, pw_longtime(1.0, u))
print("log-log slope of maxima:", np.polyfit(np.log(xm), np.log(ym), 1)[0])

# %% [markdown]
# At finite N the algebraic tail only lasts for a while. The crossover is
# located empirically by comparing finite-N maxima with the infinite-N envelope.

# %%
n = 20
u = np.linspace(1, 4000, 400001)
xe, ye = local_maxima(u, pw_chiral_exact(n, 1.0 / n, u))
ratio = ye * np.pi * xe**1.5  # 1 on the N = infinity envelope
print(f"N={n}: exact maxima / envelope at kappa t =", np.round(xe[::6]), "->", np.round(ratio[::6], 3))
late = xe > 50  # the envelope formula itself is only asymptotic
off = late & (np.abs(ratio - 1) > 0.2)
print("maxima leave the envelope by >20% from kappa t ~", xe[np.argmax(off)], f"(N^2 = {n * n})")
