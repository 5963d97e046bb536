# %% [markdown]
# # Coupling kernels on a 1D waveguide
#
# Atoms sit at optical phases theta_j = k x_j. The waveguide mediates a coherent
# exchange J and a correlated decay Gamma; together they form
# H_eff = J - (i/2) Gamma, which drives a single shared excitation.

# %%
import numpy as np

from wgqed import AtomEnsemble, build_kernels

np.set_printoptions(precision=3, suppress=True)

theta = np.array([0.0, 1.1, 2.9])
chiral = build_kernels(AtomEnsemble(theta, gamma=1.0, kind="chiral"))
bidi = build_kernels(AtomEnsemble(theta, gamma=1.0, kind="bidirectional"))

print("chiral Gamma diagonal:", chiral.Gamma.diagonal().real)   # gamma
print("bidirectional Gamma diagonal:", bidi.Gamma.diagonal().real)  # 2 gamma

# %% [markdown]
# A chiral waveguide only carries light forwards, so after removing the
# propagation phases the effective Hamiltonian is lower triangular: atom j
# only hears the atoms in front of it.

# %%
U = np.diag(np.exp(1j * theta))
print(U.conj().T @ chiral.H_eff @ U)

# %% [markdown]
# The chiral decay matrix is rank one (only the bright mode radiates);
# the bidirectional one has rank two (forward and backward modes).

# %%
print("chiral singular values:", np.linalg.svd(chiral.Gamma, compute_uv=False))
print("bidirectional singular values:", np.linalg.svd(bidi.Gamma, compute_uv=False))
