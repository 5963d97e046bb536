# %% [markdown]
# # Two atoms
#
# Chiral waveguide: the bright state empties completely at gamma t = 2, because
# the excitation has been moved into the dark state, and then it briefly revives.

# %%
import numpy as np

from wgqed import AtomEnsemble, simulate_decay, two_atom_bidirectional_analytic

t = np.linspace(0, 8, 17)
curve = simulate_decay(AtomEnsemble([0.0, 0.4], kind="chiral"), t)
print(" gamma t    P_W      P_D      P_exc")
for row in zip(curve.gamma_t, curve.p_w, curve.p_d, curve.p_exc):
    print("  %5.2f   %.4f   %.4f   %.4f" % row)

# %% [markdown]
# Bidirectional waveguide: the populations depend on the separation
# d = |theta_1 - theta_2|. Nearby atoms (d -> 0) give superradiant decay
# exp(-2 Gamma t) with Gamma = 2 gamma.

# %%
for d in (1e-6, 0.7, np.pi / 2):
    curve = simulate_decay(AtomEnsemble([0.0, d], kind="bidirectional"), t)
    ww, _ = two_atom_bidirectional_analytic(d, 1.0, t)
    print(f"d={d:.3g}: P_W(gamma t=1) = {curve.p_w[2]:.5f}, closed form {ww[2]:.5f}, "
          f"max deviation {np.max(np.abs(curve.p_w - ww)):.1e}")
