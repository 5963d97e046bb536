# %% [markdown]
# # Disorder-averaged bidirectional waveguide
#
# For a sample much longer than a wavelength (k sigma = 1000) the averaged
# bidirectional decay follows the chiral curve. For a sample much smaller than
# a wavelength it reverts to superradiant decay exp(-2 kappa t).

# %%
import numpy as np

from wgqed import Gaussian, average_decay, pw_chiral_exact, pw_superradiant

n = 100
t = np.linspace(0, 20, 41) / n
res = average_decay("bidirectional", Gaussian(0, 1000.0), n, 100, t, seed=7,
                    keep_realizations=True)
chiral = pw_chiral_exact(n, 1.0, t)
print(" kappa t   <P_W>     +-se      chiral")
for row in zip(res.mean_curve.kappa_t[::4], res.mean_curve.p_w[::4],
               res.stderr_p_w[::4], chiral[::4]):
    print("  %5.1f   %.5f  %.5f   %.5f" % row)
spread = np.std([c.p_w for c in res.per_realization], axis=0)
print("largest single-realization spread:", spread.max())

# %%
n = 50
t = np.linspace(0, 3, 7) / n
small = average_decay("bidirectional", Gaussian(0, 1e-3), n, 50, t, seed=1)
print("small sample:", np.round(small.mean_curve.p_w, 5))
print("e^-2kt      :", np.round(pw_superradiant(n * 1.0, t), 5))

# %% [markdown]
# Two atoms in a long sample: early decay close to 1 - (3/2) Gamma t rather
# than the superradiant 1 - 2 Gamma t.

# %%
t = np.linspace(0, 0.025, 6)
pair = average_decay("bidirectional", Gaussian(0, 1000.0), 2, 1000, t, seed=3)
print(np.column_stack([2 * t, pair.mean_curve.p_w, 1 - 1.5 * 2 * t]))
