# %% [markdown]
# # Phase-space picture
#
# The output is a pure Gaussian state; its quadrature means and covariance
# matrix have closed forms.  The Fock-space engine reproduces them.

# %%
import math

import numpy as np

from squeezebounds import ModelParams, evolve_moments, fock_oracle
from squeezebounds.gaussian import evolve_symplectic

p = ModelParams(lambda1=0.3, lambda2=0.1, alpha=0.5, theta=0.2, phi=0.7)
g = evolve_moments(p)
print("means", g.mean)
print("covariance\n", g.cov)
print("det =", g.purity_det, "(pure state: 1/4)")

mean, cov = fock_oracle.output_moments(p)
print("Fock-space max difference:", max(np.max(np.abs(mean - g.mean)), np.max(np.abs(cov - g.cov))))
print("symplectic path difference:", np.max(np.abs(evolve_symplectic(p).cov - g.cov)))

# %% [markdown]
# ## The scrambler creates q-p correlations
#
# The cross term vanishes at `phi = 0` and `phi = pi/2` and is largest at
# `phi = pi/4`.

# %%
for phi in np.linspace(0, math.pi / 2, 5):
    c = evolve_moments(ModelParams(lambda1=0.5, phi=phi)).cov
    print(f"phi={phi:.4f}  cov_qp={c[0, 1]: .5f}")

# %% [markdown]
# Without the scrambler only `lambda1 + lambda2` matters; at a quarter turn
# only `lambda2 - lambda1` does.

# %%
a = evolve_moments(ModelParams(0.2, 0.6, 1.0, 0.3, 0.0))
b = evolve_moments(ModelParams(0.5, 0.3, 1.0, 0.3, 0.0))
print("phi=0, equal sums:", np.allclose(a.cov, b.cov), np.allclose(a.mean, b.mean))
a = evolve_moments(ModelParams(0.2, 0.6, 1.0, 0.3, math.pi / 2))
b = evolve_moments(ModelParams(0.5, 0.9, 1.0, 0.3, math.pi / 2))
print("phi=pi/2, equal differences:", np.allclose(a.cov, b.cov), np.allclose(a.mean, b.mean))
