# %% [markdown]
# # Sloppiness, incompatibility and the Holevo-bound sandwich
#
# From `Q` and `U` we get the sloppiness `S = 1/det Q`, the quantumness
# `R = sqrt(det U / det Q)` and the scalar SLD bound `C_Q = Tr Q^-1`.  The
# Holevo bound sits between `C_Q` and `C_Q (1 + T_I)`, and
# `C_Q (1 + T_I) <= C_Q (1 + R)`.

# %%
import math

import numpy as np

from squeezebounds import (
    ModelParams, asymptotic_R, asymptotic_T, cq_optimal_closed, info_closed, scalar_bounds,
)

Q4 = math.pi / 4


def bounds_at(**kw):
    m = info_closed(ModelParams(**kw))
    return scalar_bounds(m.qfim, m.uhlmann)


print(bounds_at(theta=Q4, phi=Q4))

# %% [markdown]
# ## The best scrambler
#
# `C_Q` is smallest at `phi = theta = pi/4`; a coarse scan over the angles
# shows it.

# %%
grid = np.linspace(0, math.pi / 2, 9)
table = np.array([[bounds_at(lambda1=0.6, alpha=1.0, theta=t, phi=f).cq or np.inf
                   for t in grid] for f in grid])
i, j = np.unravel_index(np.argmin(table), table.shape)
print(f"argmin at phi={grid[i]:.4f}, theta={grid[j]:.4f}  (pi/4 = {Q4:.4f})")

# %% [markdown]
# ## Scans along lambda1
#
# At the best scrambler setting the bound has a closed form, and the
# sandwich gets narrower as `lambda1` grows.  For a vacuum probe `R = 1`
# whatever `lambda1`.

# %%
print(" alpha lambda1      C_Q   closed    R       T_I")
for alpha in (0.0, 1.0):
    for l1 in np.linspace(0, 1.5, 4):
        s = bounds_at(lambda1=l1, alpha=alpha, theta=Q4, phi=Q4)
        print(f"{alpha:6.1f} {l1:7.2f} {s.cq:8.5f} {cq_optimal_closed(alpha, l1):8.5f}"
              f" {s.quantumness:7.4f} {s.t_identity:7.4f}")

# %% [markdown]
# ## Large amplitude
#
# For a bright probe, `R` and `T_I` approach simple expressions.

# %%
for l1 in (0.25, 1.0):
    s = bounds_at(lambda1=l1, alpha=30.0, theta=Q4, phi=Q4)
    print(f"lambda1={l1}: R {s.quantumness:.6f} ~ {asymptotic_R(30.0, l1):.6f};"
          f" T_I {s.t_identity:.5f} ~ {asymptotic_T(l1):.5f}")
