"""Tour of the closed-form ceilings on hitting time and control energy.

The library computes two closed-form quantities for a noise-driven
feedback controller with gain k and inside-ball steepness alpha acting
on a system whose drift satisfies <x, f(x)> <= L|x|^2:

  t_f_sup   an upper bound on the expected time to reach the origin
  e_q_sup   an upper bound on the expected L_q control energy

Both come from the decay rate h2(p) = p*L + p*(p-1)*k^2/2, which must be
negative somewhere on (0, 1) for the bounds to exist.  This script walks
through feasibility, the two minimizer cases, and how the ceilings react
to the gain.
"""

import numpy as np

from fintime_sctl import (
    InitialLaw,
    alpha_threshold,
    e_q_sup,
    feasibility,
    h2,
    min_h2,
    p_star,
    q_admissible,
    t_f_sup,
)

L = 2.0
law = InitialLaw.point(np.array([10.0]))

# Feasibility: the noise gain must beat sqrt(2 L) before any bound exists.
print("feasibility against L = 2:")
for k in (1.0, 2.0, 2.1, 5.0):
    print(f"  k={k:4.1f}  feasible={feasibility(L, k)}")

# The decay rate h2(p) is a downward parabola in p; its unconstrained
# minimizer is p* = 1/2 - L/k^2.
k = 5.0
ps = np.linspace(0.05, 0.95, 7)
print(f"\nh2(p) profile at k={k:g}:")
for p, val in zip(ps, h2(ps, L, k)):
    print(f"  p={p:.2f}  h2={val:+.4f}")
print(f"  unconstrained minimizer p* = {p_star(L, k):.4f}")

# The hitting-time bound optimizes h2 over p in (0, min(1, 2-2*alpha)].
# Below the steepness threshold the interior p* wins; above it the
# p-range is clipped and the edge value takes over.  The two cases meet
# continuously at the threshold.
a_thr = alpha_threshold(L, k)
print(f"\nsteepness threshold alpha* = {a_thr:.4f}")
for alpha in (0.30, a_thr - 1e-9, a_thr, a_thr + 1e-9, 0.95):
    p_at, val = min_h2(L, k, alpha)
    print(f"  alpha={alpha:.9f}  argmin p={p_at:.6f}  h2={val:+.6f}  "
          f"t_f_sup={t_f_sup(L, k, alpha, law):.6f}")

# Energy bounds need the order q inside an admissibility window
# (0, min(2 - 2*alpha, 1 - 2L/k^2)), exclusive at both ends.  The window
# shrinks as alpha grows or the gain margin thins.
print("\nadmissible energy orders (upper limit, exclusive):")
for alpha in (0.5, 0.75, 0.9):
    q_cap = min(2.0 - 2.0 * alpha, 1.0 - 2.0 * L / k**2)
    probe = 0.9 * q_cap
    print(f"  alpha={alpha:.2f}  q < {q_cap:.4f}  "
          f"(q={probe:.4f} admissible: {q_admissible(L, k, alpha, probe)})")

# Larger gains buy shorter time ceilings and cheaper energy ceilings.
print("\nceilings as the gain grows (alpha=0.5, q=0.5):")
for k in (3.0, 4.0, 5.0, 7.0, 10.0):
    t = t_f_sup(L, k, 0.5, law)
    e = e_q_sup(L, k, 0.5, 0.5, law)
    print(f"  k={k:5.1f}  t_f_sup={t:8.4f}  e_q_sup={e:8.4f}")
