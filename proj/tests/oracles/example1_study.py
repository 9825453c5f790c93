#!/usr/bin/env python3
"""Feasibility study for the worked example F = exp(1/((1-z1)(1-z2))).

Derivatives via the polynomial recurrence F^(j1,j2) = F * P_{j1,j2}(u,v)
with u = 1/(1-z1), v = 1/(1-z2):
    d/dz1 u^p v^q = p u^(p+1) v^q,   d/dz1 (uv) = u^2 v
so  P_{j1+1,j2} = dP/dz1 + P * u^2 v   (and symmetrically in z2).

Checks, on a radial grid, with the rescaled weight
    l1 = 4/((1-|z1|)^2 (1-|z2|)),  l2 = 4/((1-|z1|)(1-|z2|)^2):
  (a) a*_K = |F^(K)|/(K! l1^k1 l2^k2) is maximized at K=(0,0)  (index 0)
  (b) the size of the top-band truncation indicator at cap 12 for
      rho_j = min(0.5(1-|z_j|), 0.25) and for rho = 1/L.
"""
import math
from functools import lru_cache


@lru_cache(maxsize=None)
def deriv_poly(j1, j2):
    # dict (p,q) -> integer coeff of u^p v^q
    if j1 == 0 and j2 == 0:
        return {(0, 0): 1}
    if j1 > 0:
        prev = deriv_poly(j1 - 1, j2)
        out = {}
        for (p, q), c in prev.items():
            if p > 0:
                out[(p + 1, q)] = out.get((p + 1, q), 0) + p * c
            out[(p + 2, q + 1)] = out.get((p + 2, q + 1), 0) + c
        return out
    prev = deriv_poly(j1, j2 - 1)
    out = {}
    for (p, q), c in prev.items():
        if q > 0:
            out[(p, q + 1)] = out.get((p, q + 1), 0) + q * c
        out[(p + 1, q + 2)] = out.get((p + 1, q + 2), 0) + c
    return out


def log_deriv(j1, j2, x1, x2):
    """log |F^(j1,j2)(x1,x2)| for real x1,x2 in [0,1) (all terms positive)."""
    u = 1.0 / (1.0 - x1)
    v = 1.0 / (1.0 - x2)
    s = 0.0
    for (p, q), c in deriv_poly(j1, j2).items():
        s += c * u**p * v**q
    return u * v + math.log(s)  # log F = uv for real args


def study(x1, x2, cap=12, sigma=4.0):
    l1 = sigma / ((1 - x1) ** 2 * (1 - x2))
    l2 = sigma / ((1 - x1) * (1 - x2) ** 2)
    log_astar = {}
    for j1 in range(cap + 1):
        for j2 in range(cap + 1 - j1):
            log_astar[(j1, j2)] = (
                log_deriv(j1, j2, x1, x2)
                - math.lgamma(j1 + 1) - math.lgamma(j2 + 1)
                - j1 * math.log(l1) - j2 * math.log(l2)
            )
    a00 = log_astar[(0, 0)]
    worst = max((v, k) for k, v in log_astar.items() if k != (0, 0))
    # tail indicator with default extraction radius and with rho = 1/L
    for label, (r1, r2) in {
        "rho=default": (min(0.5 * (1 - x1), 0.25), min(0.5 * (1 - x2), 0.25)),
        "rho=1/L": (1.0 / l1, 1.0 / l2),
    }.items():
        # b_K = F^(K)/K!; indicator = max_{|K|=cap} |b_K| rho^K / max_{|K|<=cap}
        logs = {}
        for (j1, j2), la in log_astar.items():
            logb = la + j1 * math.log(l1) + j2 * math.log(l2)  # back to log|b|
            logs[(j1, j2)] = logb + j1 * math.log(r1) + j2 * math.log(r2)
        top = max(v for (j1, j2), v in logs.items() if j1 + j2 == cap)
        allm = max(logs.values())
        print(f"    {label}: tail_indicator = {math.exp(top - allm):.3e}  "
              f"(rho1*l1 = {r1*l1:.3f})")
    print(f"    max a*_K / a*_00 over 0<|K|<={cap}: "
          f"{math.exp(worst[0] - a00):.6f} at K={worst[1]}")
    return worst[0] <= a00


if __name__ == "__main__":
    ok = True
    for x in [0.0, 0.1, 0.3, 0.5, 0.7, 0.9]:
        for y in [0.0, 0.3, 0.9]:
            print(f"z0 = ({x}, {y}):")
            ok &= study(x, y)
    print("index 0 at all sampled points:", ok)
