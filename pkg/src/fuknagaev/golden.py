"""Golden-section search for unimodal one-dimensional objectives."""

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi


def golden_section_min(f, lo, hi, rel_tol=1e-10, max_iter=200):
    """Minimize a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x_min, f_min)``. The bracket shrinks until its width falls
    below ``rel_tol`` relative to the midpoint magnitude (plus a tiny
    absolute floor), or ``max_iter`` iterations have run. Endpoints are
    included in the final comparison so boundary minima are never missed.
    """
    a, b = float(lo), float(hi)
    if not a < b:
        raise ValueError(f"empty bracket [{a}, {b}]")
    c = b - (b - a) * _INVPHI
    d = a + (b - a) * _INVPHI
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc <= fd else (d, fd)
    for _ in range(max_iter):
        if (b - a) <= rel_tol * (abs(a) + abs(b)) / 2 + 1e-300:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INVPHI
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INVPHI
            fd = f(d)
        if fc < best_f:
            best_x, best_f = c, fc
        if fd < best_f:
            best_x, best_f = d, fd
    for x in (lo, hi):
        fx = f(x)
        if fx < best_f:
            best_x, best_f = x, fx
    return best_x, best_f
