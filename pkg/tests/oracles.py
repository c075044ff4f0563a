"""Independent reference computations used to freeze expected values.

Nothing here calls into the closed forms under test.
"""

import math

INV_PHI = (math.sqrt(5) - 1) / 2


def golden_section_min(f, a, b, tol=1e-13, max_iter=500):
    """Minimize a unimodal ``f`` on ``[a, b]``; returns the abscissa."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol * (abs(c) + abs(d)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (a + b) / 2


def eq1_error(omega0, gamma_q, gamma_r, a, n, g):
    """Per-qubit layer error, decoherence plus cross-talk, written out by hand."""
    t_s = math.pi / (2 * g)
    dec = (2 * n * gamma_r + 1.5 * gamma_q) * t_s
    delta = omega0 / (4 * n)
    return dec + a * g**2 / delta**2


def argmin_coupling(omega0, gamma_q, gamma_r, a, n):
    """Optimal coupling found by golden-section search in log(g)."""
    f = lambda lg: eq1_error(omega0, gamma_q, gamma_r, a, n, math.exp(lg))
    return math.exp(golden_section_min(f, math.log(omega0 * 1e-12), math.log(omega0), tol=1e-15))


def bisect_root(f, lo, hi, rtol=1e-14):
    flo = f(lo)
    for _ in range(400):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= rtol * hi:
            break
    return 0.5 * (lo + hi)


def balance_point(omega0, gamma_q, gamma_r, a, lo=2.0, hi=500.0):
    """``N = 1 / (N eps(N))`` with eps minimized numerically over g."""

    def excess(n):
        g = argmin_coupling(omega0, gamma_q, gamma_r, a, n)
        return n - 1.0 / (n * eq1_error(omega0, gamma_q, gamma_r, a, n, g))

    return bisect_root(excess, lo, hi, rtol=1e-12)
