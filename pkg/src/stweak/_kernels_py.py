"""Pure-Python versions of the enumeration kernels.

Same signatures and return conventions as the compiled ``_kernels`` module:
a negative count means the cap was hit.
"""

import bisect


def count_separable(phi, d, T, strict, tol, cap):
    """Count ``k in Z^d`` with ``sum_j phi[|k_j|] <= T`` (``< T`` if strict).

    ``phi`` is nondecreasing with ``phi[0] == 0`` and must cover every index
    whose value is ``<= T + tol``.  Returns ``(count, near)`` where ``near``
    counts points whose sum lies within ``tol`` of ``T``.
    """
    phi = list(phi)
    n = len(phi)
    state = [0, 0]  # count, near

    def rec(dim, rem, w):
        if dim == 1:
            # last coordinate: index 0 once, every other index twice (+/-)
            hi = bisect.bisect_left(phi, rem) if strict else bisect.bisect_right(phi, rem)
            if hi:
                state[0] += w * (2 * hi - 1)
            lo_n = bisect.bisect_left(phi, rem - tol)
            hi_n = bisect.bisect_right(phi, rem + tol)
            if hi_n > lo_n:
                state[1] += w * (2 * (hi_n - lo_n) - (1 if lo_n == 0 else 0))
            return state[0] <= cap
        for i in range(n):
            v = phi[i]
            if v > rem + tol:
                break
            if not rec(dim - 1, rem - v, w if i == 0 else 2 * w):
                return False
        return True

    if d < 1:
        raise ValueError("dimension must be >= 1")
    if not rec(d, T, 1):
        return -1, state[1]
    return state[0], state[1]


def collect_separable(phi, d, T, cap):
    """Sums ``sum_j phi[|k_j|] <= T`` over ``k in Z^d``.

    Returns ``(sums, weights)``: each distinct sign pattern is folded into a
    weight, so ``sum(weights)`` is the number of lattice points.  ``None`` if
    more than ``cap`` entries would be produced.
    """
    phi = list(phi)
    n = len(phi)
    sums, weights = [], []

    def rec(dim, acc, w):
        for i in range(n):
            s = acc + phi[i]
            if s > T:
                break
            wi = w if i == 0 else 2 * w
            if dim == 1:
                sums.append(s)
                weights.append(wi)
                if len(sums) > cap:
                    return False
            elif not rec(dim - 1, s, wi):
                return False
        return True

    if d < 1:
        raise ValueError("dimension must be >= 1")
    if not rec(d, 0.0, 1):
        return None
    return sums, weights


def count_products_log(logl, d, logT, tol, cap):
    """Count ``j in {1..L}^d`` with ``sum_l logl[j_l - 1] > logT``.

    ``logl`` is nonincreasing and finite.  Returns ``(count, near)`` with
    ``near`` the number of tuples whose log-product lies within ``tol`` of
    ``logT``; a negative count means the cap was hit.
    """
    neg = [-x for x in logl]  # nondecreasing, for bisect
    top = logl[0] if logl else 0.0
    state = [0, 0]

    def rec(depth, rem):
        if depth == 1:
            state[0] += bisect.bisect_left(neg, -rem)
            state[1] += bisect.bisect_left(neg, tol - rem) - bisect.bisect_left(neg, -rem - tol)
            return state[0] <= cap
        slack = (depth - 1) * top
        for x in logl:
            if x + slack <= rem - tol:
                break
            if not rec(depth - 1, rem - x):
                return False
        return True

    if d < 1:
        raise ValueError("dimension must be >= 1")
    if not logl:
        return 0, 0
    if not rec(d, logT):
        return -1, state[1]
    return state[0], state[1]
