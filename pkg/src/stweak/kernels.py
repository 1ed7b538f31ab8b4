"""Backend selection for the enumeration kernels.

The compiled extension is used when it was built; otherwise (or when the
environment variable ``STWEAK_PURE_PYTHON`` is set to a non-empty value other
than ``0``) the pure-Python implementation takes over.  Both return identical
results.
"""

import os

from . import _kernels_py
from .errors import BudgetExceeded

compiled = None
if os.environ.get("STWEAK_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as compiled
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else _kernels_py
BACKEND = "compiled" if compiled is not None else "python"

DEFAULT_CAP = 10 ** 8
# caps are C long long in the compiled kernels
_CAP_CEILING = 2 ** 62


def _cap(cap):
    return max(0, min(int(cap), _CAP_CEILING))


def count_separable(phi, d, T, *, strict=False, tol=0.0, cap=DEFAULT_CAP, impl=None):
    impl = impl or _impl
    count, near = impl.count_separable(phi, d, float(T), bool(strict), float(tol), _cap(cap))
    if count < 0:
        raise BudgetExceeded("lattice point count", cap)
    return count, near


def collect_separable(phi, d, T, *, cap=DEFAULT_CAP, impl=None):
    impl = impl or _impl
    out = impl.collect_separable(phi, d, float(T), _cap(cap))
    if out is None:
        raise BudgetExceeded("lattice sum collection", cap)
    return out


def count_products_log(logl, d, logT, *, tol=0.0, cap=DEFAULT_CAP, impl=None):
    impl = impl or _impl
    count, near = impl.count_products_log(logl, d, float(logT), float(tol), _cap(cap))
    if count < 0:
        raise BudgetExceeded("tensor product count", cap)
    return count, near
