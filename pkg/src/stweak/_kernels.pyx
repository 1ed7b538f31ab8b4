# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see ``_kernels_py`` for the reference semantics."""

from libc.stdlib cimport malloc, free


cdef Py_ssize_t _upper(const double* a, Py_ssize_t n, double x, bint strict) nogil:
    # number of entries a[i] <= x (or < x when strict); a nondecreasing
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if (a[mid] < x) if strict else (a[mid] <= x):
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef Py_ssize_t _desc_above(const double* a, Py_ssize_t n, double x) nogil:
    # number of leading entries a[i] > x; a nonincreasing
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] > x:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef struct SepState:
    const double* phi
    Py_ssize_t n
    bint strict
    double tol
    long long cap
    long long count
    long long near
    bint over


cdef void _sep_rec(SepState* st, int dim, double rem, long long w) nogil:
    cdef Py_ssize_t i, hi, lo_n, hi_n
    cdef double v
    if st.over:
        return
    if dim == 1:
        hi = _upper(st.phi, st.n, rem, st.strict)
        if hi > 0:
            st.count += w * (2 * hi - 1)
        lo_n = _upper(st.phi, st.n, rem - st.tol, True)
        hi_n = _upper(st.phi, st.n, rem + st.tol, False)
        if hi_n > lo_n:
            st.near += w * (2 * (hi_n - lo_n) - (1 if lo_n == 0 else 0))
        if st.count > st.cap:
            st.over = True
        return
    for i in range(st.n):
        v = st.phi[i]
        if v > rem + st.tol:
            break
        _sep_rec(st, dim - 1, rem - v, w if i == 0 else 2 * w)
        if st.over:
            return


def count_separable(phi, int d, double T, bint strict, double tol, long long cap):
    cdef double[::1] arr = _as_doubles(phi)
    cdef SepState st
    if d < 1:
        raise ValueError("dimension must be >= 1")
    st.phi = &arr[0] if arr.shape[0] else NULL
    st.n = arr.shape[0]
    st.strict = strict
    st.tol = tol
    st.cap = cap
    st.count = 0
    st.near = 0
    st.over = False
    if st.n == 0:
        return 0, 0
    with nogil:
        _sep_rec(&st, d, T, 1)
    if st.over:
        return -1, st.near
    return st.count, st.near


cdef struct CollectState:
    const double* phi
    Py_ssize_t n
    double T
    long long cap
    double* sums
    long long* weights
    long long size
    bint over


cdef void _collect_rec(CollectState* st, int dim, double acc, long long w) nogil:
    cdef Py_ssize_t i
    cdef double s
    cdef long long wi
    for i in range(st.n):
        s = acc + st.phi[i]
        if s > st.T:
            break
        wi = w if i == 0 else 2 * w
        if dim == 1:
            if st.size >= st.cap:
                st.over = True
                return
            st.sums[st.size] = s
            st.weights[st.size] = wi
            st.size += 1
        else:
            _collect_rec(st, dim - 1, s, wi)
            if st.over:
                return


def collect_separable(phi, int d, double T, long long cap):
    cdef double[::1] arr = _as_doubles(phi)
    cdef CollectState st
    cdef long long i
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if arr.shape[0] == 0:
        return [], []
    st.phi = &arr[0]
    st.n = arr.shape[0]
    st.T = T
    st.cap = cap
    st.size = 0
    st.over = False
    st.sums = <double*> malloc((cap + 1) * sizeof(double))
    st.weights = <long long*> malloc((cap + 1) * sizeof(long long))
    if st.sums == NULL or st.weights == NULL:
        free(st.sums)
        free(st.weights)
        raise MemoryError()
    try:
        with nogil:
            _collect_rec(&st, d, 0.0, 1)
        if st.over:
            return None
        sums = [st.sums[i] for i in range(st.size)]
        weights = [st.weights[i] for i in range(st.size)]
        return sums, weights
    finally:
        free(st.sums)
        free(st.weights)


cdef struct ProdState:
    const double* logl
    Py_ssize_t n
    double top
    double tol
    long long cap
    long long count
    long long near
    bint over


cdef void _prod_rec(ProdState* st, int depth, double rem) nogil:
    cdef Py_ssize_t i
    cdef double x, slack
    if st.over:
        return
    if depth == 1:
        st.count += _desc_above(st.logl, st.n, rem)
        st.near += _desc_above(st.logl, st.n, rem - st.tol) - _desc_above(st.logl, st.n, rem + st.tol)
        if st.count > st.cap:
            st.over = True
        return
    slack = (depth - 1) * st.top
    for i in range(st.n):
        x = st.logl[i]
        if x + slack <= rem - st.tol:
            break
        _prod_rec(st, depth - 1, rem - x)
        if st.over:
            return


def count_products_log(logl, int d, double logT, double tol, long long cap):
    cdef double[::1] arr = _as_doubles(logl)
    cdef ProdState st
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if arr.shape[0] == 0:
        return 0, 0
    st.logl = &arr[0]
    st.n = arr.shape[0]
    st.top = arr[0]
    st.tol = tol
    st.cap = cap
    st.count = 0
    st.near = 0
    st.over = False
    with nogil:
        _prod_rec(&st, d, logT)
    if st.over:
        return -1, st.near
    return st.count, st.near


cdef double[::1] _as_doubles(seq):
    import array
    return array.array("d", seq)
