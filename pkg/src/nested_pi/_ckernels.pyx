# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP fixed-point kernels.

Drop-in replacement for :mod:`nested_pi._pykernels`; results are bit-identical.
The inner loops run with the GIL released.
"""

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]

    void mpz_init(mpz_t) nogil
    void mpz_clear(mpz_t) nogil
    void mpz_set(mpz_t, const mpz_t) nogil
    void mpz_set_ui(mpz_t, unsigned long) nogil
    void mpz_add(mpz_t, const mpz_t, const mpz_t) nogil
    void mpz_sub(mpz_t, const mpz_t, const mpz_t) nogil
    void mpz_add_ui(mpz_t, const mpz_t, unsigned long) nogil
    void mpz_mul(mpz_t, const mpz_t, const mpz_t) nogil
    void mpz_mul_ui(mpz_t, const mpz_t, unsigned long) nogil
    void mpz_mul_si(mpz_t, const mpz_t, long) nogil
    void mpz_mul_2exp(mpz_t, const mpz_t, unsigned long) nogil
    void mpz_neg(mpz_t, const mpz_t) nogil
    void mpz_fdiv_q(mpz_t, const mpz_t, const mpz_t) nogil
    void mpz_fdiv_q_2exp(mpz_t, const mpz_t, unsigned long) nogil
    unsigned long mpz_fdiv_q_ui(mpz_t, const mpz_t, unsigned long) nogil
    void mpz_sqrt(mpz_t, const mpz_t) nogil
    int mpz_sgn(const mpz_t) nogil
    int mpz_cmp(const mpz_t, const mpz_t) nogil
    size_t mpz_sizeinbase(const mpz_t, int) nogil
    void mpz_import(mpz_t, size_t, int, size_t, int, size_t, const void*)
    void* mpz_export(void*, size_t*, int, size_t, int, size_t, const mpz_t)


cdef object _pow2(unsigned long e):
    return (<object>1) << e


cdef int _load(mpz_t z, object n) except -1:
    cdef bint neg = n < 0
    cdef bytes raw
    if neg:
        n = -n
    nbytes = (n.bit_length() + 7) // 8
    if nbytes == 0:
        mpz_set_ui(z, 0)
        return 0
    raw = n.to_bytes(nbytes, "little")
    mpz_import(z, nbytes, -1, 1, 0, 0, <const char*>raw)
    if neg:
        mpz_neg(z, z)
    return 0


cdef object _store(const mpz_t z):
    cdef int sgn = mpz_sgn(z)
    cdef size_t count = 0
    if sgn == 0:
        return 0
    nbytes = (mpz_sizeinbase(z, 2) + 7) // 8
    buf = bytearray(nbytes)
    cdef char* p = buf
    mpz_export(p, &count, -1, 1, 0, 0, z)
    n = int.from_bytes(buf[:count], "little")
    return -n if sgn < 0 else n


cdef inline void _round_shift(mpz_t r, const mpz_t half, unsigned long bits) noexcept nogil:
    mpz_add(r, r, half)
    mpz_fdiv_q_2exp(r, r, bits)


cdef inline void _round_sqrt(mpz_t r, const mpz_t v, unsigned long bits) noexcept nogil:
    # (isqrt(v << (bits + 2)) + 1) >> 1
    mpz_mul_2exp(r, v, bits + 2)
    mpz_sqrt(r, r)
    mpz_add_ui(r, r, 1)
    mpz_fdiv_q_2exp(r, r, 1)


cdef inline void _round_div(mpz_t r, const mpz_t a, const mpz_t b, mpz_t tmp, unsigned long bits) noexcept nogil:
    # ((a << bits) + (b >> 1)) // b
    mpz_fdiv_q_2exp(tmp, b, 1)
    mpz_mul_2exp(r, a, bits)
    mpz_add(r, r, tmp)
    mpz_fdiv_q(r, r, b)


def fixed_mul(a, b, unsigned long bits):
    cdef mpz_t za, zb, half
    mpz_init(za); mpz_init(zb); mpz_init(half)
    try:
        _load(za, a); _load(zb, b); _load(half, _pow2(bits - 1))
        mpz_mul(za, za, zb)
        _round_shift(za, half, bits)
        return _store(za)
    finally:
        mpz_clear(za); mpz_clear(zb); mpz_clear(half)


def fixed_div(a, b, unsigned long bits):
    if b <= 0:
        raise ZeroDivisionError("fixed_div needs a positive divisor")
    cdef mpz_t za, zb, tmp
    mpz_init(za); mpz_init(zb); mpz_init(tmp)
    try:
        _load(za, a); _load(zb, b)
        _round_div(za, za, zb, tmp, bits)
        return _store(za)
    finally:
        mpz_clear(za); mpz_clear(zb); mpz_clear(tmp)


def fixed_sqrt(v, unsigned long bits):
    if v < 0:
        raise ValueError("fixed_sqrt of a negative value")
    cdef mpz_t z
    mpz_init(z)
    try:
        _load(z, v)
        _round_sqrt(z, z, bits)
        return _store(z)
    finally:
        mpz_clear(z)


def radical_chain(long k, unsigned long bits):
    """Return ``[a_0, a_1, ..., a_k]`` with ``a_0 = 0`` and ``a_j = sqrt(2 + a_{j-1})``."""
    cdef mpz_t a, two
    cdef long j
    mpz_init(a); mpz_init(two)
    chain = [0]
    try:
        _load(two, _pow2(bits + 1))
        mpz_set_ui(a, 0)
        for j in range(k):
            with nogil:
                mpz_add(a, a, two)
                _round_sqrt(a, a, bits)
            chain.append(_store(a))
        return chain
    finally:
        mpz_clear(a); mpz_clear(two)


def half_product(values, unsigned long bits):
    """Running product of ``v / 2`` over ``values``."""
    cdef mpz_t p, v, half
    mpz_init(p); mpz_init(v); mpz_init(half)
    try:
        _load(p, _pow2(bits))
        _load(half, _pow2(bits))
        for value in values:
            _load(v, value)
            with nogil:
                mpz_mul(p, p, v)
                _round_shift(p, half, bits + 1)
        return _store(p)
    finally:
        mpz_clear(p); mpz_clear(v); mpz_clear(half)


cdef void _reciprocal(mpz_t wr, mpz_t wi, const mpz_t x, const mpz_t one, const mpz_t half,
                      long ell, long L, unsigned long bits,
                      mpz_t x2, mpz_t den, mpz_t tmp) noexcept nogil:
    # 1 / ((2l-1) + 2iL/x) = ((2l-1) x^2 - 2iLx) / ((2l-1)^2 x^2 + 4L^2)
    cdef unsigned long c = 2 * ell - 1
    mpz_mul(x2, x, x)
    _round_shift(x2, half, bits)
    mpz_mul_ui(den, x2, c * c)
    mpz_mul_ui(tmp, one, 4 * L * L)
    mpz_add(den, den, tmp)
    mpz_mul_ui(wr, x2, c)
    _round_div(wr, wr, den, tmp, bits)
    mpz_mul_ui(wi, x, 2 * L)
    _round_div(wi, wi, den, tmp, bits)
    mpz_neg(wi, wi)


cdef inline void _square(mpz_t qr, mpz_t qi, const mpz_t wr, const mpz_t wi,
                         const mpz_t half, unsigned long bits, mpz_t tmp) noexcept nogil:
    mpz_mul(qr, wr, wr)
    mpz_mul(tmp, wi, wi)
    mpz_sub(qr, qr, tmp)
    _round_shift(qr, half, bits)
    mpz_mul(qi, wr, wi)
    mpz_mul_2exp(qi, qi, 1)
    _round_shift(qi, half, bits)


cdef inline void _cmul(mpz_t wr, mpz_t wi, const mpz_t qr, const mpz_t qi,
                       const mpz_t half, unsigned long bits, mpz_t t1, mpz_t t2) noexcept nogil:
    mpz_mul(t1, wr, qr)
    mpz_mul(t2, wi, qi)
    mpz_sub(t1, t1, t2)
    mpz_mul(t2, wr, qi)
    mpz_mul(wi, wi, qr)
    mpz_add(wi, wi, t2)
    _round_shift(wi, half, bits)
    mpz_set(wr, t1)
    _round_shift(wr, half, bits)


def inverse_odd_power(x, long ell, long L, long m, unsigned long bits):
    """``z**-(2m-1)`` for ``z = (2l-1) + 2iL/x`` via the ``w * z**-2`` recurrence."""
    cdef mpz_t zx, one, half, wr, wi, qr, qi, t1, t2, t3
    cdef long j
    mpz_init(zx); mpz_init(one); mpz_init(half); mpz_init(wr); mpz_init(wi)
    mpz_init(qr); mpz_init(qi); mpz_init(t1); mpz_init(t2); mpz_init(t3)
    try:
        _load(zx, x); _load(one, _pow2(bits)); _load(half, _pow2(bits - 1))
        with nogil:
            _reciprocal(wr, wi, zx, one, half, ell, L, bits, t1, t2, t3)
            _square(qr, qi, wr, wi, half, bits, t1)
            for j in range(m - 1):
                _cmul(wr, wi, qr, qi, half, bits, t1, t2)
        return _store(wr), _store(wi)
    finally:
        mpz_clear(zx); mpz_clear(one); mpz_clear(half); mpz_clear(wr); mpz_clear(wi)
        mpz_clear(qr); mpz_clear(qi); mpz_clear(t1); mpz_clear(t2); mpz_clear(t3)


def conjugate_pair_sum(x, long L, long m_max, unsigned long bits):
    """Sum over l <= L, m <= m_max of ``-2 Im(z**-(2m-1)) / (2m-1)``."""
    cdef mpz_t zx, one, half, total, wr, wi, qr, qi, t1, t2, t3
    cdef long ell, m
    cdef unsigned long d
    mpz_init(zx); mpz_init(one); mpz_init(half); mpz_init(total); mpz_init(wr)
    mpz_init(wi); mpz_init(qr); mpz_init(qi); mpz_init(t1); mpz_init(t2); mpz_init(t3)
    try:
        _load(zx, x); _load(one, _pow2(bits)); _load(half, _pow2(bits - 1))
        mpz_set_ui(total, 0)
        with nogil:
            for ell in range(1, L + 1):
                _reciprocal(wr, wi, zx, one, half, ell, L, bits, t1, t2, t3)
                _square(qr, qi, wr, wi, half, bits, t1)
                for m in range(1, m_max + 1):
                    d = 2 * m - 1
                    mpz_mul_si(t1, wi, -2)
                    mpz_add_ui(t1, t1, d >> 1)
                    mpz_fdiv_q_ui(t1, t1, d)
                    mpz_add(total, total, t1)
                    if m == m_max or (mpz_sgn(wr) == 0 and mpz_sgn(wi) == 0):
                        break
                    _cmul(wr, wi, qr, qi, half, bits, t1, t2)
        return _store(total)
    finally:
        mpz_clear(zx); mpz_clear(one); mpz_clear(half); mpz_clear(total); mpz_clear(wr)
        mpz_clear(wi); mpz_clear(qr); mpz_clear(qi); mpz_clear(t1); mpz_clear(t2); mpz_clear(t3)


def atan_taylor(x, unsigned long bits):
    """Maclaurin arctangent for ``0 <= x``; halves the argument until ``x <= 1/4``."""
    cdef mpz_t zx, one, half, quarter, x2, root, den, p, term, total, tmp
    cdef unsigned long halvings = 0
    cdef unsigned long n = 0
    cdef unsigned long d
    mpz_init(zx); mpz_init(one); mpz_init(half); mpz_init(quarter); mpz_init(x2)
    mpz_init(root); mpz_init(den); mpz_init(p); mpz_init(term); mpz_init(total); mpz_init(tmp)
    try:
        _load(zx, x); _load(one, _pow2(bits)); _load(half, _pow2(bits - 1))
        _load(quarter, _pow2(bits - 2))
        with nogil:
            while mpz_cmp(zx, quarter) > 0:
                mpz_mul(x2, zx, zx)
                _round_shift(x2, half, bits)
                mpz_add(root, one, x2)
                _round_sqrt(root, root, bits)
                mpz_add(den, one, root)
                _round_div(zx, zx, den, tmp, bits)
                halvings += 1
            mpz_mul(x2, zx, zx)
            _round_shift(x2, half, bits)
            mpz_set_ui(total, 0)
            mpz_set(p, zx)
            while mpz_sgn(p) != 0:
                d = 2 * n + 1
                mpz_add_ui(term, p, d >> 1)
                mpz_fdiv_q_ui(term, term, d)
                if n & 1:
                    mpz_sub(total, total, term)
                else:
                    mpz_add(total, total, term)
                mpz_mul(p, p, x2)
                _round_shift(p, half, bits)
                n += 1
            mpz_mul_2exp(total, total, halvings)
        return _store(total)
    finally:
        mpz_clear(zx); mpz_clear(one); mpz_clear(half); mpz_clear(quarter); mpz_clear(x2)
        mpz_clear(root); mpz_clear(den); mpz_clear(p); mpz_clear(term); mpz_clear(total)
        mpz_clear(tmp)
