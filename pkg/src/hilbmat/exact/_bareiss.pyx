# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""GMP-backed fraction-free elimination.

The matrix is converted to ``mpz_t`` once; each rank query copies the
requested rows and columns into a scratch buffer and eliminates there with
the GIL released.
"""

from cpython.long cimport PyLong_AsLongAndOverflow
from libc.stdlib cimport malloc, free

cdef extern from "gmp.h" nogil:
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_ptr)
    void mpz_set_si(mpz_ptr, long)
    int mpz_set_str(mpz_ptr, const char*, int)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_submul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_divexact(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_swap(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_ptr)
    int mpz_cmp(mpz_ptr, mpz_ptr)


cdef int _set_from_pyint(mpz_ptr z, object x) except -1:
    cdef int overflow = 0
    cdef long v = PyLong_AsLongAndOverflow(x, &overflow)
    if overflow == 0:
        mpz_set_si(z, v)
    else:
        s = str(x).encode("ascii")
        if mpz_set_str(z, s, 10) != 0:
            raise ValueError("cannot convert %r" % (x,))
    return 0


cdef Py_ssize_t _eliminate(__mpz_struct* a, Py_ssize_t n, Py_ssize_t m) nogil:
    # a is row-major n x m scratch; destroyed.
    cdef __mpz_struct prev
    cdef __mpz_struct t
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef __mpz_struct* piv
    cdef __mpz_struct* f
    mpz_init(&prev)
    mpz_init(&t)
    mpz_set_si(&prev, 1)
    for c in range(m):
        if r >= n:
            break
        p = -1
        for i in range(r, n):
            if mpz_sgn(&a[i * m + c]) != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(c, m):
                mpz_swap(&a[p * m + j], &a[r * m + j])
        piv = &a[r * m + c]
        for i in range(r + 1, n):
            f = &a[i * m + c]
            if mpz_sgn(f) != 0:
                for j in range(c + 1, m):
                    mpz_mul(&t, piv, &a[i * m + j])
                    mpz_submul(&t, f, &a[r * m + j])
                    mpz_divexact(&a[i * m + j], &t, &prev)
            elif mpz_cmp(piv, &prev) != 0:
                for j in range(c + 1, m):
                    mpz_mul(&t, piv, &a[i * m + j])
                    mpz_divexact(&a[i * m + j], &t, &prev)
        mpz_set(&prev, piv)
        r += 1
    mpz_clear(&prev)
    mpz_clear(&t)
    return r


cdef class GmpIntMatrix:
    """Integer matrix held as GMP integers; rank queries on row/column subsets."""

    cdef __mpz_struct* data
    cdef readonly Py_ssize_t nrows
    cdef readonly Py_ssize_t ncols
    backend = "gmp"

    def __cinit__(self, rows):
        self.data = NULL
        self.nrows = 0
        self.ncols = 0

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        cdef Py_ssize_t n = len(rows)
        cdef Py_ssize_t m = len(rows[0]) if n else 0
        cdef Py_ssize_t i, j
        for r in rows:
            if len(r) != m:
                raise ValueError("matrix rows have different lengths")
        self.data = <__mpz_struct*> malloc(max(n * m, 1) * sizeof(__mpz_struct))
        if self.data == NULL:
            raise MemoryError()
        for i in range(n * m):
            mpz_init(&self.data[i])
        self.nrows = n
        self.ncols = m
        for i in range(n):
            row = rows[i]
            for j in range(m):
                _set_from_pyint(&self.data[i * m + j], int(row[j]))

    def __dealloc__(self):
        cdef Py_ssize_t i
        if self.data != NULL:
            for i in range(self.nrows * self.ncols):
                mpz_clear(&self.data[i])
            free(self.data)

    def rank(self, cols=None, rows=None):
        cdef list cl = list(range(self.ncols)) if cols is None else [int(c) for c in cols]
        cdef list rl = list(range(self.nrows)) if rows is None else [int(r) for r in rows]
        cdef Py_ssize_t n = len(rl), m = len(cl)
        cdef Py_ssize_t i, j, k
        if n == 0 or m == 0:
            return 0
        for k in cl:
            if k < 0 or k >= self.ncols:
                raise IndexError("column index out of range")
        for k in rl:
            if k < 0 or k >= self.nrows:
                raise IndexError("row index out of range")
        cdef Py_ssize_t* ci = <Py_ssize_t*> malloc(m * sizeof(Py_ssize_t))
        cdef Py_ssize_t* ri = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
        cdef __mpz_struct* a = <__mpz_struct*> malloc(n * m * sizeof(__mpz_struct))
        cdef Py_ssize_t result
        if ci == NULL or ri == NULL or a == NULL:
            free(ci); free(ri); free(a)
            raise MemoryError()
        for j in range(m):
            ci[j] = cl[j]
        for i in range(n):
            ri[i] = rl[i]
        with nogil:
            for i in range(n):
                for j in range(m):
                    mpz_init(&a[i * m + j])
                    mpz_set(&a[i * m + j], &self.data[ri[i] * self.ncols + ci[j]])
            result = _eliminate(a, n, m)
            for i in range(n * m):
                mpz_clear(&a[i])
        free(a)
        free(ci)
        free(ri)
        return result

    def tolist(self):
        cdef Py_ssize_t i, j
        out = []
        for i in range(self.nrows):
            out.append([_to_pyint(&self.data[i * self.ncols + j]) for j in range(self.ncols)])
        return out


cdef extern from "gmp.h":
    char* mpz_get_str(char*, int, mpz_ptr)

cdef object _to_pyint(mpz_ptr z):
    cdef char* s = mpz_get_str(NULL, 10, z)
    try:
        return int(s.decode("ascii"))
    finally:
        free(s)


def bareiss_rank(rows):
    """Exact rank of an integer matrix (list of rows)."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return GmpIntMatrix(rows).rank()
