# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for the character-level metric inner loops."""

from libc.stdlib cimport free, malloc


def levenshtein(a, b):
    """Unit-cost edit distance between two unicode strings."""
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    # keep the shorter string on the column axis
    if la < lb:
        a, b = b, a
        la, lb = lb, la

    cdef Py_UCS4* sb = <Py_UCS4*> malloc(lb * sizeof(Py_UCS4))
    cdef Py_ssize_t* col = <Py_ssize_t*> malloc((lb + 1) * sizeof(Py_ssize_t))
    if sb == NULL or col == NULL:
        free(sb)
        free(col)
        raise MemoryError()

    cdef Py_ssize_t i, j, above, diag, cur
    cdef Py_UCS4 ca
    try:
        for j in range(lb):
            sb[j] = b[j]
        for j in range(lb + 1):
            col[j] = j
        for i in range(1, la + 1):
            ca = a[i - 1]
            diag = col[0]
            col[0] = i
            for j in range(1, lb + 1):
                above = col[j]
                cur = diag if ca == sb[j - 1] else diag + 1
                if above + 1 < cur:
                    cur = above + 1
                if col[j - 1] + 1 < cur:
                    cur = col[j - 1] + 1
                diag = above
                col[j] = cur
            # diag now holds the previous row's last cell; col[lb] is current
        return col[lb]
    finally:
        free(sb)
        free(col)


def lcs_length(seq_a, seq_b):
    """Length of the longest common subsequence of two token id sequences.

    Token sequences are passed as lists of ints (interned token ids) so the
    inner comparison is a C integer compare.
    """
    cdef Py_ssize_t la = len(seq_a)
    cdef Py_ssize_t lb = len(seq_b)
    if la == 0 or lb == 0:
        return 0

    cdef long* ib = <long*> malloc(lb * sizeof(long))
    cdef Py_ssize_t* row = <Py_ssize_t*> malloc((lb + 1) * sizeof(Py_ssize_t))
    if ib == NULL or row == NULL:
        free(ib)
        free(row)
        raise MemoryError()

    cdef Py_ssize_t i, j, diag, above, cur
    cdef long ta
    try:
        for j in range(lb):
            ib[j] = seq_b[j]
        for j in range(lb + 1):
            row[j] = 0
        for i in range(1, la + 1):
            ta = seq_a[i - 1]
            diag = 0
            for j in range(1, lb + 1):
                above = row[j]
                if ta == ib[j - 1]:
                    cur = diag + 1
                else:
                    cur = above if above >= row[j - 1] else row[j - 1]
                diag = above
                row[j] = cur
        return row[lb]
    finally:
        free(ib)
        free(row)
