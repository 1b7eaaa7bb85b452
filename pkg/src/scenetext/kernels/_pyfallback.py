"""Pure-Python kernels, used when the compiled extension is unavailable."""


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance between two unicode strings."""
    la, lb = len(a), len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    if la < lb:
        a, b = b, a
        la, lb = lb, la

    col = list(range(lb + 1))
    for i in range(1, la + 1):
        ca = a[i - 1]
        diag = col[0]
        col[0] = i
        for j in range(1, lb + 1):
            above = col[j]
            cur = diag if ca == b[j - 1] else diag + 1
            if above + 1 < cur:
                cur = above + 1
            if col[j - 1] + 1 < cur:
                cur = col[j - 1] + 1
            diag = above
            col[j] = cur
    return col[lb]


def lcs_length(seq_a, seq_b) -> int:
    """Length of the longest common subsequence of two token id sequences."""
    la, lb = len(seq_a), len(seq_b)
    if la == 0 or lb == 0:
        return 0

    row = [0] * (lb + 1)
    for i in range(1, la + 1):
        ta = seq_a[i - 1]
        diag = 0
        for j in range(1, lb + 1):
            above = row[j]
            if ta == seq_b[j - 1]:
                cur = diag + 1
            else:
                cur = above if above >= row[j - 1] else row[j - 1]
            diag = above
            row[j] = cur
    return row[lb]
