"""Exact Gaussian elimination over a finite field (rows are lists of codes)."""


def rref(F, rows, ncols):
    """Reduced row echelon form with first-nonzero-in-column pivoting.

    Returns (reduced rows, pivot columns). The input is not modified.
    """
    M = [list(r) for r in rows]
    pivots = []
    r = 0
    fmul, fsub, finv = F.mul, F.sub, F.inv
    for c in range(ncols):
        piv = None
        for i in range(r, len(M)):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        row = M[r]
        inv = finv(row[c])
        if inv != 1:
            row = [fmul(v, inv) for v in row]
            M[r] = row
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f:
                    Mi = M[i]
                    M[i] = [fsub(a, fmul(f, b)) if b else a for a, b in zip(Mi, row)]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F, rows, ncols):
    return len(rref(F, rows, ncols)[1])


def nullspace(F, rows, ncols):
    """Basis of {v : A v = 0}, one vector per free column, in column order."""
    R, pivots = rref(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(R, pivots):
            if row[free]:
                v[pc] = F.neg(row[free])
        basis.append(v)
    return basis


def complement(F, vectors, sub, ncols):
    """Vectors from ``vectors`` extending a basis of span(sub) to span(sub + vectors)."""
    chosen = []
    current = [list(v) for v in sub]
    r = rank(F, current, ncols)
    for v in vectors:
        trial = current + [list(v)]
        r2 = rank(F, trial, ncols)
        if r2 > r:
            current, r = trial, r2
            chosen.append(list(v))
    return chosen


def in_span(F, vectors, v, ncols):
    r = rank(F, vectors, ncols)
    return rank(F, list(vectors) + [list(v)], ncols) == r
