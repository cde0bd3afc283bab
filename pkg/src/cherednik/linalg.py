"""Small exact linear algebra kernels: rank, nullspace, symmetric inertia.

Matrices are lists of row lists with Fraction (or any exact field) entries;
everything here is written for the small dense blocks the truncation oracle
produces after splitting along zeta-weight spaces.
"""

from fractions import Fraction


def mat_rank(rows) -> int:
    return _eliminate([list(r) for r in rows])[0]


def _eliminate(m):
    """Row reduce in place; returns (rank, pivot column list)."""
    if not m:
        return 0, []
    ncols = len(m[0])
    rank = 0
    pivots = []
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
    return rank, pivots


def nullspace(rows):
    """Basis of the right kernel, one vector per free column."""
    if not rows:
        return []
    m = [list(r) for r in rows]
    ncols = len(m[0])
    rank, pivots = _eliminate(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def solve_exact(rows, rhs):
    """One solution of A x = b, or None if inconsistent."""
    if not rows:
        return [] if not any(rhs) else None
    ncols = len(rows[0])
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    rank, pivots = _eliminate(m)
    for i in range(len(m)):
        if m[i][-1] != 0 and all(x == 0 for x in m[i][:-1]):
            return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        if pc < ncols:
            x[pc] = m[i][-1]
    return x


def symmetric_inertia(a):
    """(n_pos, n_neg, rank) of a symmetric matrix by exact congruence pivoting.

    Diagonal pivots are consumed first; an all-zero diagonal with a nonzero
    off-diagonal entry contributes a hyperbolic plane (one positive and one
    negative square).
    """
    m = [list(r) for r in a]
    n = len(m)
    alive = list(range(n))
    pos = neg = 0
    while alive:
        piv = next((i for i in alive if m[i][i] != 0), None)
        if piv is not None:
            d = m[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            alive.remove(piv)
            others = [j for j in alive if m[piv][j] != 0]
            for j in others:
                f = m[piv][j] / d
                for k in others:
                    m[j][k] -= f * m[piv][k]
            continue
        pair = next(
            ((i, j) for i in alive for j in alive if j > i and m[i][j] != 0), None
        )
        if pair is None:
            break
        i0, j0 = pair
        b = m[i0][j0]
        pos += 1
        neg += 1
        alive.remove(i0)
        alive.remove(j0)
        # Schur complement of the hyperbolic block [[0, b], [b, 0]]
        for x in alive:
            u, v = m[i0][x], m[j0][x]
            if u == 0 and v == 0:
                continue
            for y in alive:
                m[x][y] -= (u * m[j0][y] + v * m[i0][y]) / b
    return pos, neg, pos + neg


def is_psd(a) -> bool:
    """Positive semidefinite test for an exact symmetric matrix."""
    _, n_neg, _ = symmetric_inertia(a)
    return n_neg == 0


def symmetric_inertia_int(a):
    """Inertia of an integer symmetric matrix, fraction free.

    After pivoting on d the remaining block is rescaled by |d|, which is a
    congruence and so preserves inertia while keeping every entry integral.
    """
    m = [list(r) for r in a]
    alive = list(range(len(m)))
    pos = neg = 0
    while alive:
        piv = next((i for i in alive if m[i][i] != 0), None)
        if piv is not None:
            d = m[piv][piv]
            sg = 1 if d > 0 else -1
            if d > 0:
                pos += 1
            else:
                neg += 1
            alive.remove(piv)
            ad = abs(d)
            prow = m[piv]
            for x in alive:
                px = prow[x]
                mx = m[x]
                for y in alive:
                    mx[y] = mx[y] * ad - sg * px * prow[y]
            continue
        pair = next(
            ((i, j) for i in alive for j in alive if j > i and m[i][j] != 0), None
        )
        if pair is None:
            break
        i0, j0 = pair
        b = m[i0][j0]
        sb = 1 if b > 0 else -1
        ab = abs(b)
        pos += 1
        neg += 1
        alive.remove(i0)
        alive.remove(j0)
        u, v = m[i0], m[j0]
        for x in alive:
            ux, vx = u[x], v[x]
            mx = m[x]
            for y in alive:
                mx[y] = mx[y] * ab - sb * (ux * v[y] + vx * u[y])
    return pos, neg, pos + neg
