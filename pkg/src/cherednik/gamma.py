"""The eigenvector index set Gamma, its parameter cutout Gamma_c, and fold analysis.

A pair (P, Q) has P a bijection from boxes to 1..n and Q a non-negative
filling; membership in Gamma requires Q weakly increasing along the box
order with ties forcing P to decrease.  Raw pairs outside Gamma are still
representable because the fold analysis pushes Gamma_c elements across the
boundary with s_i and phi.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .params import Parameter, charged_content
from .shapes import Box, MultiPartition, StandardTableau, box_leq, standard_tableaux


@dataclass(frozen=True)
class PQPair:
    """P and Q values stored in the deterministic box order of the shape."""

    shape: MultiPartition
    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self):
        n = self.shape.n
        if sorted(self.p) != list(range(1, n + 1)):
            raise ValueError("P must be a bijection onto 1..n")
        if len(self.q) != n or any(x < 0 for x in self.q):
            raise ValueError("Q must assign a non-negative integer to every box")

    @property
    def degree(self) -> int:
        return sum(self.q)

    def p_of(self, b: Box) -> int:
        return self.p[self.shape.box_index(b)]

    def q_of(self, b: Box) -> int:
        return self.q[self.shape.box_index(b)]

    def position_to_box_index(self) -> tuple[int, ...]:
        """inv[i-1] is the box index at P-position i."""
        inv = [0] * len(self.p)
        for bi, pos in enumerate(self.p):
            inv[pos - 1] = bi
        return tuple(inv)

    def is_valid_gamma(self) -> bool:
        """The Gamma invariant: Q weakly increases along boxes, ties force P to drop."""
        boxes = self.shape.boxes()
        for i, b in enumerate(boxes):
            for j, bp in enumerate(boxes):
                if i != j and box_leq(b, bp):
                    if self.q[i] > self.q[j]:
                        return False
                    if self.q[i] == self.q[j] and b != bp and self.p[i] <= self.p[j]:
                        return False
        return True


@dataclass(frozen=True)
class MuT:
    """A composition mu together with a standard tableau."""

    mu: tuple[int, ...]
    tableau: StandardTableau


def sorting_permutation(mu: tuple[int, ...]) -> tuple[int, ...]:
    """sigma with sigma[j-1] = the source position holding the j-th smallest entry.

    Ties are broken by taking larger source positions first, which makes the
    corresponding sorting permutation the longest one.
    """
    n = len(mu)
    order = sorted(range(1, n + 1), key=lambda i: (mu[i - 1], -i))
    return tuple(order)


def mu_t_to_pq(mu: tuple[int, ...], t: StandardTableau) -> PQPair:
    sigma = sorting_permutation(mu)
    shape = t.shape
    p = tuple(sigma[t.entries[bi] - 1] for bi in range(shape.n))
    q = tuple(mu[p[bi] - 1] for bi in range(shape.n))
    return PQPair(shape, p, q)


def pq_to_mu_t(pq: PQPair) -> MuT:
    inv = pq.position_to_box_index()
    mu = tuple(pq.q[inv[i]] for i in range(pq.shape.n))
    sigma = sorting_permutation(mu)
    rank = {src: j + 1 for j, src in enumerate(sigma)}
    entries = tuple(rank[pq.p[bi]] for bi in range(pq.shape.n))
    return MuT(mu, StandardTableau(pq.shape, entries))


def weight_of(pq: PQPair, c: Parameter) -> tuple[tuple[Fraction, int], ...]:
    """Per position i, the pair (z_i eigenvalue, zeta_i exponent mod r)."""
    inv = pq.position_to_box_index()
    boxes = pq.shape.boxes()
    out = []
    for i in range(pq.shape.n):
        b = boxes[inv[i]]
        qv = pq.q[inv[i]]
        z = qv + 1 - (c.d_of(b.component) - c.d_of(b.component - qv - 1)) - c.r * b.content * c.c0
        out.append((Fraction(z), (b.component - qv) % c.r))
    return tuple(out)


@dataclass(frozen=True)
class GammaConstraints:
    """The finitely many active equations cutting Gamma_c out of Gamma.

    a_active: (box index, k) demanding Q(b) < k.
    b_active: (i1, i2, k) demanding Q(b1) <= Q(b2) + k with ties forcing P(b1) > P(b2).
    """

    a_active: tuple[tuple[int, int], ...]
    b_active: tuple[tuple[int, int, int], ...]


@lru_cache(maxsize=4096)
def gamma_constraints(mp: MultiPartition, c: Parameter) -> GammaConstraints:
    boxes = mp.boxes()
    a = []
    for bi, b in enumerate(boxes):
        for rho in range(c.r):
            v = c.d_of(b.component) - c.d_of(rho) + c.r * b.content * c.c0
            if v > 0 and v.denominator == 1:
                k = int(v)
                if (b.component - k) % c.r == rho:
                    a.append((bi, k))
    bcons = set()
    for i1, b1 in enumerate(boxes):
        for i2, b2 in enumerate(boxes):
            if i1 == i2:
                continue  # k > 0 makes the condition vacuous on a single box
            dd = c.d_of(b1.component) - c.d_of(b2.component)
            for sign in (1, -1):
                v = dd + c.r * (b1.content - b2.content + sign) * c.c0
                if v > 0 and v.denominator == 1:
                    k = int(v)
                    if (b1.component - b2.component - k) % c.r == 0:
                        bcons.add((i1, i2, k))
    return GammaConstraints(tuple(a), tuple(sorted(bcons)))


@dataclass(frozen=True)
class GammaViolation:
    clause: str  # "a" or "b"
    boxes: tuple[Box, ...]
    k: int


def in_gamma_c(pq: PQPair, c: Parameter) -> GammaViolation | None:
    """None if pq lies in Gamma_c, else the first violated clause with its boxes."""
    cons = gamma_constraints(pq.shape, c)
    boxes = pq.shape.boxes()
    for bi, k in cons.a_active:
        if pq.q[bi] >= k:
            return GammaViolation("a", (boxes[bi],), k)
    for i1, i2, k in cons.b_active:
        if pq.q[i1] > pq.q[i2] + k or (pq.q[i1] == pq.q[i2] + k and pq.p[i1] < pq.p[i2]):
            return GammaViolation("b", (boxes[i1], boxes[i2]), k)
    return None


def compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_gamma(mp: MultiPartition, max_degree: int):
    """All of Gamma up to the degree bound, grouped by increasing degree."""
    tabs = tuple(standard_tableaux(mp))
    for d in range(max_degree + 1):
        for mu in compositions(d, mp.n):
            for t in tabs:
                yield mu_t_to_pq(mu, t)


def enumerate_gamma_c(mp: MultiPartition, c: Parameter, max_degree: int):
    for pq in enumerate_gamma(mp, max_degree):
        if in_gamma_c(pq, c) is None:
            yield pq


def gamma_c_counts(mp: MultiPartition, c: Parameter, max_degree: int) -> list[int]:
    counts = [0] * (max_degree + 1)
    for pq in enumerate_gamma_c(mp, c, max_degree):
        counts[pq.degree] += 1
    return counts


def w_mu_permutation(mu: tuple[int, ...]) -> tuple[int, ...]:
    """The longest w (as w[i-1] = w(i)) sorting mu non-decreasingly."""
    sigma = sorting_permutation(mu)
    w = [0] * len(mu)
    for rank, src in enumerate(sigma, start=1):
        w[src - 1] = rank
    return tuple(w)


def dominance_less(lam: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """Strict dominance on partitions of equal size (weakly decreasing tuples)."""
    if lam == mu:
        return False
    a = b = 0
    dominated = True
    for x, y in zip(lam, mu):
        a += x
        b += y
        if a > b:
            dominated = False
            break
    return dominated


def bruhat_leq(u: tuple[int, ...], w: tuple[int, ...]) -> bool:
    """Bruhat order via the rank-matrix criterion."""
    n = len(u)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            cu = sum(1 for k in range(i) if u[k] >= j)
            cw = sum(1 for k in range(i) if w[k] >= j)
            if cu > cw:
                return False
    return True


def mu_order_less(nu: tuple[int, ...], mu: tuple[int, ...]) -> bool:
    """nu < mu in the dominance-then-Bruhat order on compositions."""
    nu_sorted = tuple(sorted(nu, reverse=True))
    mu_sorted = tuple(sorted(mu, reverse=True))
    if nu_sorted != mu_sorted:
        return dominance_less(nu_sorted, mu_sorted)
    wn, wm = w_mu_permutation(nu), w_mu_permutation(mu)
    return wn != wm and bruhat_leq(wn, wm)


def apply_si(pq: PQPair, i: int) -> PQPair:
    """Exchange the P-values i and i+1; the result may leave Gamma."""
    if not (1 <= i <= pq.shape.n - 1):
        raise ValueError(f"s_i needs 1 <= i <= n-1, got {i}")
    swap = {i: i + 1, i + 1: i}
    return PQPair(pq.shape, tuple(swap.get(v, v) for v in pq.p), pq.q)


def apply_phi(pq: PQPair) -> PQPair:
    """Degree-raising shift: P drops by one cyclically, Q gains 1 at the P=1 box."""
    p = tuple(v - 1 if v > 1 else pq.shape.n for v in pq.p)
    q = tuple(qv + 1 if pv == 1 else qv for pv, qv in zip(pq.p, pq.q))
    return PQPair(pq.shape, p, q)


def apply_psi(pq: PQPair) -> PQPair | None:
    """Inverse of apply_phi; None when Q vanishes at the P=n box (the Psi kernel)."""
    n = pq.shape.n
    top = pq.p.index(n)
    if pq.q[top] == 0:
        return None
    p = tuple(v + 1 if v < n else 1 for v in pq.p)
    q = tuple(qv - 1 if bi == top else qv for bi, qv in enumerate(pq.q))
    return PQPair(pq.shape, p, q)


def is_folded(pq: PQPair, c: Parameter) -> int | None:
    """Least i with equal adjacent weight pairs, or None."""
    wt = weight_of(pq, c)
    for i in range(len(wt) - 1):
        if wt[i] == wt[i + 1]:
            return i + 1
    return None


@dataclass(frozen=True)
class NearFold:
    pq: PQPair
    case: str  # "a": phi-image folds; "b": s_i-image folds at fold_position
    b1: Box
    b2: Box
    k: int
    fold_position: int | None  # for case "b"

    def folded_image(self) -> PQPair:
        return apply_phi(self.pq) if self.case == "a" else apply_si(self.pq, self.fold_position)


def near_folds(mp: MultiPartition, c: Parameter) -> list[NearFold]:
    """Gamma_c elements whose phi- or s_i-image is folded, built from rim data.

    Scans removable b1, rim b2 and the positive integer k solving the fold
    equation, materialises the completed witness pair, and keeps it only if
    it passes in_gamma_c and its image really folds; for c0 = 0 there are
    none.
    """
    if c.c0 == 0:
        return []
    out = []
    upper, left = mp.rims()
    rim = sorted(set(upper) | set(left))
    for b1 in mp.removable_boxes():
        for b2 in rim:
            v = c.d_of(b1.component) - c.d_of(b2.component) + c.r * (b1.content - b2.content) * c.c0
            if not (v > 0 and v.denominator == 1):
                continue
            k = int(v)
            if (b1.component - b2.component - k) % c.r != 0:
                continue
            if b2.content == 0:
                pq = _near_fold_case_a(mp, b1, b2, k)
                if pq is not None and pq.is_valid_gamma() and in_gamma_c(pq, c) is None \
                        and is_folded(apply_phi(pq), c) is not None:
                    out.append(NearFold(pq, "a", b1, b2, k, None))
            else:
                built = _near_fold_case_b(mp, b1, b2, k)
                if built is None:
                    continue
                pq, pos = built
                if pq.is_valid_gamma() and in_gamma_c(pq, c) is None \
                        and is_folded(apply_si(pq, pos), c) is not None:
                    out.append(NearFold(pq, "b", b1, b2, k, pos))
    return out


def _greedy_standard_fill(mp: MultiPartition, presets: dict[Box, int], skip_last: Box | None):
    """Fill a standard tableau respecting preset values; greedy on box order.

    Values are placed in increasing order; a free box is eligible once its
    upper and left neighbours are filled.  skip_last is reserved for value n
    and exempted from the greedy pool.  Returns entry tuple or None.
    """
    boxes = mp.boxes()
    n = mp.n
    filled: dict[Box, int] = {}
    by_value = {v: b for b, v in presets.items()}

    def available(b):
        if b in filled or b in presets or b == skip_last:
            return False
        up = Box(b.component, b.row - 1, b.col)
        lf = Box(b.component, b.row, b.col - 1)
        if b.row > 1 and up not in filled:
            return False
        if b.col > 1 and lf not in filled:
            return False
        return True

    for v in range(1, n + 1):
        if v in by_value:
            filled[by_value[v]] = v
            continue
        target = None
        for b in boxes:
            if available(b):
                target = b
                break
        if target is None:
            if skip_last is not None and v == n and skip_last not in filled:
                filled[skip_last] = v
                continue
            return None
        filled[target] = v
    return tuple(filled[b] for b in boxes)


def _near_fold_case_a(mp: MultiPartition, b1: Box, b2: Box, k: int) -> PQPair | None:
    # Reverse standard P with P(b1)=1, P(b2)=n, via the standard tableau n+1-P.
    n = mp.n
    entries = _greedy_standard_fill(mp, {b2: 1}, skip_last=b1)
    if entries is None:
        return None
    p = tuple(n + 1 - v for v in entries)
    q = tuple(k - 1 if b == b1 else 0 for b in mp.boxes())
    try:
        return PQPair(mp, p, q)
    except ValueError:
        return None


def _near_fold_case_b(mp: MultiPartition, b1: Box, b2: Box, k: int):
    n = mp.n
    if b2.row == 1:
        b3 = Box(b2.component, 1, b2.col - 1)
    else:
        b3 = Box(b2.component, b2.row - 1, 1)
    if not mp.contains(b3) or not (box_leq(b3, b2) and abs(b3.content - b2.content) == 1):
        return None
    i_max = n + 1 - b2.row * b2.col  # down-set of a rim box is a single strip
    if not (2 <= i_max <= n - 1):
        return None
    # Assign P = value directly, decreasing order; forced P(b1)=i_max+1, P(b3)=i_max, P(b2)=i_max-1.
    boxes = mp.boxes()
    forced = {b1: i_max + 1, b3: i_max, b2: i_max - 1}
    by_value = {v: b for b, v in forced.items()}
    filled: dict[Box, int] = {}

    def neighbours_filled(b):
        # reverse-standardness: up and left neighbours must already carry larger values
        up = Box(b.component, b.row - 1, b.col)
        lf = Box(b.component, b.row, b.col - 1)
        if b.row > 1 and up not in filled:
            return False
        if b.col > 1 and lf not in filled:
            return False
        return True

    for v in range(n, 0, -1):
        if v in by_value:
            b = by_value[v]
            # b1 is removable, so nothing depends on it and it is exempt
            if b != b1 and not neighbours_filled(b):
                return None
            filled[b] = v
            continue
        target = None
        for b in boxes:
            if b not in filled and b not in forced and neighbours_filled(b):
                target = b
                break
        if target is None:
            return None
        filled[target] = v
    p = tuple(filled[b] for b in boxes)
    q = tuple(k if b == b1 else 0 for b in boxes)
    try:
        return PQPair(mp, p, q), i_max
    except ValueError:
        return None
