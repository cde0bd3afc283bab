"""Decision procedures for diagonalizability and unitarity, with certificates.

Every verdict carries a certificate that can be re-checked independently of
the search that produced it: removable-box statistic tables, blocking
sequences (re-validated against their defining equalities), or an explicit
Gamma_c pair violating one of the norm restrictions.
"""

from dataclasses import dataclass
from fractions import Fraction

from .gamma import PQPair, gamma_constraints, in_gamma_c
from .params import (
    INFINITY,
    Parameter,
    charged_content,
    k_stat,
    l_stat,
    m_residue,
)
from .shapes import Box, MultiPartition, box_leq


class InternalConsistencyError(RuntimeError):
    """A certificate failed its own re-validation; signals a search bug."""


class PreconditionError(RuntimeError):
    """An operation was refused because its mathematical precondition fails."""


@dataclass(frozen=True)
class Verdict:
    answer: bool
    kind: str
    payload: dict


@dataclass(frozen=True)
class BlockingSequence:
    """A chain (b_0, b_1, ..., b_{2q+1}) certifying that a dangerous window
    never manifests inside Gamma_c; char targets close on a residue l."""

    kind: str  # "char" or "box"
    boxes: tuple[Box, ...]
    l: int | None
    target_box: Box
    target: int | Box  # residue j for char, the second box for box targets

    @property
    def q(self) -> int:
        return len(self.boxes) // 2 - 1


def reduce_sign(mp: MultiPartition, c: Parameter):
    """Transpose the shape and negate c0 when c0 < 0; verdicts are invariant."""
    if c.c0 < 0:
        return mp.transpose(), c.with_c0(-c.c0), True
    return mp, c, False


def removable_box_table(mp: MultiPartition, c: Parameter):
    return tuple((b, k_stat(b, mp, c), l_stat(b, mp, c)) for b in mp.removable_boxes())


def is_diagonalizable(mp: MultiPartition, c: Parameter) -> Verdict:
    """Every removable box must have k_c infinite or l_c < k_c (after sign reduction)."""
    if c.c0 == 0:
        return Verdict(True, "c0-zero", {"flipped": False})
    rmp, rc, flipped = reduce_sign(mp, c)
    table = removable_box_table(rmp, rc)
    bad = [(b, k, l) for (b, k, l) in table if k != INFINITY and not l < k]
    predicted = min((k for (_, k, _) in bad), default=None)
    return Verdict(
        not bad,
        "removable-table",
        {
            "flipped": flipped,
            "shape": rmp,
            "c": rc,
            "table": table,
            "failing": tuple(bad),
            "predicted_degree": predicted,
        },
    )


def _up_set(mp: MultiPartition, b: Box):
    return [x for x in mp.boxes() if box_leq(b, x)]


def _down_set(mp: MultiPartition, b: Box):
    return [x for x in mp.boxes() if box_leq(x, b)]


def _link_equality(b_odd: Box, b_even: Box, c: Parameter) -> bool:
    m = m_residue(b_odd.component, b_even.component, c.r)
    dd = c.d_of(b_odd.component) - c.d_of(b_even.component)
    return any(
        dd + c.r * (b_odd.content - b_even.content + s) * c.c0 == m for s in (1, -1)
    )


def _char_close_equality(b_odd: Box, l: int, c: Parameter) -> bool:
    m = m_residue(b_odd.component, l, c.r)
    return charged_content(b_odd, c) - c.d_of(l) == m


def find_blocking_char(b: Box, j: int, mp: MultiPartition, c: Parameter):
    """Shortest blocking sequence for the pair (b, residue j), or None.

    Search is exhaustive and deterministic: chains are explored by the
    number of links q (bounded by the strictly increasing m-values), then in
    box order.  Every hit is re-validated before being returned.
    """
    i = b.component
    mij = m_residue(i, j, c.r)

    def close(chain, prev_even_m):
        last = chain[-1]
        q = len(chain) // 2 - 1
        for l in range(c.r):
            mval = m_residue(i, l, c.r)
            if q == 0:
                if mval > mij:
                    continue
            elif not (prev_even_m < mval <= mij):
                continue
            if _char_close_equality(last, l, c):
                return BlockingSequence("char", tuple(chain), l, b, j)
        return None

    for q in range(c.r):
        found = _chain_search(b, mp, c, i, q, close)
        if found is not None:
            if not validate_blocking_sequence(found, mp, c):
                raise InternalConsistencyError("blocking search produced an invalid sequence")
            return found
    return None


def find_blocking_pair(b: Box, bp: Box, mp: MultiPartition, c: Parameter):
    """Blocking sequence for a pair of boxes: the char route for (b, beta(b')),
    or a chain ending exactly at b'."""
    via_char = find_blocking_char(b, bp.component, mp, c)
    if via_char is not None:
        return BlockingSequence("char", via_char.boxes, via_char.l, b, bp)
    i = b.component

    def close(chain, prev_even_m):
        if chain[-1] == bp:
            return BlockingSequence("box", tuple(chain), None, b, bp)
        return None

    for q in range(c.r):
        found = _chain_search(b, mp, c, i, q, close)
        if found is not None:
            if not validate_blocking_sequence(found, mp, c):
                raise InternalConsistencyError("blocking search produced an invalid sequence")
            return found
    return None


def _chain_search(b: Box, mp: MultiPartition, c: Parameter, i: int, q: int, close):
    """Depth-first over chains with exactly q links, deterministic box order."""
    boxes = mp.boxes()

    def rec(chain, prev_even_m, q_left):
        if q_left == 0:
            return close(chain, prev_even_m)
        last = chain[-1]
        for be in boxes:
            m_i_be = m_residue(i, be.component, c.r)
            if m_i_be <= prev_even_m or m_i_be > c.r:
                continue
            if not _link_equality(last, be, c):
                continue
            for bo in boxes:
                if box_leq(be, bo):
                    got = rec(chain + [be, bo], m_i_be, q_left - 1)
                    if got is not None:
                        return got
        return None

    for b1 in boxes:
        if box_leq(b, b1):
            got = rec([b, b1], 0, q)
            if got is not None:
                return got
    return None


def validate_blocking_sequence(seq: BlockingSequence, mp: MultiPartition, c: Parameter) -> bool:
    """Independent re-check of the literal defining conditions."""
    bs = seq.boxes
    if len(bs) < 2 or len(bs) % 2 != 0 or bs[0] != seq.target_box:
        return False
    if any(not mp.contains(x) for x in bs):
        return False
    q = len(bs) // 2 - 1
    i = bs[0].component
    for k in range(q + 1):
        if not box_leq(bs[2 * k], bs[2 * k + 1]):
            return False
    mvals = [m_residue(i, bs[2 * k].component, c.r) for k in range(1, q + 1)]
    if any(mvals[t] >= mvals[t + 1] for t in range(len(mvals) - 1)):
        return False
    for k in range(1, q + 1):
        if not _link_equality(bs[2 * k - 1], bs[2 * k], c):
            return False
    if seq.kind == "char":
        j = seq.target if isinstance(seq.target, int) else seq.target.component
        mij = m_residue(i, j, c.r)
        mil = m_residue(i, seq.l, c.r)
        if q == 0:
            if mil > mij:
                return False
        elif not (mvals[-1] < mil <= mij):
            return False
        return _char_close_equality(bs[-1], seq.l, c)
    if seq.kind == "box":
        return bs[-1] == seq.target
    return False


def _c0_zero_unitary(mp: MultiPartition, c: Parameter) -> Verdict:
    """The c0 = 0 criterion: each firing (i, j) needs a closer residue k with
    an exact d-difference."""
    witnesses = []
    for i, comp in enumerate(mp.components):
        if comp.size == 0:
            continue
        for j in range(c.r):
            mij = m_residue(i, j, c.r)
            if c.d_of(i) - c.d_of(j) > mij:
                k = next(
                    (
                        k
                        for k in range(c.r)
                        if m_residue(i, k, c.r) < mij
                        and c.d_of(i) - c.d_of(k) == m_residue(i, k, c.r)
                    ),
                    None,
                )
                if k is None:
                    return Verdict(
                        False,
                        "c0-zero-criterion",
                        {"failure": (i, j), "predicted_degree": mij, "witnesses": tuple(witnesses)},
                    )
                witnesses.append((i, j, k))
    return Verdict(True, "c0-zero-criterion", {"failure": None, "witnesses": tuple(witnesses)})


def is_unitary(mp: MultiPartition, c: Parameter) -> Verdict:
    if c.c0 == 0:
        return _c0_zero_unitary(mp, c)
    rmp, rc, flipped = reduce_sign(mp, c)
    diag = is_diagonalizable(mp, c)
    if not diag.answer:
        return Verdict(
            False,
            "non-diagonalizable",
            {
                "flipped": flipped,
                "diag": diag,
                "predicted_degree": diag.payload["predicted_degree"],
            },
        )
    boxes = rmp.boxes()
    sequences = []
    for b in boxes:
        for bp in boxes:
            m = m_residue(b.component, bp.component, rc.r)
            dd = rc.d_of(b.component) - rc.d_of(bp.component)
            hi = dd + rc.r * (b.content - bp.content + 1) * rc.c0
            lo = dd + rc.r * (b.content - bp.content - 1) * rc.c0
            if hi > m > lo:
                seq = find_blocking_pair(b, bp, rmp, rc)
                if seq is None:
                    violation = construct_violation(("pair", b, bp), rmp, rc)
                    return Verdict(
                        False,
                        "missing-blocking",
                        {
                            "flipped": flipped,
                            "target": ("pair", b, bp),
                            "window": (lo, hi, m),
                            "violation": violation,
                            "predicted_degree": violation.degree,
                            "diag": diag,
                        },
                    )
                sequences.append(seq)
    for b in boxes:
        for j in range(rc.r):
            m = m_residue(b.component, j, rc.r)
            if charged_content(b, rc) - rc.d_of(j) > m:
                seq = find_blocking_char(b, j, rmp, rc)
                if seq is None:
                    violation = construct_violation(("char", b, j), rmp, rc)
                    return Verdict(
                        False,
                        "missing-blocking",
                        {
                            "flipped": flipped,
                            "target": ("char", b, j),
                            "window": (m,),
                            "violation": violation,
                            "predicted_degree": violation.degree,
                            "diag": diag,
                        },
                    )
                sequences.append(seq)
    return Verdict(
        True,
        "blocking-sequences",
        {"flipped": flipped, "sequences": tuple(sequences), "diag": diag},
    )


def construct_violation(target, mp: MultiPartition, c: Parameter) -> PQPair:
    """An explicit Gamma_c pair violating the relevant norm restriction.

    Greedy sweep: freeze Q on the up-set of the first box and the down-set
    of the second (or the target box itself for residue targets), hand out
    the top P values there, then walk the remaining components cyclically
    assigning maximal free P values and minimal admissible Q values.  The
    result is re-validated; failure raises, since a missed blocking sequence
    is the only way this can go wrong.
    """
    if c.c0 <= 0:
        raise PreconditionError("violation construction requires c0 > 0")
    kind = target[0]
    boxes = mp.boxes()
    n = mp.n
    if kind == "pair":
        _, b1, b2 = target
        if find_blocking_pair(b1, b2, mp, c) is not None:
            raise PreconditionError("a blocking sequence exists for the target pair")
        m = m_residue(b1.component, b2.component, c.r)
        x_up = _up_set(mp, b1)
        x_dn = _down_set(mp, b2)
        if set(x_up) & set(x_dn):
            raise InternalConsistencyError("up- and down-sets overlap for a pair target")
        q_map = {b: m for b in x_up}
        q_map.update({b: 0 for b in x_dn})
        p_map = {}
        lo_val = n - len(x_up) - len(x_dn) + 1
        for idx, b in enumerate(sorted(x_up, key=boxes.index)):
            p_map[b] = lo_val + len(x_up) - 1 - idx
        for idx, b in enumerate(sorted(x_dn, key=boxes.index)):
            p_map[b] = n - idx
        anchor = b1.component
    else:
        _, b, j = target
        if find_blocking_char(b, j, mp, c) is not None:
            raise PreconditionError("a blocking sequence exists for the target")
        m = m_residue(b.component, j, c.r)
        x_up = _up_set(mp, b)
        q_map = {x: m for x in x_up}
        q_map[b] = m - 1
        p_map = {b: 1}
        rest = [x for x in sorted(x_up, key=boxes.index) if x != b]
        for idx, x in enumerate(rest):
            p_map[x] = n - idx
        anchor = b.component
    _violation_sweep(mp, c, q_map, p_map, anchor)
    p = tuple(p_map[b] for b in boxes)
    q = tuple(q_map[b] for b in boxes)
    pq = PQPair(mp, p, q)
    if not pq.is_valid_gamma() or in_gamma_c(pq, c) is not None:
        raise InternalConsistencyError("violation pair fell outside Gamma_c")
    if kind == "pair":
        _, b1, b2 = target
        diff = pq.q_of(b1) - pq.q_of(b2)
        dd = c.d_of(b1.component) - c.d_of(b2.component)
        lo = dd + c.r * (b1.content - b2.content - 1) * c.c0
        hi = dd + c.r * (b1.content - b2.content + 1) * c.c0
        ok = lo < diff < hi and pq.p_of(b2) == pq.p_of(b1) + 1
    else:
        _, b, j = target
        qb = pq.q_of(b)
        rhs = c.d_of(b.component) - c.d_of(b.component - qb - 1) + c.r * b.content * c.c0
        ok = pq.p_of(b) == 1 and qb + 1 < rhs
    if not ok:
        raise InternalConsistencyError("constructed pair does not violate the restriction")
    return pq


def _violation_sweep(mp: MultiPartition, c: Parameter, q_map, p_map, anchor: int):
    boxes = mp.boxes()
    unused = sorted(set(range(1, mp.n + 1)) - set(p_map.values()), reverse=True)
    order = []
    for k in range(1, c.r + 1):
        comp = (anchor - k) % c.r
        order.extend(b for b in boxes if b.component == comp and b not in p_map)
    taken = 0
    for b in order:
        p_map[b] = unused[taken]
        taken += 1
        qv = 0
        for bp in q_map:
            if box_leq(bp, b):
                qv = max(qv, q_map[bp])
        for bp, qval in list(q_map.items()):
            dd = c.d_of(bp.component) - c.d_of(b.component)
            for s in (1, -1):
                l = dd + c.r * (bp.content - b.content + s) * c.c0
                if l > 0 and l.denominator == 1:
                    li = int(l)
                    if (bp.component - b.component - li) % c.r == 0:
                        qv = max(qv, qval - li)
        q_map[b] = qv


def locus_2d(mp: MultiPartition, c0_values, d0_values):
    """Grid of (c0, d0, diagonalizable, unitary) verdicts for r = 2 shapes."""
    if mp.r != 2:
        raise PreconditionError("the 2-D locus sweep needs r = 2")
    from .params import make_parameter

    rows = []
    for c0 in c0_values:
        for d0 in d0_values:
            c = make_parameter(2, Fraction(c0), (Fraction(d0), -Fraction(d0)))
            rows.append(
                (
                    Fraction(c0),
                    Fraction(d0),
                    is_diagonalizable(mp, c).answer,
                    is_unitary(mp, c).answer,
                )
            )
    return rows
