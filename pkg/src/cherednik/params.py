"""Exact parameters (c0, d_0..d_{r-1}) and the box statistics driving classification.

All parameter arithmetic is over exact rationals: every criterion reduces to
equalities and inequalities between rationals, which floats would corrupt.
Statistics valued in the extended positive integers use INFINITY, which
compares greater than every int.
"""

from dataclasses import dataclass
from fractions import Fraction

from .shapes import Box, MultiPartition, ParseError

INFINITY = float("inf")

Rat = Fraction


@dataclass(frozen=True)
class Parameter:
    """r, c0 and the cyclic weights d_0..d_{r-1} with d_0 + ... + d_{r-1} = 0."""

    r: int
    c0: Fraction
    d: tuple[Fraction, ...]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if len(self.d) != self.r:
            raise ValueError(f"need {self.r} d-values, got {len(self.d)}")
        if sum(self.d) != 0:
            raise ValueError(f"d must sum to zero, got {self.d}")

    def d_of(self, l: int) -> Fraction:
        """d_l for any integer l, extended r-periodically."""
        return self.d[l % self.r]

    def with_c0(self, c0: Fraction) -> "Parameter":
        return Parameter(self.r, Fraction(c0), self.d)


def make_parameter(r: int, c0, d_tail=()) -> Parameter:
    """Build a Parameter from c0 and either d_1..d_{r-1} (d_0 derived) or all of d_0..d_{r-1}."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    ds = tuple(Fraction(x) for x in d_tail)
    if len(ds) == r - 1:
        ds = (-sum(ds, Fraction(0)),) + ds
    elif len(ds) == r:
        if sum(ds) != 0:
            raise ValueError(f"full d-vector must sum to zero, got {ds}")
    else:
        raise ValueError(f"need {r - 1} or {r} d-values, got {len(ds)}")
    return Parameter(r, Fraction(c0), ds)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad rational {text!r}: {e}") from None


def format_rational(x: Fraction) -> str:
    """Reduced "p/q" with q > 0, or a plain integer."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_parameter(text: str, r: int) -> Parameter:
    """Parse "c0=<rat>;d=<rat>,..." with the d list of length r-1 or r; ";d=" may be omitted for r=1."""
    c0 = None
    d_tail: tuple = ()
    for piece in text.strip().split(";"):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise ParseError(f"expected key=value in parameter text, got {piece!r}")
        key, _, val = piece.partition("=")
        key = key.strip()
        if key == "c0":
            c0 = parse_rational(val)
        elif key == "d":
            d_tail = tuple(parse_rational(tok) for tok in val.split(",")) if val.strip() else ()
        else:
            raise ParseError(f"unknown parameter key {key!r}")
    if c0 is None:
        raise ParseError("parameter text must set c0")
    try:
        return make_parameter(r, c0, d_tail)
    except ValueError as e:
        raise ParseError(str(e)) from None


def format_parameter(c: Parameter) -> str:
    d_text = ",".join(format_rational(x) for x in c.d)
    return f"c0={format_rational(c.c0)};d={d_text}"


def m_residue(i: int, j: int, r: int) -> int:
    """The representative of i - j mod r lying in [1, r]."""
    m = (i - j) % r
    return m if m else r


def charged_content(b: Box, c: Parameter) -> Fraction:
    return c.d_of(b.component) + c.r * b.content * c.c0


def _content_charge(component: int, content: int, c: Parameter) -> Fraction:
    return c.d_of(component) + c.r * content * c.c0


def k_stat(b: Box, mp: MultiPartition, c: Parameter):
    """Smallest positive integer k with a box b' in component beta(b)-k at charge distance k.

    The search enumerates the finitely many candidate values c(b) - c(b')
    over actual boxes b' and keeps those that are positive integers landing
    in the right component, so no unbounded loop is needed.
    """
    cb = charged_content(b, c)
    best = INFINITY
    for bp in mp.boxes():
        k = cb - charged_content(bp, c)
        if k > 0 and k.denominator == 1:
            ki = int(k)
            if (b.component - ki) % c.r == bp.component:
                best = min(best, ki)
    return best


def l_stat(b: Box, mp: MultiPartition, c: Parameter):
    """Like k_stat but over outside addable cells of the target component."""
    cb = charged_content(b, c)
    best = INFINITY
    for comp_idx, comp in enumerate(mp.components):
        for (i, j) in comp.outside_addable_cells():
            l = cb - _content_charge(comp_idx, j - i, c)
            if l > 0 and l.denominator == 1:
                li = int(l)
                if (b.component - li) % c.r == comp_idx:
                    best = min(best, li)
    return best


def l_prime_stat(b: Box, mp: MultiPartition, c: Parameter):
    """The relaxed variant of l_stat: +-1-shifted distances to actual boxes, or the bare charge.

    Never exceeds l_stat; the classification theorem may be run with either.
    """
    cb_base = c.r * b.content * c.c0
    best = INFINITY
    for comp_idx in range(c.r):
        dd = c.d_of(b.component) - c.d_of(comp_idx)
        l = dd + cb_base
        if l > 0 and l.denominator == 1:
            li = int(l)
            if (b.component - li) % c.r == comp_idx:
                best = min(best, li)
    for bp in mp.boxes():
        dd = c.d_of(b.component) - c.d_of(bp.component)
        for sign in (1, -1):
            l = dd + c.r * (b.content - bp.content + sign) * c.c0
            if l > 0 and l.denominator == 1:
                li = int(l)
                if (b.component - li) % c.r == bp.component:
                    best = min(best, li)
    return best
