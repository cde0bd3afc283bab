"""Partitions, r-partitions, boxes, tableaux and the box partial order.

Conventions: components are indexed 0..r-1, rows and columns are 1-based,
and the content of a box is col - row.  Boxes are always listed in the
deterministic order (component, row, col).
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial


class ParseError(ValueError):
    """Malformed textual input (shapes, parameters, CLI values)."""


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers; () is the empty partition."""

    parts: tuple[int, ...]

    def __post_init__(self):
        for k, p in enumerate(self.parts):
            if not isinstance(p, int) or p < 1:
                raise ParseError(f"partition part {p!r} at index {k} is not a positive integer")
            if k + 1 < len(self.parts) and self.parts[k + 1] > p:
                raise ParseError(f"parts not weakly decreasing at index {k}: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def nrows(self) -> int:
        return len(self.parts)

    def row_length(self, row: int) -> int:
        """Length of a 1-based row; 0 outside the diagram."""
        return self.parts[row - 1] if 1 <= row <= len(self.parts) else 0

    def contains(self, row: int, col: int) -> bool:
        return row >= 1 and col >= 1 and col <= self.row_length(row)

    def cells(self):
        """All (row, col) cells, row-major."""
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def contents(self) -> set[int]:
        return {j - i for (i, j) in self.cells()}

    def transpose(self) -> "Partition":
        if not self.parts:
            return self
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(tuple(cols))

    def removable_cells(self) -> list[tuple[int, int]]:
        """Cells whose removal leaves a partition."""
        out = []
        for i, p in enumerate(self.parts, start=1):
            if i == len(self.parts) or self.parts[i] < p:
                out.append((i, p))
        return out

    def addable_cells(self) -> list[tuple[int, int]]:
        """Cells whose addition yields a partition."""
        out = [(1, (self.parts[0] + 1) if self.parts else 1)]
        for i in range(1, len(self.parts)):
            if self.parts[i] < self.parts[i - 1]:
                out.append((i + 1, self.parts[i] + 1))
        if self.parts:
            out.append((len(self.parts) + 1, 1))
        return out

    def outside_addable_cells(self) -> list[tuple[int, int]]:
        """Addable cells whose content differs from every existing cell's content."""
        have = self.contents()
        return [(i, j) for (i, j) in self.addable_cells() if (j - i) not in have]

    def syt_count(self) -> int:
        """Number of standard tableaux, by the hook length formula."""
        if not self.parts:
            return 1
        t = self.transpose()
        num = factorial(self.size)
        for (i, j) in self.cells():
            num //= (self.parts[i - 1] - j) + (t.parts[j - 1] - i) + 1
        return num


@dataclass(frozen=True, order=True)
class Box:
    """A cell of an r-partition: component index, 1-based row and column."""

    component: int
    row: int
    col: int

    @property
    def content(self) -> int:
        return self.col - self.row


def box_leq(b: Box, bp: Box) -> bool:
    """b <= b' iff same component and b is weakly up and to the left of b'."""
    return b.component == bp.component and b.row <= bp.row and b.col <= bp.col


@dataclass(frozen=True)
class MultiPartition:
    """An r-tuple of partitions of total size n >= 1; empty components allowed."""

    components: tuple[Partition, ...]

    def __post_init__(self):
        if not self.components:
            raise ParseError("multipartition needs at least one component")
        if self.n < 1:
            raise ParseError("multipartition of total size 0 is not allowed")

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def n(self) -> int:
        return sum(c.size for c in self.components)

    def boxes(self) -> tuple[Box, ...]:
        return _boxes(self)

    def box_index(self, b: Box) -> int:
        return _box_index_map(self)[b]

    def contains(self, b: Box) -> bool:
        return 0 <= b.component < self.r and self.components[b.component].contains(b.row, b.col)

    def removable_boxes(self) -> tuple[Box, ...]:
        return tuple(
            Box(l, i, j)
            for l, comp in enumerate(self.components)
            for (i, j) in comp.removable_cells()
        )

    def transpose(self) -> "MultiPartition":
        return MultiPartition(tuple(c.transpose() for c in self.components))

    def remove(self, b: Box) -> "MultiPartition | None":
        """The multipartition with box b removed, or None if n would reach 0."""
        comp = self.components[b.component]
        parts = list(comp.parts)
        parts[b.row - 1] -= 1
        if parts[b.row - 1] == 0:
            parts.pop()
        new = self.components[: b.component] + (Partition(tuple(parts)),) + self.components[b.component + 1 :]
        if sum(c.size for c in new) == 0:
            return None
        return MultiPartition(new)

    def rims(self) -> tuple[tuple[Box, ...], tuple[Box, ...]]:
        """(upper rim, left rim): boxes with nothing above, resp. nothing to the left."""
        upper = tuple(b for b in self.boxes() if b.row == 1)
        left = tuple(b for b in self.boxes() if b.col == 1)
        return upper, left

    def syt_count(self) -> int:
        total = factorial(self.n)
        for c in self.components:
            total //= factorial(c.size)
            total *= c.syt_count()
        return total


@lru_cache(maxsize=None)
def _boxes(mp: MultiPartition) -> tuple[Box, ...]:
    return tuple(
        Box(l, i, j) for l, comp in enumerate(mp.components) for (i, j) in comp.cells()
    )


@lru_cache(maxsize=None)
def _box_index_map(mp: MultiPartition) -> dict[Box, int]:
    return {b: k for k, b in enumerate(_boxes(mp))}


def parse_multipartition(text: str, r: int | None = None) -> MultiPartition:
    """Parse "[3,2],[2,2]" style notation; "[]" denotes an empty component.

    The number of bracket groups fixes r unless r is given, in which case it
    must match.  Inverse of format_multipartition.
    """
    s = text.strip()
    if not s:
        raise ParseError("empty multipartition text")
    comps = []
    pos = 0
    while pos < len(s):
        if s[pos] != "[":
            raise ParseError(f"expected '[' at position {pos} in {text!r}")
        close = s.find("]", pos)
        if close < 0:
            raise ParseError(f"unclosed '[' at position {pos} in {text!r}")
        body = s[pos + 1 : close].strip()
        if body:
            try:
                parts = tuple(int(tok) for tok in body.split(","))
            except ValueError as e:
                raise ParseError(f"bad part in component at position {pos}: {e}") from None
        else:
            parts = ()
        try:
            comps.append(Partition(parts))
        except ParseError as e:
            raise ParseError(f"component at position {pos}: {e}") from None
        pos = close + 1
        if pos < len(s):
            if s[pos] != ",":
                raise ParseError(f"expected ',' between components at position {pos} in {text!r}")
            pos += 1
    if r is not None and len(comps) != r:
        raise ParseError(f"expected {r} components, found {len(comps)}")
    return MultiPartition(tuple(comps))


def format_multipartition(mp: MultiPartition) -> str:
    return ",".join("[" + ",".join(str(p) for p in c.parts) + "]" for c in mp.components)


@dataclass(frozen=True)
class StandardTableau:
    """A bijection boxes -> {1..n}, strictly increasing along rows and columns.

    Entries are stored in the deterministic box order of the shape.
    """

    shape: MultiPartition
    entries: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.entries) != list(range(1, self.shape.n + 1)):
            raise ValueError("tableau entries must be a permutation of 1..n")
        if not self._increasing():
            raise ValueError("tableau entries must increase along rows and columns")

    def _increasing(self) -> bool:
        val = self.value_map()
        for b in self.shape.boxes():
            right = Box(b.component, b.row, b.col + 1)
            below = Box(b.component, b.row + 1, b.col)
            if right in val and val[right] <= val[b]:
                return False
            if below in val and val[below] <= val[b]:
                return False
        return True

    def value_map(self) -> dict[Box, int]:
        return dict(zip(self.shape.boxes(), self.entries))

    def value(self, b: Box) -> int:
        return self.entries[self.shape.box_index(b)]

    def box_of(self, value: int) -> Box:
        return self.shape.boxes()[self.entries.index(value)]

    def swap_values(self, i: int) -> "StandardTableau | None":
        """The tableau with entries i and i+1 exchanged, or None if not standard."""
        ent = list(self.entries)
        a, b = ent.index(i), ent.index(i + 1)
        ent[a], ent[b] = ent[b], ent[a]
        try:
            return StandardTableau(self.shape, tuple(ent))
        except ValueError:
            return None


def standard_tableaux(mp: MultiPartition):
    """Enumerate all standard tableaux on mp, deterministically.

    Recursion peels the largest entry off a removable box, so the delay per
    tableau is polynomial in n.
    """
    for entries in _syt_entries(mp):
        yield StandardTableau(mp, entries)


@lru_cache(maxsize=None)
def _syt_entries(mp: MultiPartition) -> tuple[tuple[int, ...], ...]:
    n = mp.n
    if n == 1:
        return ((1,),)
    out = []
    boxes = mp.boxes()
    for b in mp.removable_boxes():
        smaller = mp.remove(b)
        if smaller is None:
            # n == 1 handled above; unreachable
            continue
        sboxes = smaller.boxes()
        lift = {sb: boxes.index(sb) for sb in sboxes}
        for sub in _syt_entries(smaller):
            ent = [0] * n
            for sb, v in zip(sboxes, sub):
                ent[lift[sb]] = v
            ent[boxes.index(b)] = n
            out.append(tuple(ent))
    return tuple(out)
