"""Rational seminormal models of the irreducible G(r,1,n)-modules.

The basis v_T is indexed by standard tableaux; adjacent transpositions act
through the 1/(content difference) triangular rule with rational entries,
cyclic generators act diagonally through the component residues, and the
invariant form is diagonal with positive rational norms.  No square roots
appear anywhere; the construction is validated, not trusted: every model
invariant is checked before a model is returned.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .shapes import MultiPartition, StandardTableau, standard_tableaux


class ConstructionError(RuntimeError):
    """An internal invariant of a constructed model failed (a bug signal)."""


SparseCols = list[dict[int, Fraction]]


def cols_apply(cols: SparseCols, vec: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for j, x in vec.items():
        for i, a in cols[j].items():
            v = out.get(i, 0) + a * x
            if v:
                out[i] = v
            else:
                out.pop(i, None)
    return out


def cols_compose(a: SparseCols, b: SparseCols) -> SparseCols:
    """Columns of the composite map a after b."""
    return [cols_apply(a, col) for col in b]


def cols_equal(a: SparseCols, b: SparseCols) -> bool:
    return all(ca == cb for ca, cb in zip(a, b))


def cols_identity(dim: int) -> SparseCols:
    return [{j: Fraction(1)} for j in range(dim)]


@dataclass(frozen=True)
class SpechtModel:
    """Seminormal matrices for s_1..s_{n-1}, residue data for zeta_i, norms nu."""

    shape: MultiPartition
    tableaux: tuple[StandardTableau, ...]
    s_cols: tuple  # s_cols[i-1] is the sparse column map of s_i
    nu: tuple[Fraction, ...]
    beta: tuple  # beta[t][i-1] = component of T^{-1}(i)
    rct: tuple  # rct[t][i-1] = r * ct(T^{-1}(i)), the JM eigenvalue

    @property
    def dim(self) -> int:
        return len(self.tableaux)

    def jm_eigenvalue(self, t_index: int, i: int) -> int:
        return self.rct[t_index][i - 1]

    def s_word_cols(self, word: tuple[int, ...]) -> SparseCols:
        """Sparse columns of s_{word[0]} s_{word[1]} ... applied left to right on vectors."""
        out = cols_identity(self.dim)
        for i in reversed(word):
            out = cols_compose(self.s_cols[i - 1], out)
        return out

    def transposition_cols(self, i: int, j: int) -> SparseCols:
        """The (possibly non-adjacent) transposition s_{ij} as a product of adjacent ones."""
        if i > j:
            i, j = j, i
        word = tuple(range(i, j)) + tuple(range(j - 2, i - 1, -1))
        return self.s_word_cols(word)


@lru_cache(maxsize=None)
def build_specht(mp: MultiPartition) -> SpechtModel:
    tabs = tuple(standard_tableaux(mp))
    index = {t.entries: k for k, t in enumerate(tabs)}
    n, dim = mp.n, len(tabs)
    r = mp.r

    beta = tuple(tuple(t.box_of(i).component for i in range(1, n + 1)) for t in tabs)
    rct = tuple(tuple(r * t.box_of(i).content for i in range(1, n + 1)) for t in tabs)

    s_cols = []
    for i in range(1, n):
        cols: SparseCols = []
        for t in tabs:
            b, bp = t.box_of(i), t.box_of(i + 1)
            ts = t.swap_values(i)
            if b.component != bp.component:
                cols.append({index[ts.entries]: Fraction(1)})
                continue
            d = bp.content - b.content
            if ts is None:
                cols.append({index[t.entries]: Fraction(1, d)})
            else:
                off = Fraction(1) if d > 0 else 1 - Fraction(1, d * d)
                cols.append({index[t.entries]: Fraction(1, d), index[ts.entries]: off})
        s_cols.append(cols)

    nu = _propagate_norms(tabs, index, s_cols)
    model = SpechtModel(mp, tabs, tuple(s_cols), nu, beta, rct)
    _validate(model)
    return model


def _propagate_norms(tabs, index, s_cols) -> tuple[Fraction, ...]:
    """Diagonal form values making every s_i self-adjoint; consistency is
    re-checked globally by _validate."""
    nu = [None] * len(tabs)
    nu[0] = Fraction(1)
    stack = [0]
    while stack:
        k = stack.pop()
        t = tabs[k]
        for i in range(1, t.shape.n):
            ts = t.swap_values(i)
            if ts is None:
                continue
            k2 = index[ts.entries]
            if nu[k2] is not None:
                continue
            b, bp = t.box_of(i), t.box_of(i + 1)
            if b.component != bp.component:
                nu[k2] = nu[k]
            else:
                d = bp.content - b.content
                factor = 1 - Fraction(1, d * d)
                nu[k2] = nu[k] * factor if d > 0 else nu[k] / factor
            stack.append(k2)
    if any(v is None for v in nu):
        raise ConstructionError("tableau graph not connected")
    return tuple(nu)


def _validate(m: SpechtModel) -> None:
    n, dim = m.shape.n, m.dim
    r = m.shape.r
    ident = cols_identity(dim)
    for i in range(1, n):
        si = m.s_cols[i - 1]
        if not cols_equal(cols_compose(si, si), ident):
            raise ConstructionError(f"s_{i}^2 != 1")
    for i in range(1, n - 1):
        a, b = m.s_cols[i - 1], m.s_cols[i]
        if not cols_equal(
            cols_compose(a, cols_compose(b, a)), cols_compose(b, cols_compose(a, b))
        ):
            raise ConstructionError(f"braid relation fails at {i}")
    for i in range(1, n):
        for j in range(i + 2, n):
            a, b = m.s_cols[i - 1], m.s_cols[j - 1]
            if not cols_equal(cols_compose(a, b), cols_compose(b, a)):
                raise ConstructionError(f"s_{i} s_{j} do not commute")
    # s_i zeta_j s_i = zeta_{s_i(j)} on the diagonal residue data
    for i in range(1, n):
        for t in range(dim):
            for tt, coef in m.s_cols[i - 1][t].items():
                if coef:
                    for j in range(1, n + 1):
                        sj = j + 1 if j == i else (j - 1 if j == i + 1 else j)
                        if m.beta[tt][j - 1] != m.beta[t][sj - 1]:
                            raise ConstructionError("zeta equivariance fails")
    # Jucys-Murphy tower: phi_1 = 0 and phi_{i+1} = s_i phi_i s_i + s_i pi_i
    phi: SparseCols = [dict() for _ in range(dim)]
    for i in range(1, n + 1):
        for t in range(dim):
            expect = {t: Fraction(m.rct[t][i - 1])} if m.rct[t][i - 1] else {}
            if phi[t] != expect:
                raise ConstructionError(f"phi_{i} eigenvalue wrong on tableau {t}")
        if i == n:
            break
        si = m.s_cols[i - 1]
        pi_diag = [
            Fraction(r) if m.beta[t][i - 1] == m.beta[t][i] else Fraction(0)
            for t in range(dim)
        ]
        spi: SparseCols = [
            ({k: v * pi_diag[t] for k, v in si[t].items()} if pi_diag[t] else {})
            for t in range(dim)
        ]
        phi = cols_compose(si, cols_compose(phi, si))
        phi = [_dict_add(a, b) for a, b in zip(phi, spi)]
    # self-adjointness of each s_i for the diagonal form nu
    for i in range(1, n):
        si = m.s_cols[i - 1]
        for t in range(dim):
            for tt, coef in si[t].items():
                if coef * m.nu[tt] != si[tt].get(t, Fraction(0)) * m.nu[t]:
                    raise ConstructionError(f"s_{i} is not self-adjoint for nu")
    if any(v <= 0 for v in m.nu):
        raise ConstructionError("norms must be positive")


def _dict_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out
