"""The generic hybrid complex of a shape in its standard tableau basis.

Components are indexed by standard-mod-X tableaux filtered by the number of
X-entries (the homological degree).  Differentials are computed by pushing
each basis vector through the column-side tensor differential and solving
for coordinates in the standard basis one degree down; the solution must be
integral, and a non-integral or inconsistent solve aborts the build rather
than rounding (it would mean a sign-convention bug).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional, Sequence

from ._elim import NonIntegralCoordinatesError, SolveError, solve_int_columns
from ._hybrid import HybridScheme
from .multilinear import ChainComplex, LinearForm, SparseMatrix
from .partitions import SkewShape
from .tableaux import Alphabet, Tableau, default_alphabet, enumerate_standard


class NonIntegralCoordinates(NonIntegralCoordinatesError):
    """Standard-basis coordinates of a differential failed to be integral."""


@dataclass
class SchurComplex:
    """A generic complex in its standard tableau basis.

    ``complex`` carries linform differentials; component labels are the
    tableaux themselves, so every matrix is written in a reproducible basis.
    """

    shape: SkewShape
    f: int
    g: int
    order: str
    tableaux: dict[int, list[Tableau]]
    complex: ChainComplex
    alphabet: Alphabet

    @property
    def start(self) -> Optional[int]:
        return self.complex.start()

    @property
    def finish(self) -> Optional[int]:
        return self.complex.finish()

    def ranks(self) -> list[int]:
        return self.complex.ranks()

    def specialize(self, assignment: Sequence[Sequence[int]],
                   prime: Optional[int] = None) -> ChainComplex:
        return specialize(self, assignment, prime)

    def to_json(self) -> dict:
        comps = [{"degree": n, "tableaux": [t.rows() for t in tabs]}
                 for n, tabs in sorted(self.tableaux.items())]
        diffs = [self.complex.differentials[n].to_json()
                 for n in sorted(self.complex.differentials)]
        return {
            "shape": str(self.shape),
            "f": self.f,
            "g": self.g,
            "order": self.order,
            "components": comps,
            "differentials": diffs,
        }


@lru_cache(maxsize=4096)
def _build_cached(lam: tuple, mu: tuple, f: int, g: int, order: str) -> SchurComplex:
    shape = SkewShape(lam, mu)
    alph = default_alphabet(f, g, order)
    if shape.is_empty:
        empty = Tableau(shape, ())
        cc = ChainComplex({0: [empty]}, {}, "linform")
        return SchurComplex(shape, f, g, order, {0: [empty]}, cc, alph)

    sch = HybridScheme(shape, f, g)
    tabs_by_deg: dict[int, list[Tableau]] = {}
    for t in enumerate_standard(shape, alph):
        tabs_by_deg.setdefault(t.count_x(alph), []).append(t)
    if not tabs_by_deg:
        cc = ChainComplex({}, {}, "linform")
        return SchurComplex(shape, f, g, order, {}, cc, alph)

    vectors: dict[int, list[dict]] = {}
    for n, tabs in tabs_by_deg.items():
        vectors[n] = [sch.image_column(sch.tableau_row_labels(t, alph)) for t in tabs]
        if any(not v for v in vectors[n]):
            raise AssertionError("a standard tableau mapped to zero")

    diffs: dict[int, SparseMatrix] = {}
    for n in sorted(tabs_by_deg):
        if n == min(tabs_by_deg):
            continue
        src = vectors[n]
        tgt = vectors.get(n - 1, [])
        # integer row ids shared by target basis vectors and pushed images
        row_ids: dict = {}

        def rid(lab) -> int:
            if lab not in row_ids:
                row_ids[lab] = len(row_ids)
            return row_ids[lab]

        tgt_cols = [{rid(lab): v for lab, v in vec.items()} for vec in tgt]

        rhs: list[dict[int, int]] = []
        rhs_keys: list[tuple[int, int, int]] = []
        for s, vec in enumerate(src):
            per_gen: dict[tuple[int, int], dict[int, int]] = {}
            for blab, co in vec.items():
                for tlab, a, xj, sgn in sch.b_diff_terms(blab):
                    bucket = per_gen.setdefault((a, xj), {})
                    r = rid(tlab)
                    val = bucket.get(r, 0) + sgn * co
                    if val:
                        bucket[r] = val
                    else:
                        bucket.pop(r, None)
            for (a, xj), w in per_gen.items():
                w = {k: v for k, v in w.items() if v}
                if w:
                    rhs.append(w)
                    rhs_keys.append((s, a, xj))

        if not tgt:
            if rhs:
                raise NonIntegralCoordinates(
                    f"nonzero image below the bottom degree of {shape} (f={f}, g={g})")
            continue
        try:
            sols = solve_int_columns(tgt_cols, rhs)
        except (SolveError, NonIntegralCoordinatesError) as exc:
            raise NonIntegralCoordinates(
                f"differential solve failed for {shape} (f={f}, g={g}) at degree {n}: {exc}"
            ) from exc

        ent: dict[tuple[int, int], LinearForm] = {}
        for (s, a, xj), sol in zip(rhs_keys, sols):
            for tprime, cval in sol.items():
                term = LinearForm.variable(a + 1, xj + 1, cval)
                cur = ent.get((tprime, s))
                ent[(tprime, s)] = term if cur is None else cur + term
        diffs[n] = SparseMatrix(len(tgt), len(src), ent, "linform")

    comps = {n: list(tabs) for n, tabs in tabs_by_deg.items()}
    cc = ChainComplex(comps, diffs, "linform")
    return SchurComplex(shape, f, g, order, comps, cc, alph)


def build_generic(shape: SkewShape, f: int, g: int, order: str = "yx") -> SchurComplex:
    """Construct the generic complex of a shape; results are cached."""
    if f < 0 or g < 0:
        raise ValueError("ranks must be nonnegative")
    return _build_cached(shape.lam, shape.mu, f, g, order)


def specialize(sc: SchurComplex, assignment: Sequence[Sequence[int]],
               prime: Optional[int] = None) -> ChainComplex:
    """Evaluate the generic differentials at a g x f numeric matrix."""
    if len(assignment) != sc.g or any(len(row) != sc.f for row in assignment):
        raise ValueError(f"assignment must be {sc.g} x {sc.f}")
    return sc.complex.specialize(assignment, prime)


# ---------------------------------------------------------------------------
# the epsilon map and the augmented complex


def _det_int(rows: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of a small integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass
class EpsilonMap:
    """Matrix of the Buchsbaum-Rim corner map in the wedge bases.

    Source basis: (f+1)-subsets I of the target-row index set, lex ordered;
    target basis: the dual basis of the target module.  Entry (i, I) is the
    sign of moving i past the rest of I times the f x f minor on rows I - i.
    """

    f: int
    g: int
    matrix: SparseMatrix  # g x C(g, f+1), integer
    source_subsets: tuple[tuple[int, ...], ...]

    def dual(self) -> SparseMatrix:
        """Matrix of the dualized map from the target module."""
        return self.matrix.transpose()


def epsilon_matrix(phi: SparseMatrix) -> EpsilonMap:
    """Signed f x f minors of a numeric g x f matrix placed on (f+1)-subsets;
    the identity on the target side when f = 0."""
    if phi.coeff != "int":
        raise ValueError("the corner map is computed for integer matrices")
    g, f = phi.nrows, phi.ncols
    if f >= g:
        raise ValueError(f"need f < g, got f={f}, g={g}")
    subsets = tuple(itertools.combinations(range(g), f + 1))
    dense = [[phi.entry(i, j) for j in range(f)] for i in range(g)]
    ent: dict[tuple[int, int], int] = {}
    for col, I in enumerate(subsets):
        for r, i in enumerate(I):
            rest = [I[k] for k in range(f + 1) if k != r]
            minor = _det_int([dense[k] for k in rest])
            sign = -1 if (f - r) % 2 else 1
            val = sign * minor
            if val:
                ent[(i, col)] = val
    return EpsilonMap(f, g, SparseMatrix(g, comb(g, f + 1), ent), subsets)


def build_tilde(shape: SkewShape, phi: SparseMatrix, order: str = "yx") -> ChainComplex:
    """The complex augmented by the functor applied to the dual corner map,
    with the original complex shifted up by one degree.

    Requires a numeric g x f matrix with f < g.  The composite of the two
    lowest differentials is asserted to vanish.
    """
    from .schur import schur_functor_matrix
    from .tableaux import default_alphabet as _alph, enumerate_standard as _enum

    g, f = phi.nrows, phi.ncols
    if f >= g:
        raise ValueError(f"need f < g, got f={f}, g={g}")
    eps = epsilon_matrix(phi)
    lmap = schur_functor_matrix(shape, eps.dual())

    sc = build_generic(shape, f, g, order)
    dense = [[phi.entry(i, j) for j in range(f)] for i in range(g)]
    numeric = sc.complex.specialize(dense, phi.prime)

    w = comb(g, f + 1)
    bottom = _enum(shape, _alph(0, w))
    comps: dict[int, list] = {0: list(bottom)}
    diffs: dict[int, SparseMatrix] = {}
    for n, labels in numeric.components.items():
        comps[n + 1] = list(labels)
    for n, d in numeric.differentials.items():
        diffs[n + 1] = d
    diffs[1] = lmap if phi.prime is None else lmap.mod(phi.prime)

    if 2 in diffs:
        prod = diffs[1].matmul(diffs[2])
        if phi.prime is not None:
            prod = prod.mod(phi.prime)
        if not prod.is_zero():
            raise AssertionError("the augmented complex failed d1 o d2 = 0")
    return ChainComplex(comps, diffs, numeric.coeff, numeric.prime)


def split_decomposition_check(shape: SkewShape, phi1_rank: int,
                              phi2: SparseMatrix) -> dict:
    """Compare homology of the complex at (identity + phi2) against the
    complex of phi2 alone; the two must agree in every degree."""
    from .verify import homology_dims

    if phi2.coeff != "int":
        raise ValueError("expected an integer matrix")
    r1 = phi1_rank
    g2, f2 = phi2.nrows, phi2.ncols
    f, g = r1 + f2, r1 + g2
    full = [[0] * f for _ in range(g)]
    for i in range(r1):
        full[i][i] = 1
    for (i, j), v in phi2.entries.items():
        full[r1 + i][r1 + j] = v

    sc_full = build_generic(shape, f, g)
    sc_red = build_generic(shape, f2, g2)
    dims_full = homology_dims(sc_full.complex.specialize(full))
    dense2 = [[phi2.entry(i, j) for j in range(f2)] for i in range(g2)]
    dims_red = homology_dims(sc_red.complex.specialize(dense2))
    n = max(len(dims_full), len(dims_red))
    pad = lambda xs: xs + [0] * (n - len(xs))
    return {
        "shape": str(shape),
        "phi1_rank": r1,
        "full": pad(dims_full),
        "reduced": pad(dims_red),
        "match": pad(dims_full) == pad(dims_red),
    }
