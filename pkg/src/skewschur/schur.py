"""Row-to-column maps for a single free module and module presentations.

The map of a shape on a rank-m free module goes from the tensor of row
exterior powers to the tensor of column symmetric powers; its image has the
standard tableau basis (rows strict, columns weak).  The dual construction
swaps divided powers in rows against exterior powers in columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ._elim import rank_int, solve_int_columns
from ._hybrid import HybridScheme
from .multilinear import SparseMatrix
from .partitions import SkewShape
from .tableaux import Tableau, count_semistandard, default_alphabet, enumerate_standard


@dataclass
class SchurMap:
    """Integer matrix of the row-to-column composition in canonical monomial
    bases, together with the labels of both sides."""

    shape: SkewShape
    rank: int
    convention: str  # schur | weyl
    matrix: SparseMatrix
    source_labels: list
    target_labels: list

    def image_rank(self) -> int:
        ent = [(r, c, v) for (r, c), v in self.matrix.entries.items()]
        return rank_int(ent, self.matrix.nrows, self.matrix.ncols)

    def expected_rank(self) -> int:
        return count_semistandard(self.shape, self.rank, self.convention)


def d_map_matrix(shape: SkewShape, m: int) -> SchurMap:
    """Exterior-rows to symmetric-columns map on a rank-m free module."""
    sch = HybridScheme(shape, 0, m)
    src = sch.a_basis(0)
    tgt = sch.b_basis(0)
    tgt_index = {lab: r for r, lab in enumerate(tgt)}
    ent: dict[tuple[int, int], int] = {}
    for c, lab in enumerate(src):
        for blab, v in sch.image_column(lab).items():
            ent[(tgt_index[blab], c)] = v
    return SchurMap(shape, m, "schur", SparseMatrix(len(tgt), len(src), ent), src, tgt)


def weyl_d_map_matrix(shape: SkewShape, m: int) -> SchurMap:
    """Divided-rows to exterior-columns map on a rank-m free module."""
    sch = HybridScheme(shape, m, 0)
    deg = shape.size
    src = sch.a_basis(deg)
    tgt = sch.b_basis(deg)
    tgt_index = {lab: r for r, lab in enumerate(tgt)}
    ent: dict[tuple[int, int], int] = {}
    for c, lab in enumerate(src):
        for blab, v in sch.image_column(lab).items():
            ent[(tgt_index[blab], c)] = v
    return SchurMap(shape, m, "weyl", SparseMatrix(len(tgt), len(src), ent), src, tgt)


def _standard_image_vectors(shape: SkewShape, m: int
                            ) -> tuple[list[Tableau], list[dict], HybridScheme]:
    """Standard-basis image vectors of the rank-m functor, as sparse dicts."""
    sch = HybridScheme(shape, 0, m)
    alph = default_alphabet(0, m)
    tabs = enumerate_standard(shape, alph)
    vecs = [sch.image_column(sch.tableau_row_labels(t, alph)) for t in tabs]
    return tabs, vecs, sch


def _sym_image_of_monomial(ms: tuple[int, ...], cols: dict[int, list[tuple[int, int]]]
                           ) -> dict[tuple[int, ...], int]:
    """Push a symmetric monomial through a linear map given by its columns."""
    acc: dict[tuple[int, ...], int] = {(): 1}
    for y in ms:
        new: dict[tuple[int, ...], int] = {}
        for mono, co in acc.items():
            for k, val in cols.get(y, ()):  # image of basis vector y
                mono2 = tuple(sorted(mono + (k,)))
                new[mono2] = new.get(mono2, 0) + co * val
        acc = new
    return acc


def schur_functor_matrix(shape: SkewShape, psi: SparseMatrix) -> SparseMatrix:
    """Matrix of the functor applied to a numeric map, in standard bases.

    ``psi`` is a w x v integer matrix; the result maps the rank-v standard
    basis to the rank-w one.  Integer inputs must produce integer output;
    non-integral coordinates indicate a bug and raise.
    """
    if psi.coeff != "int":
        raise ValueError("functorial images are computed for integer matrices")
    v, w = psi.ncols, psi.nrows
    src_tabs, src_vecs, _ = _standard_image_vectors(shape, v)
    tgt_tabs, tgt_vecs, _ = _standard_image_vectors(shape, w)

    psi_cols: dict[int, list[tuple[int, int]]] = {}
    for (r, c), val in psi.entries.items():
        psi_cols.setdefault(c, []).append((r, val))

    mono_cache: dict[tuple[int, ...], dict[tuple[int, ...], int]] = {}

    def sym_image(ms: tuple[int, ...]) -> dict[tuple[int, ...], int]:
        if ms not in mono_cache:
            mono_cache[ms] = _sym_image_of_monomial(ms, psi_cols)
        return mono_cache[ms]

    # row ids shared between target basis vectors and pushed source vectors
    row_ids: dict = {}

    def rid(lab) -> int:
        if lab not in row_ids:
            row_ids[lab] = len(row_ids)
        return row_ids[lab]

    tgt_cols = [{rid(lab): val for lab, val in vec.items()} for vec in tgt_vecs]

    rhs = []
    for vec in src_vecs:
        pushed: dict[int, int] = {}
        for blab, co in vec.items():
            # push each column monomial through psi and expand the product
            parts = [sym_image(ms) for (_, ms) in blab]
            items: list[tuple[tuple, int]] = [((), co)]
            for p in parts:
                items = [(acc + (mono,), cv * pv)
                         for acc, cv in items for mono, pv in p.items()]
            for monos, val in items:
                lab2 = tuple(((), mono) for mono in monos)
                r = rid(lab2)
                pushed[r] = pushed.get(r, 0) + val
        rhs.append({k: x for k, x in pushed.items() if x})

    sols = solve_int_columns(tgt_cols, rhs)
    ent: dict[tuple[int, int], int] = {}
    for c, sol in enumerate(sols):
        for r, val in sol.items():
            ent[(r, c)] = val
    return SparseMatrix(len(tgt_tabs), len(src_tabs), ent)


@dataclass
class ModulePresentation:
    """Generators and relations of a finitely presented module."""

    generators: int
    relations: SparseMatrix

    def __post_init__(self) -> None:
        if self.relations.nrows != self.generators:
            raise ValueError("relation matrix must have one row per generator")

    def to_json(self) -> dict:
        return {"generators": self.generators, "relations": self.relations.to_json()}


def schur_module_presentation(shape: SkewShape, phi: Optional[SparseMatrix],
                              f: Optional[int] = None,
                              g: Optional[int] = None) -> ModulePresentation:
    """Presentation of the functor applied to coker(phi).

    Generators are the degree-0 standard tableaux; the relation matrix is
    the first differential of the complex, either generic (``phi=None``,
    linform entries) or specialized at the given numeric matrix.
    """
    from .schur_complex import build_generic  # local import to avoid a cycle

    if phi is not None:
        g, f = phi.nrows, phi.ncols
    if f is None or g is None:
        raise ValueError("either a matrix or explicit ranks are required")
    sc = build_generic(shape, f, g)
    if shape.is_empty:
        return ModulePresentation(1, SparseMatrix.zeros(1, 0))
    gens = sc.complex.rank(0)
    d1 = sc.complex.differential(1)
    if phi is not None:
        dense = [[phi.entry(i, j) for j in range(f)] for i in range(g)]
        d1 = d1.evaluate(dense, phi.prime)
    return ModulePresentation(gens, d1)
