"""Monomial bases, exact sparse matrices, and the hybrid complexes of a map.

Coefficient kinds for matrices and complexes:
  "int"      arbitrary-precision integers
  "linform"  integer linear combinations of the generic entries u_ij
  "gfp"      residues modulo a prime (the matrix carries the prime)

The generic map phi: F -> G has matrix (u_ij) with 1 <= i <= g (rows, G side)
and 1 <= j <= f (columns, F side).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union


# ---------------------------------------------------------------------------
# linear forms in the generic entries


class LinearForm:
    """An integer linear combination of the map indeterminates u_ij.

    Immutable after construction; zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict[tuple[int, int], int]] = None):
        c = {k: int(v) for k, v in (coeffs or {}).items() if v}
        for (i, j) in c:
            if i < 1 or j < 1:
                raise ValueError("u-indices are 1-based")
        self.coeffs = c

    @classmethod
    def variable(cls, i: int, j: int, c: int = 1) -> "LinearForm":
        return cls({(i, j): c})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LinearForm(out)

    def __neg__(self) -> "LinearForm":
        return LinearForm({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scaled(self, c: int) -> "LinearForm":
        return LinearForm({k: c * v for k, v in self.coeffs.items()})

    def evaluate(self, assignment: Sequence[Sequence[int]], prime: Optional[int] = None) -> int:
        """Substitute a g x f matrix for the u_ij."""
        total = 0
        for (i, j), c in self.coeffs.items():
            total += c * assignment[i - 1][j - 1]
        return total % prime if prime else total

    def to_json(self) -> list[list[int]]:
        return [[i, j, c] for (i, j), c in sorted(self.coeffs.items())]

    @classmethod
    def from_json(cls, data: Iterable[Sequence[int]]) -> "LinearForm":
        return cls({(int(i), int(j)): int(c) for i, j, c in data})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for (i, j), c in sorted(self.coeffs.items()):
            head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            terms.append(f"{head}u[{i},{j}]")
        return " + ".join(terms).replace("+ -", "- ")


Coeff = Union[int, LinearForm]


def _coeff_to_json(kind: str, v: Coeff):
    return v.to_json() if kind == "linform" else int(v)


def _coeff_from_json(kind: str, data) -> Coeff:
    return LinearForm.from_json(data) if kind == "linform" else int(data)


# ---------------------------------------------------------------------------
# sparse matrices


@dataclass
class SparseMatrix:
    """Sparse matrix with exact entries, stored as a (row, col) -> value map."""

    nrows: int
    ncols: int
    entries: dict[tuple[int, int], Coeff] = field(default_factory=dict)
    coeff: str = "int"
    prime: Optional[int] = None

    def __post_init__(self) -> None:
        if self.coeff not in ("int", "linform", "gfp"):
            raise ValueError(f"unknown coefficient kind {self.coeff!r}")
        if self.coeff == "gfp":
            if not self.prime:
                raise ValueError("gfp matrices need a prime")
            self.entries = {k: v % self.prime for k, v in self.entries.items() if v % self.prime}
        else:
            self.entries = {k: v for k, v in self.entries.items() if v}

    @classmethod
    def zeros(cls, nrows: int, ncols: int, coeff: str = "int", prime: Optional[int] = None):
        return cls(nrows, ncols, {}, coeff, prime)

    @classmethod
    def identity(cls, n: int, coeff: str = "int", prime: Optional[int] = None):
        one: Coeff = 1
        return cls(n, n, {(i, i): one for i in range(n)}, coeff, prime)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], coeff: str = "int",
                   prime: Optional[int] = None) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        ent = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                if v:
                    ent[(r, c)] = v
        return cls(nrows, ncols, ent, coeff, prime)

    def to_dense(self) -> list[list[Coeff]]:
        zero: Coeff = LinearForm() if self.coeff == "linform" else 0
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def entry(self, r: int, c: int) -> Coeff:
        if self.coeff == "linform":
            return self.entries.get((r, c), LinearForm())
        return self.entries.get((r, c), 0)

    def columns(self) -> dict[int, dict[int, Coeff]]:
        cols: dict[int, dict[int, Coeff]] = {}
        for (r, c), v in self.entries.items():
            cols.setdefault(c, {})[r] = v
        return cols

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(
            self.ncols, self.nrows, {(c, r): v for (r, c), v in self.entries.items()},
            self.coeff, self.prime,
        )

    def scaled(self, c: int) -> "SparseMatrix":
        if self.coeff == "linform":
            ent = {k: v.scaled(c) for k, v in self.entries.items()}
        else:
            ent = {k: c * v for k, v in self.entries.items()}
        return SparseMatrix(self.nrows, self.ncols, ent, self.coeff, self.prime)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape or self.coeff != other.coeff or self.prime != other.prime:
            raise ValueError("shape/coefficient mismatch")
        ent = dict(self.entries)
        for k, v in other.entries.items():
            cur = ent.get(k)
            ent[k] = v if cur is None else cur + v
        return SparseMatrix(self.nrows, self.ncols, ent, self.coeff, self.prime)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scaled(-1)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        """Exact product; at most one factor may have linform entries."""
        if self.ncols != other.nrows:
            raise ValueError("inner dimension mismatch")
        if self.coeff == "linform" and other.coeff == "linform":
            raise ValueError("product of two linform matrices is not linear")
        kind = "linform" if "linform" in (self.coeff, other.coeff) else self.coeff
        prime = self.prime or other.prime
        other_rows: dict[int, list[tuple[int, Coeff]]] = {}
        for (r, c), v in other.entries.items():
            other_rows.setdefault(r, []).append((c, v))
        acc: dict[tuple[int, int], Coeff] = {}
        for (r, k), v in self.entries.items():
            for c, w in other_rows.get(k, ()):  # v*w with at most one linform
                if isinstance(v, LinearForm):
                    term: Coeff = v.scaled(w)  # type: ignore[arg-type]
                elif isinstance(w, LinearForm):
                    term = w.scaled(v)
                else:
                    term = v * w
                cur = acc.get((r, c))
                acc[(r, c)] = term if cur is None else cur + term
        return SparseMatrix(self.nrows, other.ncols, acc, kind, prime)

    def evaluate(self, assignment: Sequence[Sequence[int]],
                 prime: Optional[int] = None) -> "SparseMatrix":
        """Substitute numbers for the u_ij; int matrices just change ring."""
        ent: dict[tuple[int, int], Coeff] = {}
        for k, v in self.entries.items():
            val = v.evaluate(assignment, prime) if isinstance(v, LinearForm) else (
                v % prime if prime else v)
            if val:
                ent[k] = val
        return SparseMatrix(self.nrows, self.ncols, ent,
                            "gfp" if prime else "int", prime)

    def mod(self, prime: int) -> "SparseMatrix":
        if self.coeff == "linform":
            raise ValueError("cannot reduce a linform matrix; evaluate it first")
        return SparseMatrix(self.nrows, self.ncols, dict(self.entries), "gfp", prime)

    def to_json(self) -> dict:
        data = {
            "rows": self.nrows,
            "cols": self.ncols,
            "coeff": self.coeff,
            "entries": [[r, c, _coeff_to_json(self.coeff, v)]
                        for (r, c), v in sorted(self.entries.items())],
        }
        if self.coeff == "gfp":
            data["prime"] = self.prime
        return data

    @classmethod
    def from_json(cls, data: dict) -> "SparseMatrix":
        kind = data["coeff"]
        ent = {(int(r), int(c)): _coeff_from_json(kind, v) for r, c, v in data["entries"]}
        return cls(int(data["rows"]), int(data["cols"]), ent, kind, data.get("prime"))


# ---------------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """Graded components with labeled bases and differentials d_n: C_n -> C_{n-1}.

    Only nonzero components are stored.  Complexes are zero in negative
    degrees by convention.
    """

    components: dict[int, list]
    differentials: dict[int, SparseMatrix]
    coeff: str = "int"
    prime: Optional[int] = None

    def rank(self, n: int) -> int:
        return len(self.components.get(n, ()))

    def degrees(self) -> list[int]:
        return sorted(d for d, labels in self.components.items() if labels)

    @property
    def is_zero(self) -> bool:
        return not self.degrees()

    def start(self) -> Optional[int]:
        ds = self.degrees()
        return ds[0] if ds else None

    def finish(self) -> Optional[int]:
        ds = self.degrees()
        return ds[-1] if ds else None

    def differential(self, n: int) -> SparseMatrix:
        d = self.differentials.get(n)
        if d is None:
            return SparseMatrix.zeros(self.rank(n - 1), self.rank(n), self.coeff, self.prime)
        return d

    def ranks(self) -> list[int]:
        """Component ranks from degree 0 through the top degree."""
        top = self.finish()
        if top is None:
            return []
        return [self.rank(n) for n in range(0, top + 1)]

    def specialize(self, assignment: Sequence[Sequence[int]],
                   prime: Optional[int] = None) -> "ChainComplex":
        """Evaluate every differential at a numeric matrix for the u_ij."""
        diffs = {n: d.evaluate(assignment, prime) for n, d in self.differentials.items()}
        return ChainComplex(dict(self.components), diffs,
                            "gfp" if prime else "int", prime)

    def dd_is_zero(self) -> bool:
        """Exact check of d_{n} o d_{n+1} = 0 for numeric coefficients."""
        if self.coeff == "linform":
            raise ValueError("check linform complexes on numeric substitutions")
        for n in self.degrees():
            prod = self.differential(n).matmul(self.differential(n + 1))
            if self.coeff == "gfp":
                prod = prod.mod(self.prime)  # type: ignore[arg-type]
            if not prod.is_zero():
                return False
        return True


# ---------------------------------------------------------------------------
# monomial bases


@dataclass(frozen=True)
class MonomialBasis:
    """Canonical index tuples for one graded piece of a classical algebra.

    Exterior bases are strictly increasing index tuples, symmetric and
    divided bases weakly increasing ones, both in lexicographic order.
    """

    kind: str  # exterior | symmetric | divided
    source: str  # F | G
    degree: int
    rank: int
    index_list: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.kind not in ("exterior", "symmetric", "divided"):
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        object.__setattr__(self, "index_list", _monomials(self.kind, self.rank, self.degree))

    def __len__(self) -> int:
        return len(self.index_list)


def _monomials(kind: str, m: int, k: int) -> tuple[tuple[int, ...], ...]:
    if k < 0:
        return ()
    if kind == "exterior":
        return tuple(itertools.combinations(range(m), k))
    return tuple(itertools.combinations_with_replacement(range(m), k))


def exterior_basis(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    return _monomials("exterior", m, k)


def weak_basis(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    return _monomials("symmetric", m, k)


def _shuffle_sign(a: Sequence[int], b: Sequence[int]) -> int:
    inv = sum(1 for x in a for y in b if x > y)
    return -1 if inv % 2 else 1


def structure_map(kind: str, algebra: str, m: int, a: int, b: int) -> SparseMatrix:
    """Integer matrix of a diagonal or multiplication in canonical bases.

    diagonal:        degree a+b  ->  degree a (x) degree b
    multiplication:  degree a (x) degree b  ->  degree a+b

    Tensor bases are ordered lexicographically by (left index, right index).
    """
    if kind not in ("diagonal", "multiplication"):
        raise ValueError(f"unknown structure map {kind!r}")
    left = _monomials(algebra, m, a)
    right = _monomials(algebra, m, b)
    total = _monomials(algebra, m, a + b)
    left_i = {t: i for i, t in enumerate(left)}
    right_i = {t: i for i, t in enumerate(right)}
    total_i = {t: i for i, t in enumerate(total)}
    pair_index = lambda ta, tb: left_i[ta] * len(right) + right_i[tb]

    ent: dict[tuple[int, int], int] = {}

    def add(r: int, c: int, v: int) -> None:
        if v:
            ent[(r, c)] = ent.get((r, c), 0) + v

    if algebra == "exterior":
        for t in total:
            for asel in itertools.combinations(range(len(t)), a):
                ta = tuple(t[i] for i in asel)
                tb = tuple(t[i] for i in range(len(t)) if i not in asel)
                sgn = _shuffle_sign(ta, tb)
                if kind == "diagonal":
                    add(pair_index(ta, tb), total_i[t], sgn)
                else:
                    add(total_i[t], pair_index(ta, tb), sgn)
    else:
        for ta in left:
            for tb in right:
                t = tuple(sorted(ta + tb))
                if algebra == "symmetric":
                    mult_coeff = 1
                    diag_coeff = _split_multiplicity(t, ta)
                else:  # divided
                    mult_coeff = _split_multiplicity(t, ta)
                    diag_coeff = 1
                if kind == "diagonal":
                    add(pair_index(ta, tb), total_i[t], diag_coeff)
                else:
                    add(total_i[t], pair_index(ta, tb), mult_coeff)

    if kind == "diagonal":
        return SparseMatrix(len(left) * len(right), len(total), ent)
    return SparseMatrix(len(total), len(left) * len(right), ent)


def _split_multiplicity(total: tuple[int, ...], part: tuple[int, ...]) -> int:
    """Product over letters of C(multiplicity in total, multiplicity in part)."""
    out = 1
    for x in set(total):
        out *= comb(total.count(x), part.count(x))
    return out


# ---------------------------------------------------------------------------
# the two hybrid strands of a map phi: F -> G

# Basis labels:
#   Koszul strand S_t(phi), degree n:   (I, ms)  I strict x-tuple, ms weak y-tuple
#   hybrid power  W_t(phi), degree i:   (al, J)  al weak x-tuple,  J strict y-tuple
# Indices are 0-based inside labels; the u_ij of LinearForms are 1-based.


def koszul_strand(t: int, f: int, g: int) -> ChainComplex:
    """The degree-t strand with components (strict x-part) x (weak y-part);
    its differential contracts one x into phi(x) = sum_i u_ij y_i."""
    if t < 0:
        raise ValueError("degree must be nonnegative")
    comps: dict[int, list] = {}
    for n in range(0, min(f, t) + 1):
        labels = [(I, ms) for I in exterior_basis(f, n) for ms in weak_basis(g, t - n)]
        if labels:
            comps[n] = labels
    diffs: dict[int, SparseMatrix] = {}
    for n in sorted(comps):
        if n - 1 not in comps:
            continue
        tgt = {lab: r for r, lab in enumerate(comps[n - 1])}
        ent: dict[tuple[int, int], LinearForm] = {}
        for c, (I, ms) in enumerate(comps[n]):
            for pos, j in enumerate(I):
                sgn = -1 if pos % 2 else 1
                I2 = I[:pos] + I[pos + 1:]
                for i in range(g):
                    ms2 = tuple(sorted(ms + (i,)))
                    r = tgt[(I2, ms2)]
                    term = LinearForm.variable(i + 1, j + 1, sgn)
                    cur = ent.get((r, c))
                    ent[(r, c)] = term if cur is None else cur + term
        diffs[n] = SparseMatrix(len(comps[n - 1]), len(comps[n]), ent, "linform")
    return ChainComplex(comps, diffs, "linform")


def lebelt_complex(t: int, f: int, g: int) -> ChainComplex:
    """The degree-t hybrid power with components (weak x-part) x (strict y-part);
    its differential replaces one x by phi(x) wedged on the left of the y-part."""
    if t < 0:
        raise ValueError("degree must be nonnegative")
    comps: dict[int, list] = {}
    for i in range(max(0, t - g), t + 1):
        labels = [(al, J) for al in weak_basis(f, i) for J in exterior_basis(g, t - i)]
        if labels:
            comps[i] = labels
    diffs: dict[int, SparseMatrix] = {}
    for n in sorted(comps):
        if n - 1 not in comps:
            continue
        tgt = {lab: r for r, lab in enumerate(comps[n - 1])}
        ent: dict[tuple[int, int], LinearForm] = {}
        for c, (al, J) in enumerate(comps[n]):
            for j in sorted(set(al)):
                al2 = list(al)
                al2.remove(j)
                al2 = tuple(al2)
                for i in range(g):
                    if i in J:
                        continue
                    sgn = -1 if sum(1 for b in J if b < i) % 2 else 1
                    J2 = tuple(sorted(J + (i,)))
                    r = tgt[(al2, J2)]
                    term = LinearForm.variable(i + 1, j + 1, sgn)
                    cur = ent.get((r, c))
                    ent[(r, c)] = term if cur is None else cur + term
        diffs[n] = SparseMatrix(len(comps[n - 1]), len(comps[n]), ent, "linform")
    return ChainComplex(comps, diffs, "linform")


def tensor_complexes(factors: Sequence[ChainComplex]) -> ChainComplex:
    """Graded tensor product with the Koszul sign rule.

    Component labels are tuples of (degree, factor label) pairs; degree
    compositions are enumerated lexicographically and the factor bases in
    their own order, which fixes the basis order deterministically.
    """
    if not factors:
        unit = ChainComplex({0: [()]}, {}, "int")
        return unit
    kinds = {c.coeff for c in factors}
    if "gfp" in kinds and len(kinds) > 1:
        raise ValueError("cannot mix gfp with other coefficient kinds")
    kind = "linform" if "linform" in kinds else factors[0].coeff
    prime = next((c.prime for c in factors if c.prime), None)

    per_factor_degrees = [c.degrees() for c in factors]
    if any(not ds for ds in per_factor_degrees):
        return ChainComplex({}, {}, kind, prime)

    comps: dict[int, list] = {}
    index: dict[int, dict] = {}
    for combo in itertools.product(*per_factor_degrees):
        n = sum(combo)
        for labs in itertools.product(*(factors[i].components[d] for i, d in enumerate(combo))):
            lab = tuple(zip(combo, labs))
            comps.setdefault(n, []).append(lab)
            index.setdefault(n, {})[lab] = len(comps[n]) - 1

    factor_cols: list[dict[int, dict]] = []
    for c in factors:
        cols: dict[int, dict] = {}
        for d, mat in c.differentials.items():
            src = c.components[d]
            tgt = c.components.get(d - 1, [])
            by_col: dict = {}
            for (r, co), v in mat.entries.items():
                by_col.setdefault(co, []).append((r, v))
            cols[d] = {src[co]: [(tgt[r], v) for r, v in lst] for co, lst in by_col.items()}
        factor_cols.append(cols)

    diffs: dict[int, SparseMatrix] = {}
    for n, labels in sorted(comps.items()):
        if n - 1 not in comps:
            continue
        tgt_index = index[n - 1]
        ent: dict[tuple[int, int], Coeff] = {}
        for c_idx, lab in enumerate(labels):
            presign = 1
            for pos, (d, flab) in enumerate(lab):
                moves = factor_cols[pos].get(d, {}).get(flab)
                if moves:
                    for tlab, v in moves:
                        new = lab[:pos] + ((d - 1, tlab),) + lab[pos + 1:]
                        r = tgt_index[new]
                        term = v.scaled(presign) if isinstance(v, LinearForm) else presign * v
                        cur = ent.get((r, c_idx))
                        ent[(r, c_idx)] = term if cur is None else cur + term
                if d % 2:
                    presign = -presign
        diffs[n] = SparseMatrix(len(comps[n - 1]), len(labels), ent, kind, prime)
    return ChainComplex(comps, diffs, kind, prime)
