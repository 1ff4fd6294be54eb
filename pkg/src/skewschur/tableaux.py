"""Tableaux on skew shapes over a split alphabet X | Y.

The filling rules are "standard mod X": rows weakly increase and may repeat
only X-labels, columns weakly increase and may repeat only Y-labels.  With
X empty this is the strict-rows / weak-columns rule ("schur" convention);
with Y empty it is the weak-rows / strict-columns rule ("weyl").
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from .partitions import SkewShape, skew_cells


class UnknownLabelError(KeyError):
    """An entry is not part of the alphabet."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered alphabet split into fiber labels X and target labels Y.

    ``order`` lists every label of the disjoint union in increasing order.
    """

    x_labels: tuple[str, ...]
    y_labels: tuple[str, ...]
    order: tuple[str, ...]
    _rank: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if set(self.x_labels) & set(self.y_labels):
            raise ValueError("X and Y labels must be disjoint")
        if sorted(self.order) != sorted(self.x_labels + self.y_labels):
            raise ValueError("total order must be a permutation of X | Y")
        object.__setattr__(self, "_rank", {t: k for k, t in enumerate(self.order)})

    def rank(self, label: str) -> int:
        try:
            return self._rank[label]
        except KeyError:
            raise UnknownLabelError(label) from None

    def is_x(self, label: str) -> bool:
        self.rank(label)
        return label in self.x_labels


def default_alphabet(f: int, g: int, order: str = "yx") -> Alphabet:
    """Labels x1..xf and y1..yg; "yx" puts all of Y below X, "xy" the reverse."""
    xs = tuple(f"x{i}" for i in range(1, f + 1))
    ys = tuple(f"y{j}" for j in range(1, g + 1))
    if order == "yx":
        total = ys + xs
    elif order == "xy":
        total = xs + ys
    else:
        raise ValueError(f"unknown order {order!r}")
    return Alphabet(xs, ys, total)


@dataclass(frozen=True)
class Tableau:
    """A filling of the cells of a skew shape, stored in row-major cell order."""

    shape: SkewShape
    values: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.shape.size:
            raise ValueError("entry count does not match the number of cells")

    @property
    def entries(self) -> dict[tuple[int, int], str]:
        """Mapping cell -> label (cells 1-based)."""
        return dict(zip(skew_cells(self.shape), self.values))

    def rows(self) -> list[list[str]]:
        """Entries grouped by row, one list per nonempty row."""
        out: list[list[str]] = []
        for i in range(1, len(self.shape.lam) + 1):
            lo, hi = self.shape.row_span(i)
            if hi > lo:
                row = [self.entries[(i, j)] for j in range(lo + 1, hi + 1)]
                out.append(row)
        return out

    def count_x(self, alphabet: Alphabet) -> int:
        return sum(1 for v in self.values if alphabet.is_x(v))


def is_standard_mod_x(t: Tableau, a: Alphabet) -> bool:
    """Rows weakly increase with repeats only in X; columns weakly increase
    with repeats only in Y."""
    ent = t.entries
    for v in t.values:
        a.rank(v)  # raises UnknownLabelError on stray entries
    for (i, j), v in ent.items():
        left = ent.get((i, j - 1))
        if left is not None:
            if a.rank(v) < a.rank(left):
                return False
            if v == left and not a.is_x(v):
                return False
        up = ent.get((i - 1, j))
        if up is not None:
            if a.rank(v) < a.rank(up):
                return False
            if v == up and a.is_x(v):
                return False
    return True


def enumerate_standard(
    shape: SkewShape, a: Alphabet, degree_filter: Optional[int] = None
) -> list[Tableau]:
    """All standard-mod-X tableaux, in lexicographic order of the row-major
    entry sequence (by alphabet rank); optionally only those with exactly
    ``degree_filter`` X-entries.  The output order is part of the contract:
    downstream bases must be reproducible."""
    cells = skew_cells(shape)
    n = len(cells)
    cell_index = {c: k for k, c in enumerate(cells)}
    letters = list(a.order)
    out: list[Tableau] = []
    vals: list[str] = []

    def remaining_ok(k: int, nx: int) -> bool:
        if degree_filter is None:
            return True
        rest = n - k
        return nx <= degree_filter <= nx + rest

    def bt(k: int, nx: int) -> None:
        if k == n:
            if degree_filter is None or nx == degree_filter:
                out.append(Tableau(shape, tuple(vals)))
            return
        i, j = cells[k]
        li = cell_index.get((i, j - 1))
        ui = cell_index.get((i - 1, j))
        for t in letters:
            if li is not None:
                prev = vals[li]
                if a.rank(t) < a.rank(prev) or (t == prev and not a.is_x(t)):
                    continue
            if ui is not None:
                up = vals[ui]
                if a.rank(t) < a.rank(up) or (t == up and a.is_x(t)):
                    continue
            nx2 = nx + (1 if a.is_x(t) else 0)
            if not remaining_ok(k + 1, nx2):
                continue
            vals.append(t)
            bt(k + 1, nx2)
            vals.pop()

    bt(0, 0)
    return out


@lru_cache(maxsize=None)
def _count_cached(lam, mu, m: int, convention: str) -> int:
    shape = SkewShape(lam, mu)
    if convention == "schur":
        a = default_alphabet(0, m)
    elif convention == "weyl":
        a = default_alphabet(m, 0)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return len(enumerate_standard(shape, a))


def count_semistandard(shape: SkewShape, m: int, convention: str = "schur") -> int:
    """Number of fillings over m letters: rows strict / columns weak for
    "schur" (the dimension of the corresponding functor applied to a rank-m
    free module), rows weak / columns strict for "weyl"."""
    if m < 0:
        raise ValueError("alphabet size must be nonnegative")
    return _count_cached(shape.lam, shape.mu, m, convention)
