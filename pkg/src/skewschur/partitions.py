"""Partition and skew-shape arithmetic.

Partitions are normalized tuples of weakly decreasing positive integers
(trailing zeros stripped).  Row/column indices are 1-based in the public
API, matching the usual combinatorial conventions; internal helpers that
need 0-based indexing convert at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional


Partition = tuple[int, ...]


class EmptyShapeError(ValueError):
    """Raised by operations that are undefined for the shape with no cells."""


def partition(parts: Iterable[int]) -> Partition:
    """Normalize an iterable into a partition tuple; reject invalid input."""
    p = tuple(int(x) for x in parts)
    if any(x < 0 for x in p):
        raise ValueError(f"negative part in {p!r}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"parts not weakly decreasing: {p!r}")
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def weight(p: Partition) -> int:
    return sum(p)


def part(p: Partition, i: int) -> int:
    """The i-th part (1-based), zero beyond the length."""
    return p[i - 1] if 1 <= i <= len(p) else 0


def conjugate(p: Partition) -> Partition:
    """Transpose of the diagram: entry i counts the parts that are >= i."""
    p = partition(p)
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= i) for i in range(1, p[0] + 1))


def contains(lam: Partition, mu: Partition) -> bool:
    """Whether mu fits inside lam componentwise."""
    return all(part(mu, i) <= part(lam, i) for i in range(1, len(mu) + 1))


@dataclass(frozen=True)
class SkewShape:
    """A containment pair of partitions lam/mu; cells are lam's diagram minus mu's."""

    lam: Partition
    mu: Partition = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", partition(self.lam))
        object.__setattr__(self, "mu", partition(self.mu))
        if not contains(self.lam, self.mu):
            raise ValueError(f"containment violated: {self.mu} is not inside {self.lam}")

    def __str__(self) -> str:
        lam = ",".join(map(str, self.lam)) if self.lam else "0"
        if not self.mu:
            return lam
        return lam + "/" + ",".join(map(str, self.mu))

    @property
    def size(self) -> int:
        """Number of cells."""
        return weight(self.lam) - weight(self.mu)

    @property
    def is_empty(self) -> bool:
        return self.lam == self.mu

    def conjugate(self) -> "SkewShape":
        return SkewShape(conjugate(self.lam), conjugate(self.mu))

    def row_span(self, i: int) -> tuple[int, int]:
        """Columns (mu_i, lam_i] occupied in row i, 1-based; empty when equal."""
        return part(self.mu, i), part(self.lam, i)


def parse_shape(text: str) -> SkewShape:
    """Parse the "4,3,2/3,1" syntax; straight shapes omit the "/mu" suffix."""
    text = text.strip()
    if not text:
        raise ValueError("empty shape string")
    lam_txt, _, mu_txt = text.partition("/")

    def parse_parts(t: str) -> Partition:
        t = t.strip()
        if t in ("", "0"):
            return ()
        try:
            return partition(int(x) for x in t.split(","))
        except ValueError as exc:
            raise ValueError(f"bad shape string {text!r}: {exc}") from exc

    return SkewShape(parse_parts(lam_txt), parse_parts(mu_txt))


def skew_cells(shape: SkewShape) -> tuple[tuple[int, int], ...]:
    """All cells (row, col), 1-based, in row-major order."""
    out = []
    for i in range(1, len(shape.lam) + 1):
        lo, hi = shape.row_span(i)
        out.extend((i, j) for j in range(lo + 1, hi + 1))
    return tuple(out)


def width_height(shape: SkewShape) -> tuple[int, int]:
    """Largest row length and largest column length; (0, 0) for the empty shape."""
    if shape.is_empty:
        return 0, 0
    w = max(part(shape.lam, i) - part(shape.mu, i) for i in range(1, len(shape.lam) + 1))
    lt, mt = conjugate(shape.lam), conjugate(shape.mu)
    h = max(part(lt, j) - part(mt, j) for j in range(1, len(lt) + 1))
    return w, h


@dataclass(frozen=True)
class NuBounds:
    """The inner/outer interpolating partitions at a given level n."""

    nu_prime: Partition
    nu_double_prime: Partition
    n: int


def nu_bounds(shape: SkewShape, n: int) -> NuBounds:
    """Componentwise bounds: nu''_i = min(lam_i, mu_i + max(n, 0)) and the
    conjugate rule conj(nu')_i = max(conj(mu)_i, conj(lam)_i - max(n, 0))."""
    m = max(n, 0)
    npp = partition(
        min(part(shape.lam, i), part(shape.mu, i) + m) for i in range(1, len(shape.lam) + 1)
    )
    lt, mt = conjugate(shape.lam), conjugate(shape.mu)
    np_conj = partition(max(part(mt, j), part(lt, j) - m) for j in range(1, len(lt) + 1))
    return NuBounds(conjugate(np_conj), npp, n)


def kl_sequences(shape: SkewShape) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """First differences of |nu''| and |nu'| along n = 1..W resp. 1..H."""
    w, h = width_height(shape)
    k = tuple(
        weight(nu_bounds(shape, n).nu_double_prime)
        - weight(nu_bounds(shape, n - 1).nu_double_prime)
        for n in range(1, w + 1)
    )
    l = tuple(
        weight(nu_bounds(shape, n - 1).nu_prime) - weight(nu_bounds(shape, n).nu_prime)
        for n in range(1, h + 1)
    )
    return k, l


def threshold(shape: SkewShape, f: int, g: int) -> int:
    """Largest t with nu'(f - t) contained in nu''(g - t).

    Containment is monotone in t (holds for very negative t, fails for large
    t), so a linear scan over the bracketing range suffices at desk scale.
    """
    if shape.is_empty:
        raise EmptyShapeError("threshold is undefined (infinite) for an empty shape")
    w, h = width_height(shape)
    lo = min(f - h, g - w) - 1
    hi = max(f, g) + w + h + 1
    best: Optional[int] = None
    for t in range(lo, hi + 1):
        if contains(nu_bounds(shape, g - t).nu_double_prime, nu_bounds(shape, f - t).nu_prime):
            best = t
    if best is None:
        # lower end of the bracket always satisfies containment
        raise AssertionError("threshold bracket failed to contain the maximum")
    return best


@dataclass(frozen=True)
class ShiftData:
    """Witness that a skew shape is a translate of a straight shape."""

    s_offset: int
    t_offset: int
    gamma: Partition


def detect_shift(shape: SkewShape) -> Optional[ShiftData]:
    """Recognize lam/mu as gamma translated s rows down and t columns right.

    The rows where lam and mu differ must be consecutive and share the same
    mu value t; stripping t from those rows must leave a partition gamma.
    Returns None when no such data exists.
    """
    if shape.is_empty:
        raise EmptyShapeError("the empty shape is not a shift of any partition")
    rows = [i for i in range(1, len(shape.lam) + 1) if part(shape.lam, i) > part(shape.mu, i)]
    if rows != list(range(rows[0], rows[0] + len(rows))):
        return None
    s = rows[0] - 1
    t = part(shape.mu, rows[0])
    if any(part(shape.mu, i) != t for i in rows):
        return None
    gamma = tuple(part(shape.lam, i) - t for i in rows)
    if any(gamma[i] < gamma[i + 1] for i in range(len(gamma) - 1)):
        return None
    return ShiftData(s, t, partition(gamma))


# ---------------------------------------------------------------------------
# enumeration helpers for sweeps


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: Optional[int] = None) -> tuple[Partition, ...]:
    """All partitions of n with parts bounded by max_part, decreasing lex order."""
    if n == 0:
        return ((),)
    bound = n if max_part is None else min(n, max_part)
    out: list[Partition] = []
    for head in range(bound, 0, -1):
        for tail in partitions_of(n - head, head):
            out.append((head,) + tail)
    return tuple(out)


def partitions_up_to(max_weight: int) -> Iterator[Partition]:
    for n in range(max_weight + 1):
        yield from partitions_of(n)


def subpartitions(lam: Partition) -> Iterator[Partition]:
    """All mu contained in lam."""
    yield from partitions_between((), lam)


def partitions_between(mu: Partition, lam: Partition) -> Iterator[Partition]:
    """All gamma with mu <= gamma <= lam componentwise (gamma a partition)."""
    if not contains(lam, mu):
        return
    rows = len(lam)

    def rec(i: int, prev: int, acc: list[int]) -> Iterator[Partition]:
        if i > rows:
            yield partition(acc)
            return
        lo, hi = part(mu, i), min(part(lam, i), prev)
        for v in range(hi, lo - 1, -1):
            acc.append(v)
            yield from rec(i + 1, v, acc)
            acc.pop()

    yield from rec(1, lam[0] if lam else 0, [])


def skew_shapes_up_to(max_weight: int, proper: bool = False) -> Iterator[SkewShape]:
    """All shapes lam/mu with |lam| <= max_weight; proper restricts to mu != lam."""
    for lam in partitions_up_to(max_weight):
        for mu in subpartitions(lam):
            if proper and mu == lam:
                continue
            yield SkewShape(lam, mu)
