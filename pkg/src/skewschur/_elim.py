"""Exact and modular elimination kernels.

Integer ranks are certified by agreement of two large prime reductions
(a modular rank can only undercount, so agreement at two primes is the
working criterion; equality with a combinatorial upper bound is exact).
Linear solves run modulo one prime, are lifted to the symmetric range,
and are then certified by an exact integer re-multiplication, falling
back to rational elimination when the certificate fails.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

DEFAULT_PRIME = 2**31 - 1
SECOND_PRIME = 2**31 - 19
BACKUP_PRIMES = (2**31 - 1, 2**31 - 19, 2**31 - 61, 2**31 - 69, 2**31 - 85)


class PrimeCollisionError(ArithmeticError):
    """Modular ranks kept disagreeing after retries with fresh primes."""


class NonIntegralCoordinatesError(ArithmeticError):
    """A solve that must be integral produced non-integer coordinates."""


class SolveError(ArithmeticError):
    """The right-hand side is not in the span of the given columns."""


def dense_mod(entries: Iterable[tuple[int, int, int]], nrows: int, ncols: int,
              p: int) -> np.ndarray:
    a = np.zeros((nrows, ncols), dtype=np.int64)
    for r, c, v in entries:
        a[r, c] = (a[r, c] + v) % p
    return a


def rank_dense_mod(a: np.ndarray, p: int) -> int:
    """In-place Gaussian elimination over GF(p); int64 is safe for p < 2^31.5."""
    a = a % p
    nr, nc = a.shape
    rank = 0
    for c in range(nc):
        if rank == nr:
            break
        col = a[rank:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank, c:] = (a[rank, c:] * inv) % p
        rows = a[rank + 1:, c]
        nzr = np.nonzero(rows)[0]
        if nzr.size:
            idx = rank + 1 + nzr
            a[idx, c:] = (a[idx, c:] - np.outer(a[idx, c], a[rank, c:])) % p
        rank += 1
    return rank


def rank_mod_p(entries: Iterable[tuple[int, int, int]], nrows: int, ncols: int,
               p: int) -> int:
    if nrows == 0 or ncols == 0:
        return 0
    return rank_dense_mod(dense_mod(entries, nrows, ncols, p), p)


def rank_int(entries: Sequence[tuple[int, int, int]], nrows: int, ncols: int,
             primes: Sequence[int] = BACKUP_PRIMES) -> int:
    """Rank over Q of an integer matrix via two-prime agreement."""
    if nrows == 0 or ncols == 0:
        return 0
    r1 = rank_mod_p(entries, nrows, ncols, primes[0])
    r2 = rank_mod_p(entries, nrows, ncols, primes[1])
    if r1 == r2:
        return r1
    for p in primes[2:]:
        r3 = rank_mod_p(entries, nrows, ncols, p)
        if r3 == max(r1, r2):
            return r3
        r1, r2 = max(r1, r2), r3
    raise PrimeCollisionError(f"modular ranks disagree: {r1} vs {r2}")


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p without int64 overflow: split b into 16-bit halves."""
    a = a % p
    b = b % p
    b_lo = b & 0xFFFF
    b_hi = b >> 16
    lo = (a @ b_lo) % p
    hi = (a @ b_hi) % p
    return (lo + (hi << 16)) % p


def inv_mod(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over GF(p); raises ZeroDivisionError if singular."""
    n = a.shape[0]
    work = a % p
    inv = np.eye(n, dtype=np.int64)
    for c in range(n):
        nz = np.nonzero(work[c:, c])[0]
        if nz.size == 0:
            raise ZeroDivisionError("matrix is singular mod p")
        piv = c + int(nz[0])
        if piv != c:
            work[[c, piv]] = work[[piv, c]]
            inv[[c, piv]] = inv[[piv, c]]
        scale = pow(int(work[c, c]), p - 2, p)
        work[c] = (work[c] * scale) % p
        inv[c] = (inv[c] * scale) % p
        others = np.nonzero(work[:, c])[0]
        for r in others:
            if r == c:
                continue
            fac = int(work[r, c])
            work[r] = (work[r] - fac * work[c]) % p
            inv[r] = (inv[r] - fac * inv[c]) % p
    return inv


def _pivot_rows_mod(columns: Sequence[dict[int, int]], p: int) -> Optional[list[int]]:
    """One pivot row per column via sparse elimination; None if dependent mod p."""
    pivots: list[tuple[int, dict[int, int]]] = []
    rows: list[int] = []
    for col in columns:
        cur = {r: v % p for r, v in col.items() if v % p}
        for pr, pcol in pivots:
            c = cur.get(pr)
            if c:
                for r, v in pcol.items():
                    w = (cur.get(r, 0) - c * v) % p
                    if w:
                        cur[r] = w
                    else:
                        cur.pop(r, None)
        if not cur:
            return None
        pr = min(cur)
        inv = pow(cur[pr], p - 2, p)
        cur = {r: (v * inv) % p for r, v in cur.items()}
        pivots.append((pr, cur))
        rows.append(pr)
    return rows


def solve_int_columns(columns: Sequence[dict[int, int]],
                      rhs: Sequence[dict[int, int]],
                      p: int = DEFAULT_PRIME) -> list[dict[int, int]]:
    """Solve V x = w for every w in rhs, where V has the given (independent
    over Q) integer columns.  Returns sparse integer coordinate dicts.

    The modular solution is certified exactly; if certification fails the
    rational fallback decides between big coordinates and genuine
    non-integrality.
    """
    m = len(columns)
    if m == 0:
        for w in rhs:
            if any(v for v in w.values()):
                raise SolveError("nonzero right-hand side with no basis columns")
        return [{} for _ in rhs]

    rows = None
    prime = p
    for prime in (p,) + tuple(q for q in BACKUP_PRIMES if q != p):
        rows = _pivot_rows_mod(columns, prime)
        if rows is not None:
            break
    if rows is None:
        return [_solve_fraction(columns, w) for w in rhs]

    vsub = np.zeros((m, m), dtype=np.int64)
    for j, col in enumerate(columns):
        for i, r in enumerate(rows):
            vsub[i, j] = col.get(r, 0) % prime
    try:
        vinv = inv_mod(vsub, prime)
    except ZeroDivisionError:
        return [_solve_fraction(columns, w) for w in rhs]

    out: list[dict[int, int]] = []
    wsub = np.zeros((m, len(rhs)), dtype=np.int64)
    for c, w in enumerate(rhs):
        for i, r in enumerate(rows):
            wsub[i, c] = w.get(r, 0) % prime
    xs = matmul_mod(vinv, wsub, prime)
    half = prime // 2
    for c, w in enumerate(rhs):
        x = {j: (int(xs[j, c]) - prime if xs[j, c] > half else int(xs[j, c]))
             for j in range(m) if xs[j, c]}
        if _certify(columns, x, w):
            out.append(x)
        else:
            out.append(_solve_fraction(columns, w))
    return out


def _certify(columns: Sequence[dict[int, int]], x: dict[int, int],
             w: dict[int, int]) -> bool:
    acc: dict[int, int] = {}
    for j, c in x.items():
        for r, v in columns[j].items():
            acc[r] = acc.get(r, 0) + c * v
    for r, v in w.items():
        acc[r] = acc.get(r, 0) - v
    return all(v == 0 for v in acc.values())


def _solve_fraction(columns: Sequence[dict[int, int]],
                    w: dict[int, int]) -> dict[int, int]:
    """Exact rational solve; raises on inconsistency or non-integral result."""
    rows = sorted(set().union(*[set(c) for c in columns], set(w)))
    ridx = {r: i for i, r in enumerate(rows)}
    m = len(columns)
    a = [[Fraction(0)] * (m + 1) for _ in rows]
    for j, col in enumerate(columns):
        for r, v in col.items():
            a[ridx[r]][j] = Fraction(v)
    for r, v in w.items():
        a[ridx[r]][m] = Fraction(v)

    piv_of_col: dict[int, int] = {}
    row = 0
    for c in range(m):
        sel = next((i for i in range(row, len(a)) if a[i][c]), None)
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        inv = 1 / a[row][c]
        a[row] = [x * inv for x in a[row]]
        for i in range(len(a)):
            if i != row and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        piv_of_col[c] = row
        row += 1
    for i in range(row, len(a)):
        if a[i][m]:
            raise SolveError("right-hand side not in the span of the basis columns")
    sol: dict[int, int] = {}
    for c in range(m):
        i = piv_of_col.get(c)
        val = a[i][m] if i is not None else Fraction(0)
        if val.denominator != 1:
            raise NonIntegralCoordinatesError(
                f"coordinate {c} is {val}; expected an integer")
        if val:
            sol[c] = int(val)
    return sol
