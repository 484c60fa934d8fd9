"""Fox calculus, Alexander matrices, and Smith normal form over F_p[t].

Every meridional generator abelianizes to the same variable t, so the Fox
derivative of a relator is a univariate Laurent polynomial row.  Generator
counts of the module are bounded below by the number of nonunit invariant
factors of the matrix reduced mod a prime p, where F_p[t] is a principal
ideal domain and the reduction is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BadParameter
from .presentations import GroupPresentation, Word


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial, stored sparsely as exponent -> coefficient."""

    coeffs: tuple[tuple[int, int], ...]  # sorted by exponent, no zeros

    @staticmethod
    def of(mapping: dict[int, int]) -> "LaurentPoly":
        return LaurentPoly(tuple(sorted((e, c) for e, c in mapping.items() if c)))

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly(())

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly.of({0: c})

    @staticmethod
    def t_power(e: int, c: int = 1) -> "LaurentPoly":
        return LaurentPoly.of({e: c})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs:
            out[e] = out.get(e, 0) + c
        return LaurentPoly.of(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(tuple((e, -c) for e, c in self.coeffs))

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs:
            for e2, c2 in other.coeffs:
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly.of(out)

    def min_exp(self) -> int:
        if self.is_zero:
            return 0
        return self.coeffs[0][0]

    def at_one(self) -> int:
        return sum(c for _, c in self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e, c in self.coeffs:
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{e}" if c != 1 else f"t^{e}")
        return " + ".join(parts)


@dataclass(frozen=True)
class PolyMatrix:
    """Rows x cols of Laurent polynomials with a uniform coefficient ring.

    modulus None means integer coefficients; a prime p means F_p.
    """

    rows: tuple[tuple[LaurentPoly, ...], ...]
    cols: tuple[str, ...]
    modulus: int | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def reduce_mod(self, p: int) -> "PolyMatrix":
        if p < 2:
            raise BadParameter("modulus must be at least 2")
        rows = tuple(
            tuple(
                LaurentPoly.of({e: c % p for e, c in entry.coeffs})
                for entry in row
            )
            for row in self.rows
        )
        return PolyMatrix(rows, self.cols, p)


# -- Fox derivatives -----------------------------------------------------------


def _fox_row(relator: Word, generators: Sequence[str]) -> list[LaurentPoly]:
    """Row of Fox derivatives evaluated under every generator -> t."""
    row = {g: LaurentPoly.zero() for g in generators}
    prefix = 0  # exponent sum of the prefix read so far
    for gen, exp in relator.letters:
        if exp > 0:
            # d(g^n) = 1 + t + ... + t^(n-1), shifted by the prefix image
            contribution = {prefix + i: 1 for i in range(exp)}
        else:
            contribution = {prefix - i: -1 for i in range(1, -exp + 1)}
        row[gen] = row[gen] + LaurentPoly.of(contribution)
        prefix += exp
    return [row[g] for g in generators]


def fox_matrix(pres: GroupPresentation) -> PolyMatrix:
    """One row per relator, one column per generator, over Z[t, t^-1]."""
    rows = tuple(
        tuple(_fox_row(r, pres.generators)) for r in pres.relators
    )
    return PolyMatrix(rows, tuple(pres.generators), None)


def alexander_matrix(pres: GroupPresentation, delete: str | None = None) -> PolyMatrix:
    """Fox matrix with one meridional generator's column removed."""
    if not pres.generators:
        raise BadParameter("presentation has no generators")
    target = delete if delete is not None else pres.generators[0]
    if target not in pres.generators:
        raise BadParameter(f"unknown generator {target!r}")
    keep = [i for i, g in enumerate(pres.generators) if g != target]
    full = fox_matrix(pres)
    rows = tuple(tuple(row[i] for i in keep) for row in full.rows)
    return PolyMatrix(rows, tuple(pres.generators[i] for i in keep), None)


# -- univariate polynomials over F_p ------------------------------------------

Fpt = tuple[int, ...]  # coefficients, ascending, normalized (no top zeros)


def _trim(coeffs: Sequence[int], p: int) -> Fpt:
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _laurent_row_to_fpt(row: Sequence[LaurentPoly], p: int) -> list[Fpt]:
    """Clear negative exponents of a whole row by one unit t^k, reduce mod p.

    The shift must be uniform across the row: multiplying a row by t^k is a
    legal unit row operation, per-entry shifts are not.
    """
    shift = min((entry.min_exp() for entry in row if not entry.is_zero), default=0)
    shift = min(shift, 0)
    out = []
    for entry in row:
        if entry.is_zero:
            out.append(())
            continue
        coeffs = [0] * (max(e for e, _ in entry.coeffs) - shift + 1)
        for e, c in entry.coeffs:
            coeffs[e - shift] = c % p
        out.append(_trim(coeffs, p))
    return out


def _deg(f: Fpt) -> int:
    return len(f) - 1  # -1 for the zero polynomial


def _add(f: Fpt, g: Fpt, p: int) -> Fpt:
    n = max(len(f), len(g))
    return _trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def _scale(f: Fpt, c: int, p: int) -> Fpt:
    return _trim([x * c for x in f], p)


def _mul(f: Fpt, g: Fpt, p: int) -> Fpt:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return _trim(out, p)


def _divmod(f: Fpt, g: Fpt, p: int) -> tuple[Fpt, Fpt]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], p - 2, p)
    rem = list(f)
    quo = [0] * max(len(f) - len(g) + 1, 0)
    while len(rem) >= len(g) and any(rem):
        while rem and rem[-1] % p == 0:
            rem.pop()
        if len(rem) < len(g):
            break
        shift = len(rem) - len(g)
        factor = (rem[-1] * inv) % p
        quo[shift] = factor
        for i, b in enumerate(g):
            rem[i + shift] = (rem[i + shift] - factor * b) % p
    return _trim(quo, p), _trim(rem, p)


def _monic(f: Fpt, p: int) -> Fpt:
    if not f:
        return ()
    return _scale(f, pow(f[-1], p - 2, p), p)


def _gcd(f: Fpt, g: Fpt, p: int) -> Fpt:
    while g:
        _, r = _divmod(f, g, p)
        f, g = g, r
    return _monic(f, p)


def format_fpt(f: Fpt) -> str:
    if not f:
        return "0"
    parts = []
    for i, c in enumerate(f):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("t" if c == 1 else f"{c}*t")
        else:
            parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
    return " + ".join(parts)


# -- Smith normal form ---------------------------------------------------------


def snf_over_fpt(matrix: PolyMatrix) -> list[Fpt]:
    """Monic invariant factors d1 | d2 | ... of a matrix over F_p[t].

    The matrix must carry a prime modulus; rows are normalized by units
    t^k before reduction.  Zero factors pad the list up to min(rows, cols).
    """
    if matrix.modulus is None:
        raise BadParameter("matrix must be reduced mod a prime first")
    p = matrix.modulus
    grid = [_laurent_row_to_fpt(row, p) for row in matrix.rows]
    n_rows = len(grid)
    n_cols = len(matrix.cols)
    size = min(n_rows, n_cols)
    factors: list[Fpt] = []
    top = 0
    while top < size:
        pivot = None
        for i in range(top, n_rows):
            for j in range(top, n_cols):
                f = grid[i][j]
                if f and (pivot is None or _deg(f) < _deg(grid[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        grid[top], grid[pi] = grid[pi], grid[top]
        for row in grid:
            row[top], row[pj] = row[pj], row[top]
        while True:
            reduced = False
            for i in range(top + 1, n_rows):
                if not grid[i][top]:
                    continue
                q, r = _divmod(grid[i][top], grid[top][top], p)
                for j in range(top, n_cols):
                    grid[i][j] = _add(grid[i][j], _scale(_mul(q, grid[top][j], p), p - 1, p), p)
                if r:
                    grid[top], grid[i] = grid[i], grid[top]
                    reduced = True
            for j in range(top + 1, n_cols):
                if not grid[top][j]:
                    continue
                q, r = _divmod(grid[top][j], grid[top][top], p)
                for i in range(top, n_rows):
                    grid[i][j] = _add(grid[i][j], _scale(_mul(q, grid[i][top], p), p - 1, p), p)
                if r:
                    for i in range(n_rows):
                        grid[i][top], grid[i][j] = grid[i][j], grid[i][top]
                    reduced = True
            if not reduced:
                break
        # pivot must divide the remaining submatrix for the divisibility chain
        stray = None
        for i in range(top + 1, n_rows):
            for j in range(top + 1, n_cols):
                if grid[i][j]:
                    _, r = _divmod(grid[i][j], grid[top][top], p)
                    if r:
                        stray = i
                        break
            if stray is not None:
                break
        if stray is not None:
            for j in range(top, n_cols):
                grid[top][j] = _add(grid[top][j], grid[stray][j], p)
            continue
        factors.append(_monic(grid[top][top], p))
        top += 1
    while len(factors) < size:
        factors.append(())
    return factors


def invariant_factor_strings(factors: Sequence[Fpt]) -> list[str]:
    return [format_fpt(f) for f in factors]


@dataclass(frozen=True)
class NakanishiBound:
    prime: int
    nonunit_factors: int
    mu_lower: int
    factors: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "p": self.prime,
            "nakanishi_lower_bound": self.nonunit_factors,
            "mu_lower_bound": self.mu_lower,
            "invariant_factors": list(self.factors),
        }


def nakanishi_lower_bound(pres: GroupPresentation, p: int = 2) -> NakanishiBound:
    """Count nonunit invariant factors of the mod-p Alexander matrix.

    The count bounds the module's generator number from below, and that
    number plus one bounds the meridional rank from below.
    """
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise BadParameter(f"{p} is not prime")
    if not pres.generators:
        raise BadParameter("presentation has no generators")
    if len(pres.generators) == 1:
        return NakanishiBound(p, 0, 1, ())
    matrix = alexander_matrix(pres).reduce_mod(p)
    factors = snf_over_fpt(matrix)
    nonunit = sum(1 for f in factors if len(f) != 1)
    return NakanishiBound(
        p, nonunit, nonunit + 1, tuple(invariant_factor_strings(factors))
    )
