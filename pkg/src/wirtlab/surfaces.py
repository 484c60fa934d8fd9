"""Bridge-trisection arithmetic, tube bounds ledgers, and volume bounds.

Bounds are collected in a ledger of per-invariant intervals; every bound
carries the name of the rule that produced it, and hypotheses the tool
cannot check (alternating on a Heegaard surface, representativity) must be
asserted by the caller and are recorded in the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .diagram import GaussCode
from .errors import (
    BadParameter,
    EulerMismatch,
    HypothesisNotAsserted,
    OutOfInterval,
    ValidationError,
)
from .wirtinger import omega

V_OCT = 3.663862  # volume of the regular ideal octahedron
V_TET = 1.014941  # volume of the regular ideal tetrahedron
TOLERANCE = 1e-6


@dataclass(frozen=True)
class TrisectionParams:
    b: int
    c1: int
    c2: int
    c3: int
    euler: int

    @property
    def patch_number(self) -> int:
        return min(self.c1, self.c2, self.c3)

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "c": [self.c1, self.c2, self.c3],
            "euler": self.euler,
        }


def validate_trisection(b: int, c1: int, c2: int, c3: int, euler: int) -> TrisectionParams:
    """Check positivity and the Euler identity c1 + c2 + c3 - b."""
    for value, name in ((b, "b"), (c1, "c1"), (c2, "c2"), (c3, "c3")):
        if value < 1:
            raise ValidationError(f"{name} must be positive, got {value}")
    if c1 + c2 + c3 - b != euler:
        raise EulerMismatch(
            f"c1+c2+c3-b = {c1 + c2 + c3 - b} does not match euler {euler}"
        )
    return TrisectionParams(b, c1, c2, c3, euler)


def bridge_from_trisection(params_list: Sequence[TrisectionParams]) -> int:
    """Minimal patch number over the listed trisections of one surface."""
    if not params_list:
        raise BadParameter("need at least one trisection")
    return min(p.patch_number for p in params_list)


def trisection_lower_bound(beta: int, euler: int) -> int:
    """3*beta - euler, a lower bound for the bridge trisection index."""
    if beta < 1:
        raise BadParameter("beta must be positive")
    return 3 * beta - euler


# -- bounds ledger --------------------------------------------------------------


@dataclass
class Bound:
    lo: int
    hi: int | None  # None means unbounded above
    lo_rule: str
    hi_rule: str | None

    def to_json(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "lo_rule": self.lo_rule,
            "hi_rule": self.hi_rule,
        }


@dataclass
class BoundsLedger:
    bounds: dict[str, Bound] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def set_lower(self, name: str, value: int, rule: str) -> None:
        current = self.bounds.get(name)
        if current is None:
            self.bounds[name] = Bound(value, None, rule, None)
        elif value > current.lo:
            current.lo = value
            current.lo_rule = rule
        self._check(name)

    def set_upper(self, name: str, value: int, rule: str) -> None:
        current = self.bounds.get(name)
        if current is None:
            self.bounds[name] = Bound(1, value, "trivial", rule)
        elif current.hi is None or value < current.hi:
            current.hi = value
            current.hi_rule = rule
        self._check(name)

    def _check(self, name: str) -> None:
        bound = self.bounds[name]
        if bound.hi is not None and bound.lo > bound.hi:
            raise ValidationError(
                f"ledger inconsistency for {name}: lo {bound.lo} ({bound.lo_rule})"
                f" > hi {bound.hi} ({bound.hi_rule})"
            )

    def pinned(self, name: str) -> int | None:
        bound = self.bounds.get(name)
        if bound is not None and bound.hi == bound.lo:
            return bound.lo
        return None

    def to_json(self) -> dict:
        return {
            "bounds": {k: v.to_json() for k, v in sorted(self.bounds.items())},
            "notes": list(self.notes),
        }


def tube_bounds(
    code: GaussCode,
    verified_rank: int | None = None,
    euler: int = 0,
) -> BoundsLedger:
    """Ledger for the ribbon surface swept out by a diagram's tube.

    The diagram's coloring number bounds beta, b, and mu from above; a
    verified reflection or cycle labeling of the stated rank tightens mu
    from below, and when the two meet the whole chain is pinned, including
    b = 3*beta - euler.
    """
    w = omega(code).omega
    ledger = BoundsLedger()
    ledger.set_upper("mu", w, "mu<=beta<=coloring-number")
    ledger.set_upper("beta", w, "beta<=coloring-number")
    ledger.set_upper("b", 3 * w, "b<=3*coloring-number")
    ledger.set_lower("mu", 1, "trivial")
    ledger.set_lower("beta", 1, "trivial")
    ledger.set_lower("b", 1, "trivial")
    if verified_rank is not None:
        if verified_rank < 1:
            raise BadParameter("verified rank must be positive")
        ledger.set_lower("mu", verified_rank, "quotient-rank")
        ledger.set_lower("beta", verified_rank, "mu<=beta")
        mu = ledger.pinned("mu")
        beta = ledger.pinned("beta")
        if beta is not None:
            ledger.set_lower("b", trisection_lower_bound(beta, euler), "3*beta-euler<=b")
            if mu is not None and mu == beta == w:
                ledger.notes.append(
                    f"equality chain mu = beta = {w} certified; "
                    f"b pinned to {3 * w - euler} with euler {euler}"
                )
    ledger.notes.append(f"coloring number omega = {w}, euler characteristic {euler}")
    return ledger


# -- meridional rank bounds for sums --------------------------------------------


@dataclass(frozen=True)
class CommutatorBound:
    exact: Fraction
    ceiling: int

    def to_json(self) -> dict:
        return {
            "exact": [self.exact.numerator, self.exact.denominator],
            "ceiling": self.ceiling,
        }


def commutator_bound(m_list: Sequence[int], rk_list: Sequence[int]) -> CommutatorBound:
    """Lower bound 1 + N/M for the meridional rank of a sum of twisted
    spins, where M is the lcm of the twist exponents and N the total rank
    of the fiber groups."""
    if len(m_list) != len(rk_list) or not m_list:
        raise BadParameter("need matching nonempty twist and rank lists")
    for m in m_list:
        if abs(m) < 2:
            raise BadParameter(f"twist exponent {m} must have |m| >= 2")
    for rk in rk_list:
        if rk < 1:
            raise BadParameter(f"fiber rank {rk} must be at least 1")
    M = math.lcm(*(abs(m) for m in m_list))
    N = sum(rk_list)
    exact = 1 + Fraction(N, M)
    return CommutatorBound(exact, math.ceil(exact))


@dataclass(frozen=True)
class IntervalRecipe:
    feasible: bool
    r_list: tuple[int, ...]
    s: int
    j: int
    summands: tuple[dict, ...]
    twist_exponents: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "r": list(self.r_list),
            "s": self.s,
            "j": self.j,
            "summands": list(self.summands),
            "twists": list(self.twist_exponents),
        }


def _coprime_odd_exponents(n: int) -> tuple[int, ...]:
    out: list[int] = []
    candidate = 3
    while len(out) < n:
        if all(math.gcd(candidate, m) == 1 for m in out):
            out.append(candidate)
        candidate += 2
    return tuple(out)


def kanenobu_interval(p_list: Sequence[int], q: int) -> IntervalRecipe:
    """Check max p_i <= q <= sum p_i - (n-1) and emit the summand recipe
    realizing a sum with total rank q from summands of ranks p_i.

    Summands are data only: each entry names how many copies of which
    twisted spheres to sum, with pairwise coprime odd twist exponents.
    """
    if not p_list or any(p < 1 for p in p_list) or q < 1:
        raise BadParameter("ranks must be positive")
    n = len(p_list)
    low, high = max(p_list), sum(p_list) - (n - 1)
    if not low <= q <= high:
        raise OutOfInterval(f"q = {q} outside [{low}, {high}]")
    r_list = tuple(sorted((p - 1 for p in p_list), reverse=True))
    s = q - 1
    # largest valid pivot, so the pivot summand glues T1 to a distinct Tj
    j = 1
    prefix = 0
    for idx, r in enumerate(r_list, start=1):
        if prefix <= s <= prefix + r:
            j = idx
        prefix += r
    twists = _coprime_odd_exponents(n)
    summands = []
    for idx, r in enumerate(r_list, start=1):
        if idx < j:
            summands.append({"copies": r, "of": "T1", "twist": twists[0]})
        elif idx == j:
            head = s - sum(r_list[: j - 1])
            summands.append(
                {
                    "copies_T1": head,
                    "copies_Tj": r,
                    "of": f"T1#T{idx}",
                    "twists": [twists[0], twists[idx - 1]],
                }
            )
        else:
            summands.append({"copies": r, "of": f"T{idx}", "twist": twists[idx - 1]})
    return IntervalRecipe(True, r_list, s, j, tuple(summands), twists)


# -- volume bounds ---------------------------------------------------------------


@dataclass(frozen=True)
class VolumeBounds:
    vol_lower: float
    beta_g_upper: int
    constant: float
    chain_holds: bool

    def to_json(self) -> dict:
        return {
            "vol_lower": self.vol_lower,
            "beta_g_upper": self.beta_g_upper,
            "constant": self.constant,
            "chain_holds": self.chain_holds,
            "v_oct": V_OCT,
            "v_tet": V_TET,
        }


def volume_bounds(
    tw: int, genus: int, representativity_asserted: bool = False
) -> VolumeBounds:
    """Volume lower bound 0.5 * v_oct * (tw - euler(F)) and the coloring
    upper bound 2 * tw for the genus-g bridge number.

    The caller must assert the geometric hypotheses (alternating on the
    surface, disk regions, representativity above four) and genus >= 1.
    """
    if tw < 1:
        raise BadParameter("twist number must be at least 1")
    if genus < 1:
        raise HypothesisNotAsserted("the surface must have genus at least 1")
    if not representativity_asserted:
        raise HypothesisNotAsserted(
            "representativity > 4 and disk regions must be asserted by the caller"
        )
    euler_f = 2 - 2 * genus
    vol_lower = 0.5 * V_OCT * (tw - euler_f)
    beta_g_upper = 2 * tw
    constant = V_TET / 6
    chain = constant * beta_g_upper <= vol_lower + TOLERANCE
    return VolumeBounds(vol_lower, beta_g_upper, constant, chain)
