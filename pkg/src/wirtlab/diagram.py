"""Gauss-code model of classical and virtual knot diagrams.

A diagram is stored as the cyclic sequence of its classical-crossing visits;
virtual crossings carry no symbol, so a virtual knot diagram and its detour
images share one code.  All values are immutable and all operations are pure.

Conventions fixed here and frozen by golden tests:

* Strands are the arcs between consecutive Under visits.  Strand ids are
  assigned in cyclic order starting immediately after the first Under visit
  of the stored rotation; the terminating Under visit belongs to its strand.
* ``flank_switch`` flips the sign of the crossing.  Re-routing the overpass
  around the other flank of its neighbour is invisible to the cyclic visit
  sequence (the detour only adds virtual crossings) but reverses the local
  handedness.
* ``flank`` swaps the over/under roles at the crossing, so downstream
  label propagation conjugates the old overstrand by the old understrand.
  With ``balance=True`` one extra classical crossing of the same sign is
  inserted adjacent to the flanked site: the old overstrand dives under its
  partner a second time, which restores the strand-count bookkeeping of the
  surrounding twist region.
* ``handle_drag`` attaches the dragged loop at the start of the chosen
  strand and runs it once around the component in the orientation direction;
  each Under visit passed contributes one new crossing whose new Over visit
  sits immediately after the original crossing's Over visit.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

from .errors import (
    BadParameter,
    NotAKnot,
    NotInTwistRegion,
    ParseError,
    UnknownCrossing,
    UnknownStrand,
    ValidationError,
)

OVER = "O"
UNDER = "U"

_TOKEN = re.compile(r"^([OU])(\d+)([+-])$")


class Visit(NamedTuple):
    crossing: int
    kind: str  # OVER or UNDER
    sign: int  # +1 or -1


@dataclass(frozen=True)
class GaussCode:
    """A validated cyclic sequence of signed over/under visits (one knot)."""

    visits: tuple[Visit, ...]

    def __post_init__(self) -> None:
        seen: dict[int, list[Visit]] = {}
        for v in self.visits:
            if not isinstance(v, Visit):
                raise ValidationError(f"visit {v!r} is not a Visit")
            if v.crossing < 1:
                raise ValidationError(f"crossing id {v.crossing} is not positive")
            if v.kind not in (OVER, UNDER):
                raise ValidationError(f"bad pass kind {v.kind!r}")
            if v.sign not in (1, -1):
                raise ValidationError(f"bad sign {v.sign!r}")
            seen.setdefault(v.crossing, []).append(v)
        for cid, pair in seen.items():
            if len(pair) != 2:
                raise ValidationError(
                    f"crossing {cid} has {len(pair)} visit(s), expected 2"
                )
            kinds = {p.kind for p in pair}
            if kinds != {OVER, UNDER}:
                raise ValidationError(
                    f"crossing {cid} must have one Over and one Under visit"
                )
            if pair[0].sign != pair[1].sign:
                raise ValidationError(f"crossing {cid} has mismatched signs")

    # -- basic queries ----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.visits

    def crossings(self) -> tuple[int, ...]:
        return tuple(sorted({v.crossing for v in self.visits}))

    @property
    def crossing_count(self) -> int:
        return len(self.visits) // 2

    def sign_of(self, crossing: int) -> int:
        for v in self.visits:
            if v.crossing == crossing:
                return v.sign
        raise UnknownCrossing(f"crossing {crossing} not in code")

    def positions_of(self, crossing: int) -> tuple[int, int]:
        """Return (over position, under position) of a crossing."""
        over = under = None
        for i, v in enumerate(self.visits):
            if v.crossing == crossing:
                if v.kind == OVER:
                    over = i
                else:
                    under = i
        if over is None or under is None:
            raise UnknownCrossing(f"crossing {crossing} not in code")
        return over, under

    # -- serialization ----------------------------------------------------

    def serialize(self) -> str:
        return ",".join(
            f"{v.kind}{v.crossing}{'+' if v.sign > 0 else '-'}" for v in self.visits
        )

    def to_json(self) -> dict:
        return {
            "visits": [
                {"id": v.crossing, "pass": v.kind, "sign": v.sign}
                for v in self.visits
            ]
        }

    @staticmethod
    def from_json(data: dict) -> "GaussCode":
        try:
            visits = tuple(
                Visit(int(item["id"]), str(item["pass"]), int(item["sign"]))
                for item in data["visits"]
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad JSON code payload: {exc}") from exc
        return GaussCode(visits)

    def __str__(self) -> str:  # pragma: no cover - repr convenience
        return self.serialize() if self.visits else "(empty)"


def parse_gauss_code(text: str) -> GaussCode:
    """Parse comma-separated ``O<k><s>`` / ``U<k><s>`` tokens.

    Whitespace is ignored and parsing is case-insensitive; both ASCII ``-``
    and the unicode minus sign are accepted.
    """
    cleaned = re.sub(r"\s+", "", text).replace("−", "-").upper()
    if not cleaned:
        return GaussCode(())
    visits = []
    for token in cleaned.split(","):
        m = _TOKEN.match(token)
        if not m:
            raise ParseError(f"bad token {token!r}")
        kind, cid, sign = m.groups()
        visits.append(Visit(int(cid), kind, 1 if sign == "+" else -1))
    return GaussCode(tuple(visits))


# -- strands ---------------------------------------------------------------


@dataclass(frozen=True)
class Strand:
    """A maximal overpass arc: the visits between consecutive Under visits."""

    id: int
    visits: tuple[Visit, ...]
    positions: tuple[int, ...]

    def over_visits(self) -> tuple[Visit, ...]:
        return tuple(v for v in self.visits if v.kind == OVER)


class CrossingInfo(NamedTuple):
    crossing: int
    sign: int
    over_strand: int
    in_strand: int
    out_strand: int


@lru_cache(maxsize=4096)
def _strand_data(visits: tuple[Visit, ...]):
    n = len(visits)
    if n == 0:
        return (Strand(1, (), ()),), {}
    under_positions = [i for i, v in enumerate(visits) if v.kind == UNDER]
    strands = []
    position_strand: dict[int, int] = {}
    terminal_strand: dict[int, int] = {}
    k = len(under_positions)
    for idx in range(k):
        start = under_positions[idx] + 1
        end = under_positions[(idx + 1) % k]
        positions = []
        p = start % n
        while True:
            positions.append(p)
            if p == end:
                break
            p = (p + 1) % n
        sid = idx + 1
        strands.append(
            Strand(sid, tuple(visits[q] for q in positions), tuple(positions))
        )
        for q in positions:
            position_strand[q] = sid
        terminal_strand[end] = sid
    table: dict[int, CrossingInfo] = {}
    for cid in {v.crossing for v in visits}:
        over_pos = under_pos = None
        sign = 1
        for i, v in enumerate(visits):
            if v.crossing == cid:
                sign = v.sign
                if v.kind == OVER:
                    over_pos = i
                else:
                    under_pos = i
        in_sid = terminal_strand[under_pos]
        out_sid = in_sid % k + 1
        table[cid] = CrossingInfo(
            cid, sign, position_strand[over_pos], in_sid, out_sid
        )
    return tuple(strands), table


def strands_of(code: GaussCode) -> list[Strand]:
    """Split the code into strands, ids in cyclic order after the first Under."""
    return list(_strand_data(code.visits)[0])


def crossing_table(code: GaussCode) -> dict[int, CrossingInfo]:
    """Per-crossing over/incoming/outgoing strand ids (incoming ends at the
    Under visit, outgoing starts right after it)."""
    return dict(_strand_data(code.visits)[1])


def overpass_count(code: GaussCode) -> int:
    """Number of maximal cyclic blocks of Over visits (1 if no Under visit)."""
    visits = code.visits
    n = len(visits)
    if n == 0 or all(v.kind == OVER for v in visits):
        return 1
    blocks = 0
    for i, v in enumerate(visits):
        if v.kind == OVER and visits[(i - 1) % n].kind == UNDER:
            blocks += 1
    return blocks


# -- local moves ------------------------------------------------------------


def virtualize(code: GaussCode, crossing: int) -> GaussCode:
    """Replace a classical crossing by a virtual one: delete its two visits."""
    if crossing not in {v.crossing for v in code.visits}:
        raise UnknownCrossing(f"crossing {crossing} not in code")
    return GaussCode(tuple(v for v in code.visits if v.crossing != crossing))


def connected_sum(
    a: GaussCode,
    b: GaussCode,
    basepoint_a: int = 0,
    basepoint_b: int = 0,
) -> GaussCode:
    """Splice ``b`` into ``a``: cut both circles at the chosen visit
    positions and concatenate.  Crossing ids of ``b`` are shifted above the
    ids of ``a``."""
    if a.visits and not 0 <= basepoint_a < len(a.visits):
        raise BadParameter(f"basepoint {basepoint_a} out of range for first code")
    if b.visits and not 0 <= basepoint_b < len(b.visits):
        raise BadParameter(f"basepoint {basepoint_b} out of range for second code")
    offset = max(a.crossings(), default=0)
    rotated_a = a.visits[basepoint_a:] + a.visits[:basepoint_a]
    rotated_b = tuple(
        Visit(v.crossing + offset, v.kind, v.sign)
        for v in (b.visits[basepoint_b:] + b.visits[:basepoint_b])
    )
    return GaussCode(rotated_a + rotated_b)


def flank_switch(code: GaussCode, crossing: int) -> GaussCode:
    """Re-route the overpass at a crossing around the other flank.

    The detour happens through virtual crossings, so the cyclic visit order
    is unchanged; only the handedness of the crossing flips.  Coloring moves
    and reflection labelings are sign-blind, hence the Wirtinger number and
    any consistent reflection labeling survive unchanged.
    """
    if crossing not in {v.crossing for v in code.visits}:
        raise UnknownCrossing(f"crossing {crossing} not in code")
    return GaussCode(
        tuple(
            Visit(v.crossing, v.kind, -v.sign) if v.crossing == crossing else v
            for v in code.visits
        )
    )


def flank(code: GaussCode, crossing: int, balance: bool = False) -> GaussCode:
    """Flank move at a crossing: the old overstrand now dives under its
    partner, so the outgoing label becomes (under)(over)(under) downstream.

    With ``balance=True`` a fresh classical crossing of the same sign is
    inserted adjacent to the site: the re-routed strand dives under the same
    partner a second time, so the pair is label-transparent and only the
    crossing count of the twist region grows by one.
    """
    over_pos, under_pos = code.positions_of(crossing)
    sign = code.sign_of(crossing)
    visits = list(code.visits)
    visits[over_pos] = Visit(crossing, UNDER, sign)
    visits[under_pos] = Visit(crossing, OVER, sign)
    if not balance:
        return GaussCode(tuple(visits))
    report = twist_regions(code)
    region = next(r for r in report.regions if crossing in r.crossings)
    if len(region.crossings) < 2:
        raise NotInTwistRegion(
            f"crossing {crossing} is a single-crossing region; nothing to balance"
        )
    fresh = max(code.crossings()) + 1
    out: list[Visit] = []
    for i, v in enumerate(visits):
        out.append(v)
        if i == over_pos:  # now the Under visit of the flanked strand
            out.append(Visit(fresh, UNDER, sign))
        elif i == under_pos:  # now the Over visit of the partner strand
            out.append(Visit(fresh, OVER, sign))
    return GaussCode(tuple(out))


def handle_drag(code: GaussCode, strand_id: int) -> GaussCode:
    """Attach a loop on the strand and drag it once around the component.

    Sliding through an undercrossing creates a new undercrossing on the
    dragged arc; over and virtual passages create only virtual crossings,
    which have no Gauss symbol.
    """
    strands = strands_of(code)
    if strand_id not in {s.id for s in strands}:
        raise UnknownStrand(f"strand {strand_id} not in code")
    if code.is_empty:
        return code
    n = len(code.visits)
    under_positions = [i for i, v in enumerate(code.visits) if v.kind == UNDER]
    # Cut point: the start of the chosen strand, i.e. right after the Under
    # visit preceding it in cyclic order.
    strand = next(s for s in strands if s.id == strand_id)
    start = strand.positions[0] if strand.positions else 0
    cut = (start - 1) % n  # drag arc is inserted after this position
    next_id = max(code.crossings()) + 1
    # Walk forward from the cut, recording each original Under visit passed.
    order = []
    p = (cut + 1) % n
    for _ in range(n):
        if code.visits[p].kind == UNDER:
            order.append(p)
        p = (p + 1) % n
    new_for_position = {pos: next_id + i for i, pos in enumerate(order)}
    over_of = {}  # original crossing position of the Over visit -> new id
    for pos, new_cid in new_for_position.items():
        cid = code.visits[pos].crossing
        over_pos, _ = code.positions_of(cid)
        over_of[over_pos] = new_cid
    out: list[Visit] = []
    for i, v in enumerate(code.visits):
        out.append(v)
        if i in over_of:
            out.append(Visit(over_of[i], OVER, v.sign))
        if i == cut:
            for pos in order:
                out.append(
                    Visit(new_for_position[pos], UNDER, code.visits[pos].sign)
                )
    return GaussCode(tuple(out))


# -- twist regions -----------------------------------------------------------


@dataclass(frozen=True)
class TwistRegion:
    crossings: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class TwistRegionReport:
    regions: tuple[TwistRegion, ...]

    @property
    def tw(self) -> int:
        return len(self.regions)

    def region_of(self, crossing: int) -> TwistRegion:
        for r in self.regions:
            if crossing in r.crossings:
                return r
        raise UnknownCrossing(f"crossing {crossing} not in any region")


def _adjacent(n: int, p: int, q: int) -> bool:
    return n > 1 and (q - p) % n in (1, n - 1)


def twist_regions(code: GaussCode) -> TwistRegionReport:
    """Partition crossings into maximal bigon chains.

    Two crossings bound a bigon when their visit pairs are adjacent in the
    cyclic order along both passing strands; a crossing in no bigon is its
    own region.
    """
    ids = code.crossings()
    if not ids:
        return TwistRegionReport(())
    n = len(code.visits)
    pos = {cid: code.positions_of(cid) for cid in ids}
    neighbours: dict[int, set[int]] = {cid: set() for cid in ids}
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            (ao, au), (bo, bu) = pos[a], pos[b]
            straight = _adjacent(n, ao, bo) and _adjacent(n, au, bu)
            crossed = _adjacent(n, ao, bu) and _adjacent(n, au, bo)
            if straight or crossed:
                neighbours[a].add(b)
                neighbours[b].add(a)
    regions = []
    unseen = set(ids)
    for cid in ids:
        if cid not in unseen:
            continue
        stack, component = [cid], set()
        while stack:
            c = stack.pop()
            if c in component:
                continue
            component.add(c)
            stack.extend(neighbours[c] - component)
        unseen -= component
        regions.append(TwistRegion(tuple(sorted(component))))
    return TwistRegionReport(tuple(regions))


# -- builders ----------------------------------------------------------------


def _torus_2braid_code(m: int) -> GaussCode:
    """Closure of the positive 2-braid with m crossings (m odd for a knot)."""
    first = [
        Visit(i + 1, OVER if i % 2 == 0 else UNDER, 1) for i in range(m)
    ]
    second = [
        Visit(i + 1, UNDER if i % 2 == 0 else OVER, 1) for i in range(m)
    ]
    return GaussCode(tuple(first + second))


def build_twist_chain(weights: list[int]) -> GaussCode:
    """Connected sum of 2-braid closures, one per half-twist weight."""
    if not weights:
        raise BadParameter("weights must be nonempty")
    for w in weights:
        if w < 1:
            raise BadParameter(f"weight {w} must be a positive integer")
        if w % 2 == 0:
            raise NotAKnot(f"a 2-braid closure with {w} crossings has 2 components")
    code = _torus_2braid_code(weights[0])
    for w in weights[1:]:
        code = connected_sum(code, _torus_2braid_code(w))
    return code


def build_torus_2braid(p: int, n: int) -> GaussCode:
    """n-fold connected sum of the (2, 2p-1) torus knot."""
    if p < 2:
        raise BadParameter("p must be at least 2")
    if n < 1:
        raise BadParameter("n must be at least 1")
    return build_twist_chain([2 * p - 1] * n)


_PRETZEL_EXITS = {"TL": "BR", "TR": "BL", "BL": "TR", "BR": "TL"}
_PRETZEL_DIRS = {
    "TL": (1, -1),
    "TR": (-1, -1),
    "BL": (1, 1),
    "BR": (-1, 1),
}


def build_pretzel(q: list[int]) -> GaussCode:
    """Gauss code of the (q1, ..., qn) pretzel diagram.

    Columns are vertical twist boxes read top to bottom, all with the same
    handedness (the top-left to bottom-right diagonal passes over).  The
    traversal starts at the top-left of the first column; a multi-component
    result raises NotAKnot.
    """
    if not q:
        raise BadParameter("pretzel needs at least one column")
    for qi in q:
        if qi < 1:
            raise BadParameter(f"column weight {qi} must be a positive integer")
    n = len(q)
    # Crossing ids, column-major.
    cid = {}
    counter = 1
    for i, qi in enumerate(q):
        for k in range(qi):
            cid[(i, k)] = counter
            counter += 1
    total = counter - 1

    def wire(column: int, corner: str, k: int):
        """Map an exit port to the next (column, k, corner) entry port."""
        if corner in ("BL", "BR") and k + 1 < q[column]:
            return column, k + 1, "TL" if corner == "BL" else "TR"
        if corner in ("TL", "TR") and k - 1 >= 0:
            return column, k - 1, "BL" if corner == "TL" else "BR"
        # Port on the boundary of the column.
        if corner == "TR":  # NE of column
            if column + 1 < n:
                return column + 1, 0, "TL"
            return 0, 0, "TL"  # outer arc over the top back to NW of column 0
        if corner == "TL":  # NW of column
            if column - 1 >= 0:
                return column - 1, 0, "TR"
            return n - 1, 0, "TR"
        if corner == "BR":  # SE of column
            if column + 1 < n:
                return column + 1, q[column + 1] - 1, "BL"
            return 0, q[0] - 1, "BL"
        # corner == "BL", SW of column
        if column - 1 >= 0:
            return column - 1, q[column - 1] - 1, "BR"
        return n - 1, q[n - 1] - 1, "BR"

    visits: list[tuple[int, str, tuple[int, int]]] = []
    start = (0, 0, "TL")
    state = start
    for _ in range(2 * total):
        column, k, corner = state
        crossing = cid[(column, k)]
        kind = OVER if corner in ("TL", "BR") else UNDER
        visits.append((crossing, kind, _PRETZEL_DIRS[corner]))
        exit_corner = _PRETZEL_EXITS[corner]
        state = wire(column, exit_corner, k)
        if state == start:
            break
    if len(visits) != 2 * total:
        raise NotAKnot(
            f"pretzel {tuple(q)} closes up after {len(visits)} visits; "
            "the diagram has more than one component"
        )
    directions: dict[tuple[int, str], tuple[int, int]] = {}
    for crossing, kind, direction in visits:
        directions[(crossing, kind)] = direction
    signs = {}
    for crossing in range(1, total + 1):
        ox, oy = directions[(crossing, OVER)]
        ux, uy = directions[(crossing, UNDER)]
        signs[crossing] = 1 if ox * uy - oy * ux > 0 else -1
    return GaussCode(
        tuple(Visit(crossing, kind, signs[crossing]) for crossing, kind, _ in visits)
    )


# -- helpers used by searches and tests --------------------------------------


def rotate(code: GaussCode, k: int) -> GaussCode:
    if code.is_empty:
        return code
    k %= len(code.visits)
    return GaussCode(code.visits[k:] + code.visits[:k])


def relabel(code: GaussCode, mapping: dict[int, int]) -> GaussCode:
    new = tuple(
        Visit(mapping.get(v.crossing, v.crossing), v.kind, v.sign)
        for v in code.visits
    )
    return GaussCode(new)


def canonical_form(code: GaussCode) -> tuple:
    """Rotation- and relabeling-invariant key (signs kept, ids forgotten)."""
    n = len(code.visits)
    if n == 0:
        return ()
    best = None
    for r in range(n):
        rot = code.visits[r:] + code.visits[:r]
        names: dict[int, int] = {}
        key = []
        for v in rot:
            if v.crossing not in names:
                names[v.crossing] = len(names) + 1
            key.append((names[v.crossing], v.kind, v.sign))
        key_t = tuple(key)
        if best is None or key_t < best:
            best = key_t
    return best


def code_to_json_str(code: GaussCode) -> str:
    return json.dumps(code.to_json(), sort_keys=True)
