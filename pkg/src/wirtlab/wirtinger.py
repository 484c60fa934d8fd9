"""Wirtinger number by seed search, plus a bounded welded move-graph search.

A coloring move at a crossing needs the overstrand and one of the two
understrands colored and colors the other understrand.  Propagation scans
crossings in id order once per round, so traces are deterministic; seed
subsets are enumerated in colexicographic order and the first full coloring
wins, which fixes the witness reported for every diagram.

Reachable-diagram search uses Reidemeister rewrites of the code together
with the exchange of two adjacent Over visits (the overpass slide allowed
for welded diagrams; it leaves every Wirtinger relation untouched because
relations only see which strand carries the Over visit).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .diagram import (
    OVER,
    UNDER,
    GaussCode,
    Visit,
    canonical_form,
    crossing_table,
    overpass_count,
    strands_of,
)
from .errors import ResourceLimit, UnknownStrand

DEFAULT_STRAND_CAP = 64
DEFAULT_VISITED_CAP = 10**6


@dataclass(frozen=True)
class PartialColoring:
    colored: frozenset[int]
    seeds: frozenset[int]
    trace: tuple[tuple[int, int], ...]  # (crossing id, strand colored)

    def is_full(self, code: GaussCode) -> bool:
        return self.colored == {s.id for s in strands_of(code)}


@dataclass(frozen=True)
class OmegaResult:
    omega: int
    witness: PartialColoring
    tried: tuple[tuple[int, int], ...]  # (k, subsets exhausted) for k < omega

    def to_json(self) -> dict:
        return {
            "omega": self.omega,
            "seeds": sorted(self.witness.seeds),
            "trace": [list(step) for step in self.witness.trace],
        }


def propagate(code: GaussCode, seeds: Sequence[int]) -> PartialColoring:
    """Least fixpoint of coloring moves from the seed strands."""
    strand_ids = {s.id for s in strands_of(code)}
    seed_set = frozenset(seeds)
    if not seed_set:
        raise UnknownStrand("seed set must be nonempty")
    unknown = seed_set - strand_ids
    if unknown:
        raise UnknownStrand(f"unknown strand id(s) {sorted(unknown)}")
    table = crossing_table(code)
    order = sorted(table)
    colored = set(seed_set)
    trace: list[tuple[int, int]] = []
    changed = True
    while changed:
        changed = False
        for cid in order:
            info = table[cid]
            if info.over_strand not in colored:
                continue
            a, b = info.in_strand, info.out_strand
            if (a in colored) != (b in colored):
                new = b if a in colored else a
                colored.add(new)
                trace.append((cid, new))
                changed = True
    return PartialColoring(frozenset(colored), seed_set, tuple(trace))


def replay(code: GaussCode, coloring: PartialColoring) -> frozenset[int]:
    """Re-run a recorded trace; returns the strands colored along the way."""
    table = crossing_table(code)
    colored = set(coloring.seeds)
    for cid, strand in coloring.trace:
        info = table[cid]
        others = {info.in_strand, info.out_strand} - {strand}
        legal = info.over_strand in colored and others <= colored
        if not legal or strand in colored:
            raise ValueError(f"illegal trace step ({cid}, {strand})")
        colored.add(strand)
    return frozenset(colored)


def _colex_subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """k-subsets of range(n) in colexicographic order (0-based indices)."""
    if k == 0:
        yield ()
        return
    for last in range(k - 1, n):
        for rest in _colex_subsets(last, k - 1):
            yield rest + (last,)


def _component_filter(code: GaussCode) -> list[frozenset[int]]:
    """Connected components of the strand/crossing incidence graph.

    A seed set that misses a component can never color it, so subsets are
    required to meet every component.  This is the only pruning applied.
    """
    strands = [s.id for s in strands_of(code)]
    adjacency: dict[int, set[int]] = {sid: set() for sid in strands}
    for info in crossing_table(code).values():
        trio = {info.over_strand, info.in_strand, info.out_strand}
        for x in trio:
            adjacency[x] |= trio - {x}
    components: list[frozenset[int]] = []
    unseen = set(strands)
    while unseen:
        root = min(unseen)
        stack, comp = [root], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adjacency[x] - comp)
        unseen -= comp
        components.append(frozenset(comp))
    return components


def is_k_colorable(
    code: GaussCode, k: int, strand_cap: int = DEFAULT_STRAND_CAP
) -> tuple[bool, PartialColoring | None]:
    """True iff some k-subset of strands propagates to a full coloring."""
    if k < 1:
        return False, None
    strands = [s.id for s in strands_of(code)]
    n = len(strands)
    if n > strand_cap:
        raise ResourceLimit(f"{n} strands exceeds cap {strand_cap}")
    if k >= n:
        full = propagate(code, strands)
        return True, full
    components = _component_filter(code)
    if k < len(components):
        return False, None
    all_ids = set(strands)
    for subset in _colex_subsets(n, k):
        seeds = tuple(strands[i] for i in subset)
        if any(comp.isdisjoint(seeds) for comp in components):
            continue
        result = propagate(code, seeds)
        if result.colored == all_ids:
            return True, result
    return False, None


def omega(code: GaussCode, strand_cap: int = DEFAULT_STRAND_CAP) -> OmegaResult:
    """Minimal seed count whose coloring moves color the whole diagram.

    Always between 1 and the overpass count of the diagram.
    """
    strands = [s.id for s in strands_of(code)]
    n = len(strands)
    if n > strand_cap:
        raise ResourceLimit(f"{n} strands exceeds cap {strand_cap}")
    tried: list[tuple[int, int]] = []
    upper = min(n, overpass_count(code))
    components = _component_filter(code)
    all_ids = set(strands)
    for k in range(1, n + 1):
        count = 0
        if k < len(components):
            tried.append((k, 0))
            continue
        for subset in _colex_subsets(n, k):
            seeds = tuple(strands[i] for i in subset)
            if any(comp.isdisjoint(seeds) for comp in components):
                continue
            count += 1
            result = propagate(code, seeds)
            if result.colored == all_ids:
                assert k <= upper, "seed search exceeded the overpass bound"
                return OmegaResult(k, result, tuple(tried))
        tried.append((k, count))
    raise AssertionError("seeding every strand always colors the diagram")


# -- welded move graph --------------------------------------------------------

Move = tuple  # ("kind", args...) descriptors, replayable via apply_move


def _adjacent_pairs(code: GaussCode) -> list[tuple[int, int]]:
    n = len(code.visits)
    return [(i, (i + 1) % n) for i in range(n)] if n > 1 else []


def enumerate_moves(code: GaussCode, crossing_cap: int) -> list[Move]:
    """All one-step rewrites, in a fixed deterministic order."""
    moves: list[Move] = []
    visits = code.visits
    n = len(visits)
    ids = set(code.crossings())

    # R1 removal: the two visits of one crossing are adjacent.
    for i, j in _adjacent_pairs(code):
        if visits[i].crossing == visits[j].crossing:
            moves.append(("r1-", visits[i].crossing))
    # R2 removal: Over visits of two crossings adjacent on one side, Under
    # visits adjacent on the other, opposite signs.
    seen_pairs = set()
    for i, j in _adjacent_pairs(code):
        a, b = visits[i], visits[j]
        if a.crossing == b.crossing or a.kind != b.kind:
            continue
        key = frozenset((a.crossing, b.crossing))
        if key in seen_pairs:
            continue
        pa = code.positions_of(a.crossing)
        pb = code.positions_of(b.crossing)
        other_kind = UNDER if a.kind == OVER else OVER
        idx = 1 if other_kind == UNDER else 0
        qa, qb = pa[idx], pb[idx]
        if (qb - qa) % n in (1, n - 1) and a.sign == -b.sign:
            seen_pairs.add(key)
            moves.append(("r2-", min(a.crossing, b.crossing), max(a.crossing, b.crossing)))
    # Welded overpass slide: swap two adjacent Over visits.
    for i, j in _adjacent_pairs(code):
        if (
            visits[i].kind == OVER
            and visits[j].kind == OVER
            and visits[i].crossing != visits[j].crossing
        ):
            moves.append(("oc", i))
    # R3 slides.
    moves.extend(_r3_moves(code))
    # R1 addition (kink) at every gap, both kink types and signs.
    if code.crossing_count + 1 <= crossing_cap:
        for gap in range(max(n, 1)):
            for first in (OVER, UNDER):
                for sign in (1, -1):
                    moves.append(("r1+", gap, first, sign))
    # R2 addition at every ordered gap pair.
    if code.crossing_count + 2 <= crossing_cap:
        for g1 in range(max(n, 1)):
            for g2 in range(max(n, 1)):
                if n and g1 == g2:
                    continue
                for pattern in ("anti", "par"):
                    for sign in (1, -1):
                        moves.append(("r2+", g1, g2, pattern, sign))
    return moves


def _r3_moves(code: GaussCode) -> list[Move]:
    """Triangle slides: strand passing over (or under) two crossings that
    are adjacent to the two visits of a third crossing."""
    moves: list[Move] = []
    visits = code.visits
    n = len(visits)
    if n < 6:
        return moves

    def find_adjacent(pos: int, crossing: int) -> int | None:
        for q in ((pos - 1) % n, (pos + 1) % n):
            if visits[q].crossing == crossing:
                return q
        return None

    for i, j in _adjacent_pairs(code):
        a, b = visits[i], visits[j]
        if a.crossing == b.crossing or a.kind != b.kind:
            continue
        opposite = UNDER if a.kind == OVER else OVER
        pa = code.positions_of(a.crossing)[1 if opposite == UNDER else 0]
        pb = code.positions_of(b.crossing)[1 if opposite == UNDER else 0]
        for m in sorted(set(code.crossings()) - {a.crossing, b.crossing}):
            mo, mu = code.positions_of(m)
            qa = find_adjacent(pa, m)
            qb = find_adjacent(pb, m)
            if qa is None or qb is None or qa == qb:
                continue
            if {qa, qb} != {mo, mu}:
                continue
            moves.append(("r3", i, pa, qa, pb, qb))
    return moves


def _swap(visits: list[Visit], i: int, j: int) -> None:
    visits[i], visits[j] = visits[j], visits[i]


def apply_move(code: GaussCode, move: Move) -> GaussCode:
    """Replay a move descriptor produced by enumerate_moves."""
    kind = move[0]
    visits = list(code.visits)
    n = len(visits)
    if kind == "r1-":
        return GaussCode(tuple(v for v in visits if v.crossing != move[1]))
    if kind == "r2-":
        drop = {move[1], move[2]}
        return GaussCode(tuple(v for v in visits if v.crossing not in drop))
    if kind == "oc":
        i = move[1]
        _swap(visits, i, (i + 1) % n)
        return GaussCode(tuple(visits))
    if kind == "r3":
        _, i, pa, qa, pb, qb = move
        _swap(visits, i, (i + 1) % n)
        _swap(visits, pa, qa)
        _swap(visits, pb, qb)
        return GaussCode(tuple(visits))
    if kind == "r1+":
        _, gap, first, sign = move
        cid = max(code.crossings(), default=0) + 1
        second = UNDER if first == OVER else OVER
        pair = [Visit(cid, first, sign), Visit(cid, second, sign)]
        return GaussCode(tuple(visits[:gap] + pair + visits[gap:]))
    if kind == "r2+":
        _, g1, g2, pattern, sign = move
        cid = max(code.crossings(), default=0) + 1
        over_block = [Visit(cid, OVER, sign), Visit(cid + 1, OVER, -sign)]
        if pattern == "anti":
            under_block = [Visit(cid + 1, UNDER, -sign), Visit(cid, UNDER, sign)]
        else:
            under_block = [Visit(cid, UNDER, sign), Visit(cid + 1, UNDER, -sign)]
        out = []
        for idx in range(max(n, 1)):
            if idx == g1:
                out.extend(over_block)
            if idx == g2:
                out.extend(under_block)
            if idx < n:
                out.append(visits[idx])
        if n == 0:
            out = over_block + under_block
        return GaussCode(tuple(out))
    raise ValueError(f"unknown move {move!r}")


@dataclass(frozen=True)
class WeldedSearchResult:
    min_omega: int
    moves: tuple[Move, ...]
    code: GaussCode
    visited: int

    def to_json(self) -> dict:
        return {
            "min_omega": self.min_omega,
            "moves": [list(m) for m in self.moves],
            "code": self.code.serialize(),
            "visited": self.visited,
        }


def search_welded_min_omega(
    code: GaussCode,
    budget: int,
    crossing_cap: int,
    visited_cap: int = DEFAULT_VISITED_CAP,
    strand_cap: int = DEFAULT_STRAND_CAP,
) -> WeldedSearchResult:
    """Breadth-first search of the move graph, tracking the least omega seen.

    Virtual and mixed detour moves are identities on codes and are not
    enumerated.  The move sequence returned replays from the input code.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    best = (omega(code, strand_cap=strand_cap).omega, (), code)
    visited = {canonical_form(code)}
    queue: deque[tuple[GaussCode, tuple[Move, ...]]] = deque([(code, ())])
    depth = 0
    while queue and depth < budget:
        depth += 1
        for _ in range(len(queue)):
            current, path = queue.popleft()
            for move in enumerate_moves(current, crossing_cap):
                child = apply_move(current, move)
                key = canonical_form(child)
                if key in visited:
                    continue
                if len(visited) >= visited_cap:
                    raise ResourceLimit(
                        f"welded search visited more than {visited_cap} codes"
                    )
                visited.add(key)
                child_omega = omega(child, strand_cap=strand_cap).omega
                if child_omega < best[0]:
                    best = (child_omega, path + (move,), child)
                queue.append((child, path + (move,)))
    return WeldedSearchResult(best[0], best[1], best[2], len(visited))
