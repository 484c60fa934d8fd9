"""Coxeter groups from weighted graphs: word problem and reflection labelings.

Vertices are involutive generators; an edge of weight k imposes (st)^k = 1;
missing edges impose no relation.  Words are tuples of vertex names, and a
reflection is stored in core form u s reverse(u), i.e. an odd palindrome.

The word problem is solved by saturating braid moves at fixed length and
deleting adjacent equal pairs until no deletion applies anywhere in the
saturation; a word represents the identity exactly when this reduction
reaches the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .diagram import GaussCode, crossing_table, strands_of
from .errors import (
    BadParameter,
    InconsistentLabeling,
    NotAReflection,
    NotSurjective,
    ResourceLimit,
    UnknownVertex,
    ValidationError,
)

Word = tuple[str, ...]

DEFAULT_WORD_CAP = 64
_SATURATION_CAP = 250_000


@dataclass(frozen=True)
class CoxeterGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertices")
        seen = set()
        for u, v, k in self.edges:
            if u == v:
                raise ValidationError(f"loop at vertex {u!r}")
            if u not in self.vertices or v not in self.vertices:
                raise UnknownVertex(f"edge ({u},{v}) uses an undeclared vertex")
            if k < 2:
                raise ValidationError(f"edge ({u},{v}) has weight {k} < 2")
            key = frozenset((u, v))
            if key in seen:
                raise ValidationError(f"multi-edge between {u} and {v}")
            seen.add(key)

    def weight(self, u: str, v: str) -> int | None:
        """Edge weight, or None when the pair is unrelated (infinite order)."""
        for a, b, k in self.edges:
            if {a, b} == {u, v}:
                return k
        return None

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[u, v, k] for u, v, k in self.edges],
        }

    @staticmethod
    def from_json(data: dict) -> "CoxeterGraph":
        try:
            return CoxeterGraph(
                tuple(str(v) for v in data["vertices"]),
                tuple((str(u), str(v), int(k)) for u, v, k in data["edges"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"bad graph payload: {exc}") from exc


def dihedral_graph(k: int, a: str = "a", b: str = "b") -> CoxeterGraph:
    """The rank-2 graph with one edge of weight k."""
    return CoxeterGraph((a, b), ((a, b, k),))


def reduce_involution(word: Sequence[str]) -> Word:
    """Cancel adjacent equal letters; unique normal form for generators only."""
    stack: list[str] = []
    for letter in word:
        if stack and stack[-1] == letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def _alternating(s: str, t: str, k: int) -> Word:
    return tuple(s if i % 2 == 0 else t for i in range(k))


def _braid_neighbors(graph: CoxeterGraph, word: Word) -> Iterable[Word]:
    n = len(word)
    for u, v, k in graph.edges:
        if k > n:
            continue
        left = _alternating(u, v, k)
        right = _alternating(v, u, k)
        for i in range(n - k + 1):
            chunk = word[i : i + k]
            if chunk == left:
                yield word[:i] + right + word[i + k :]
            elif chunk == right:
                yield word[:i] + left + word[i + k :]


def _check_letters(graph: CoxeterGraph, word: Sequence[str]) -> None:
    bad = set(word) - set(graph.vertices)
    if bad:
        raise UnknownVertex(f"letters {sorted(bad)} not in graph")


def is_identity(
    graph: CoxeterGraph, word: Sequence[str], word_cap: int = DEFAULT_WORD_CAP
) -> bool:
    """Word-problem decision by braid saturation plus ss-deletion."""
    _check_letters(graph, word)
    w = reduce_involution(word)
    if len(w) > word_cap:
        raise ResourceLimit(f"word length {len(w)} exceeds cap {word_cap}")
    while True:
        if not w:
            return True
        if len(w) % 2 == 1:
            return False
        seen = {w}
        frontier = [w]
        shorter: set[Word] = set()
        while frontier:
            current = frontier.pop()
            for i in range(len(current) - 1):
                if current[i] == current[i + 1]:
                    shorter.add(current[:i] + current[i + 2 :])
            for nb in _braid_neighbors(graph, current):
                if nb not in seen:
                    if len(seen) >= _SATURATION_CAP:
                        raise ResourceLimit("braid saturation exceeded its cap")
                    seen.add(nb)
                    frontier.append(nb)
        if not shorter:
            # Every word in the saturation is reduced, so w is a reduced
            # expression of a nontrivial element.
            return False
        w = reduce_involution(min(shorter, key=lambda x: (len(x), x)))


def words_equal(
    graph: CoxeterGraph, w1: Sequence[str], w2: Sequence[str],
    word_cap: int = DEFAULT_WORD_CAP,
) -> bool:
    return is_identity(graph, tuple(w1) + tuple(reversed(tuple(w2))), word_cap)


def shorten(graph: CoxeterGraph, word: Sequence[str], effort: int = 20_000) -> Word:
    """Greedy length reduction: delete an adjacent equal pair as soon as one
    becomes visible under braid moves.  Returns a (not necessarily geodesic)
    short representative of the same element; correctness of comparisons is
    never delegated to this helper."""
    w = reduce_involution(word)
    while True:
        seen = {w}
        frontier = [w]
        shorter: Word | None = None
        while frontier and shorter is None:
            current = frontier.pop()
            for i in range(len(current) - 1):
                if current[i] == current[i + 1]:
                    shorter = current[:i] + current[i + 2 :]
                    break
            if shorter is not None:
                break
            for nb in _braid_neighbors(graph, current):
                if nb not in seen:
                    seen.add(nb)
                    frontier.append(nb)
            if len(seen) > effort:
                break
        if shorter is None:
            return w
        w = reduce_involution(shorter)


def is_reflection_form(word: Sequence[str]) -> bool:
    w = reduce_involution(word)
    return len(w) % 2 == 1 and w == tuple(reversed(w))


def conjugate_reflection(
    graph: CoxeterGraph, reflection: Sequence[str], by: Sequence[str]
) -> Word:
    """Normalized word for by . reflection . by^{-1}."""
    _check_letters(graph, reflection)
    _check_letters(graph, by)
    if not is_reflection_form(reflection):
        raise NotAReflection(f"{''.join(reflection)!r} is not in reflection form")
    by_t = tuple(by)
    return reduce_involution(by_t + tuple(reflection) + tuple(reversed(by_t)))


@dataclass(frozen=True)
class LabelingReport:
    consistent: bool
    surjective: bool
    rank_bound: int | None
    labels: dict[int, Word]

    def to_json(self) -> dict:
        return {
            "consistent": self.consistent,
            "surjective": self.surjective,
            "rank_bound": self.rank_bound,
            "labels": {str(k): list(v) for k, v in sorted(self.labels.items())},
        }


def verify_coxeter_labeling(
    code: GaussCode,
    graph: CoxeterGraph,
    seed_labels: Mapping[int, Sequence[str]],
    require_surjective: bool = True,
    word_cap: int = DEFAULT_WORD_CAP,
) -> LabelingReport:
    """Propagate reflection labels from the seeds and check every crossing.

    The crossing rule labels the outgoing strand with (over)(in)(over);
    since reflections are involutions this is independent of crossing signs.
    Surjectivity is certified by the sufficient condition that every vertex
    occurs verbatim as some strand label.
    """
    strand_ids = {s.id for s in strands_of(code)}
    labels: dict[int, Word] = {}
    for sid, word in seed_labels.items():
        if sid not in strand_ids:
            raise BadParameter(f"unknown strand {sid} in seed labels")
        _check_letters(graph, word)
        if not is_reflection_form(word):
            raise NotAReflection(
                f"seed label {''.join(word)!r} on strand {sid} is not a reflection"
            )
        labels[sid] = shorten(graph, word)
    if not labels:
        raise BadParameter("seed labels must be nonempty")
    table = crossing_table(code)
    changed = True
    while changed:
        changed = False
        for cid in sorted(table):
            info = table[cid]
            over = labels.get(info.over_strand)
            if over is None:
                continue
            a = labels.get(info.in_strand)
            c = labels.get(info.out_strand)
            if a is not None and c is None:
                labels[info.out_strand] = shorten(
                    graph, over + a + tuple(reversed(over))
                )
                changed = True
            elif c is not None and a is None:
                labels[info.in_strand] = shorten(
                    graph, tuple(reversed(over)) + c + over
                )
                changed = True
    missing = strand_ids - set(labels)
    if missing:
        raise BadParameter(
            f"seed labels do not propagate to strands {sorted(missing)}"
        )
    for cid in sorted(table):
        info = table[cid]
        over, a, c = (
            labels[info.over_strand],
            labels[info.in_strand],
            labels[info.out_strand],
        )
        expected = shorten(graph, over + a + tuple(reversed(over)))
        if not words_equal(graph, c, expected, word_cap):
            raise InconsistentLabeling(
                f"label clash at crossing {cid}: strand {info.out_strand} "
                f"carries {''.join(c)!r}, propagation yields {''.join(expected)!r}"
            )
    for sid, word in labels.items():
        if not is_reflection_form(word):
            raise NotAReflection(
                f"propagated label on strand {sid} is not a reflection"
            )
    plain = {word[0] for word in labels.values() if len(word) == 1}
    surjective = plain == set(graph.vertices)
    if require_surjective and not surjective:
        missing_vertices = sorted(set(graph.vertices) - plain)
        raise NotSurjective(
            f"vertices {missing_vertices} never occur as plain strand labels"
        )
    return LabelingReport(
        consistent=True,
        surjective=surjective,
        rank_bound=len(graph.vertices) if surjective else None,
        labels=labels,
    )


def virtual_bbkm_weight_rule(
    region_length: int, virtualizations: int = 0, flanks: int = 0
) -> int:
    """Edge weight that keeps a two-generator twist region closure-consistent
    after the given number of virtualizations and balanced flank moves.

    An odd number of virtualizations forces (xy)^2 = 1; otherwise the weight
    is the surviving conjugation count of the region: each virtualization
    removes one crossing and each balanced flank converts one crossing into
    a label-transparent pair.  Weights are clamped to at least 2.
    """
    if region_length < 1:
        raise BadParameter("region length must be at least 1")
    if virtualizations < 0 or virtualizations > region_length:
        raise BadParameter("virtualization count out of range")
    if flanks < 0 or flanks > region_length - virtualizations:
        raise BadParameter("flank count out of range")
    if virtualizations % 2 == 1:
        return 2
    return max(2, region_length - virtualizations - flanks)


# -- finite dihedral model ----------------------------------------------------


@dataclass(frozen=True)
class DihedralElement:
    """Element (rotation, flip) of the dihedral group of order 2k."""

    rot: int
    flip: int
    k: int

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        if self.k != other.k:
            raise ValueError("mixed dihedral orders")
        rot = (self.rot + (-other.rot if self.flip else other.rot)) % self.k
        return DihedralElement(rot, self.flip ^ other.flip, self.k)

    def inverse(self) -> "DihedralElement":
        if self.flip:
            return self
        return DihedralElement((-self.rot) % self.k, 0, self.k)

    @property
    def is_identity(self) -> bool:
        return self.rot == 0 and self.flip == 0


def dihedral_images(k: int, a: str = "a", b: str = "b") -> dict[str, DihedralElement]:
    """Faithful images of the I2(k) generators in the dihedral group."""
    if k < 2:
        raise BadParameter("dihedral order parameter must be at least 2")
    return {a: DihedralElement(0, 1, k), b: DihedralElement(1, 1, k)}


def dihedral_word(images: Mapping[str, DihedralElement], word: Sequence[str]) -> DihedralElement:
    k = next(iter(images.values())).k
    result = DihedralElement(0, 0, k)
    for letter in word:
        result = result * images[letter]
    return result


def dihedral_permutation(e: DihedralElement) -> tuple[int, ...]:
    """Regular action on the 2k group elements, as a permutation tuple.

    Element (r, f) is the point 2*r + f; the permutation sends x to e*x.
    """
    images = []
    for r in range(e.k):
        for f in (0, 1):
            y = e * DihedralElement(r, f, e.k)
            images.append(2 * y.rot + y.flip + 1)
    return tuple(images)


class CoxeterEvaluator:
    """Evaluator over C(graph): elements are words, equality via is_identity."""

    def __init__(self, graph: CoxeterGraph, word_cap: int = DEFAULT_WORD_CAP):
        self.graph = graph
        self.word_cap = word_cap

    def identity(self) -> Word:
        return ()

    def multiply(self, x: Word, y: Word) -> Word:
        return reduce_involution(tuple(x) + tuple(y))

    def invert(self, x: Word) -> Word:
        return tuple(reversed(tuple(x)))

    def power(self, x: Word, n: int) -> Word:
        base = tuple(x) if n >= 0 else self.invert(x)
        return reduce_involution(base * abs(n))

    def is_identity(self, x: Word) -> bool:
        return is_identity(self.graph, x, self.word_cap)
