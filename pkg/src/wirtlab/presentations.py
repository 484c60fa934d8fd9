"""Meridional group presentations: Wirtinger generators and relators,
central-power quotients for spun diagrams, zig-zag amalgamated sums, and
two-generator certificates for sums of cyclically twisted summands.

Words are kept in free reduction only; equality of elements is always
delegated to an evaluator (a permutation group or a reflection group), so
no word problem is solved here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Protocol, Sequence

from .diagram import GaussCode, crossing_table, strands_of
from .errors import BadParameter, NotCoprime, UnknownGenerator


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, int], ...]

    @staticmethod
    def of(*letters: tuple[str, int]) -> "Word":
        return Word(Word._reduce(letters))

    @staticmethod
    def _reduce(letters: Sequence[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
        stack: list[tuple[str, int]] = []
        for gen, exp in letters:
            if exp == 0:
                continue
            if stack and stack[-1][0] == gen:
                merged = stack[-1][1] + exp
                stack.pop()
                if merged:
                    stack.append((gen, merged))
            else:
                stack.append((gen, exp))
        return tuple(stack)

    def __mul__(self, other: "Word") -> "Word":
        return Word(Word._reduce(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def power(self, n: int) -> "Word":
        if n == 0:
            return Word(())
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def to_json(self) -> list:
        return [[g, e] for g, e in self.letters]

    @staticmethod
    def from_json(data: Sequence) -> "Word":
        return Word.of(*((str(g), int(e)) for g, e in data))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return ".".join(g if e == 1 else f"{g}^{e}" for g, e in self.letters)


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    meridian_map: tuple[tuple[int, str], ...] | None = None
    twist_index: int | None = None
    amalgam: tuple[tuple[str, str], ...] | None = None

    def __post_init__(self) -> None:
        declared = set(self.generators)
        if len(declared) != len(self.generators):
            raise BadParameter("duplicate generators")
        for r in self.relators:
            stray = r.generators() - declared
            if stray:
                raise UnknownGenerator(f"relator {r} uses undeclared {sorted(stray)}")

    def meridian_of(self, strand_id: int) -> str:
        for sid, gen in self.meridian_map or ():
            if sid == strand_id:
                return gen
        raise UnknownGenerator(f"no meridian recorded for strand {strand_id}")

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "generators": list(self.generators),
            "relators": [r.to_json() for r in self.relators],
        }
        if self.twist_index is not None:
            out["twist"] = self.twist_index
        if self.amalgam is not None:
            out["amalgam"] = [list(pair) for pair in self.amalgam]
        return out

    @staticmethod
    def from_json(data: Mapping) -> "GroupPresentation":
        return GroupPresentation(
            tuple(str(g) for g in data["generators"]),
            tuple(Word.from_json(r) for r in data["relators"]),
            twist_index=data.get("twist"),
            amalgam=tuple(tuple(p) for p in data["amalgam"]) if "amalgam" in data else None,
        )


def wirtinger_presentation(code: GaussCode) -> GroupPresentation:
    """One generator per strand; at each crossing with incoming a, over b,
    outgoing c and sign e the relator is c^-1 b^e a b^-e."""
    strands = strands_of(code)
    names = {s.id: f"x{s.id}" for s in strands}
    relators = []
    for cid, info in sorted(crossing_table(code).items()):
        b, a, c = names[info.over_strand], names[info.in_strand], names[info.out_strand]
        relators.append(
            Word.of((c, -1), (b, info.sign), (a, 1), (b, -info.sign))
        )
    return GroupPresentation(
        tuple(names[s.id] for s in strands),
        tuple(r for r in relators if not r.is_empty),
        meridian_map=tuple((s.id, names[s.id]) for s in strands),
    )


def twist_spin(pres: GroupPresentation, m: int, axis: str | None = None) -> GroupPresentation:
    """Add the relators making the m-th power of the axis meridian central:
    axis^-m x axis^m x^-1 for every other generator x.  With m = 0 all the
    new relators reduce away and the presentation is unchanged apart from
    the recorded twist index."""
    if axis is None:
        axis = pres.generators[0]
    if axis not in pres.generators:
        raise UnknownGenerator(f"axis {axis!r} is not a generator")
    extra = []
    for g in pres.generators:
        if g == axis:
            continue
        relator = Word.of((axis, -m), (g, 1), (axis, m), (g, -1))
        if not relator.is_empty:
            extra.append(relator)
    return GroupPresentation(
        pres.generators,
        pres.relators + tuple(extra),
        meridian_map=pres.meridian_map,
        twist_index=m,
        amalgam=pres.amalgam,
    )


def _rename(pres: GroupPresentation, index: int) -> GroupPresentation:
    mapping = {g: f"{g}.{index}" for g in pres.generators}
    return GroupPresentation(
        tuple(mapping[g] for g in pres.generators),
        tuple(
            Word.of(*((mapping[g], e) for g, e in r.letters)) for r in pres.relators
        ),
        twist_index=pres.twist_index,
    )


def connected_sum_presentation(
    summands: Sequence[GroupPresentation],
    amalgam_choices: Sequence[tuple[str, str]] | None = None,
) -> GroupPresentation:
    """Disjoint union plus one meridian identification per adjacent pair.

    Generators of summand i are renamed g -> "g.i" (1-based).  The default
    amalgam alternates between first and second generators in a zig-zag:
    junction i identifies the first generators when i is odd and the second
    generators when i is even.  The chosen pairs are recorded on the result.
    """
    if not summands:
        raise BadParameter("need at least one summand")
    renamed = [_rename(p, i + 1) for i, p in enumerate(summands)]
    if len(renamed) == 1:
        return summands[0]
    junctions: list[tuple[str, str]] = []
    if amalgam_choices is not None:
        if len(amalgam_choices) != len(renamed) - 1:
            raise BadParameter("need one amalgam choice per adjacent pair")
        junctions = [tuple(pair) for pair in amalgam_choices]
    else:
        for i in range(1, len(renamed)):
            pick = 0 if i % 2 == 1 else 1
            left = summands[i - 1].generators[min(pick, len(summands[i - 1].generators) - 1)]
            right = summands[i].generators[min(pick, len(summands[i].generators) - 1)]
            junctions.append((f"{left}.{i}", f"{right}.{i + 1}"))
    generators = tuple(g for p in renamed for g in p.generators)
    relators = [r for p in renamed for r in p.relators]
    declared = set(generators)
    for left, right in junctions:
        if left not in declared or right not in declared:
            raise UnknownGenerator(f"amalgam pair ({left}, {right}) not declared")
        relators.append(Word.of((left, 1), (right, -1)))
    return GroupPresentation(
        generators, tuple(relators), amalgam=tuple(junctions)
    )


# -- two-generator certificates ------------------------------------------------


@dataclass(frozen=True)
class CertificateStep:
    j: int
    partial_product: int  # m_1 * ... * m_{j-1}
    a: int
    b: int
    word: Word
    equals: str

    def to_json(self) -> dict:
        return {
            "j": self.j,
            "M": self.partial_product,
            "a": self.a,
            "b": self.b,
            "word": self.word.to_json(),
            "equals": self.equals,
        }


@dataclass(frozen=True)
class TwoGeneratorCertificate:
    m_list: tuple[int, ...]
    M: int
    a: int
    b: int
    generating_pair: tuple[str, str]
    steps: tuple[CertificateStep, ...]

    def to_json(self) -> dict:
        return {
            "m": list(self.m_list),
            "M": self.M,
            "a": self.a,
            "b": self.b,
            "generating_pair": list(self.generating_pair),
            "steps": [s.to_json() for s in self.steps],
        }


def two_generator_certificate(m_list: Sequence[int]) -> TwoGeneratorCertificate:
    """Certificate that y1 together with the last summand's far meridian
    generates the zig-zag amalgamated sum when the twist exponents are
    pairwise coprime.

    For each j the step witnesses y1^(a M_j) z_j^(b m_j) = t_j, where
    M_j = m_1...m_{j-1}, a M_j + b m_j = 1, z_j is y_j for even j and x_j
    for odd j, and t_j is the meridian amalgamated with summand j-1.
    """
    ms = tuple(int(m) for m in m_list)
    if len(ms) < 2:
        raise BadParameter("need at least two summands")
    for m in ms:
        if abs(m) < 2:
            raise BadParameter(f"twist exponent {m} must have |m| >= 2")
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            if math.gcd(ms[i], ms[j]) != 1:
                raise NotCoprime(f"{ms[i]} and {ms[j]} share a factor")
    steps = []
    for j in range(len(ms), 1, -1):
        partial = math.prod(ms[: j - 1])
        g, a, b = _egcd(partial, ms[j - 1])
        assert g == 1
        z = f"y{j}" if j % 2 == 0 else f"x{j}"
        t = f"x{j}" if j % 2 == 0 else f"y{j}"
        word = Word.of(("y1", a * partial), (z, b * ms[j - 1]))
        steps.append(CertificateStep(j, partial, a, b, word, t))
    n = len(ms)
    pair = ("y1", f"y{n}" if n % 2 == 0 else f"x{n}")
    top = steps[0]
    return TwoGeneratorCertificate(ms, top.partial_product, top.a, top.b, pair, tuple(steps))


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if a == 0:
        return b, 0, 1
    g, x, y = _egcd(b % a, a)
    return g, y - (b // a) * x, x


# -- evaluators ----------------------------------------------------------------


class Evaluator(Protocol):
    def identity(self) -> Any: ...

    def multiply(self, x: Any, y: Any) -> Any: ...

    def invert(self, x: Any) -> Any: ...

    def power(self, x: Any, n: int) -> Any: ...

    def is_identity(self, x: Any) -> bool: ...


def evaluate_word(word: Word, images: Mapping[str, Any], evaluator: Evaluator) -> Any:
    result = evaluator.identity()
    for gen, exp in word.letters:
        if gen not in images:
            raise UnknownGenerator(f"no image supplied for generator {gen!r}")
        result = evaluator.multiply(result, evaluator.power(images[gen], exp))
    return result


def homomorphism_failures(
    pres: GroupPresentation, images: Mapping[str, Any], evaluator: Evaluator
) -> list[Word]:
    """Relators whose image is not the identity."""
    missing = set(pres.generators) - set(images)
    if missing:
        raise UnknownGenerator(f"images missing for {sorted(missing)}")
    return [
        r
        for r in pres.relators
        if not evaluator.is_identity(evaluate_word(r, images, evaluator))
    ]


def verify_homomorphism(
    pres: GroupPresentation, images: Mapping[str, Any], evaluator: Evaluator
) -> bool:
    """True iff every relator maps to the identity in the target."""
    return not homomorphism_failures(pres, images, evaluator)
