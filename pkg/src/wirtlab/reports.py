"""Report builders shared by the command line and the HTTP service.

Each function returns a plain dict with deterministic content; callers
serialize with sorted keys so output bytes are stable for fixed input.
"""

from __future__ import annotations

from typing import Any, Mapping, Sequence

from . import alexander, alternating, coxeter, diagram, presentations, surfaces, wirtinger
from .errors import BadParameter

SCHEMA = "1"


def _base(command: str) -> dict[str, Any]:
    return {"schema": SCHEMA, "command": command}


def parse_report(text: str) -> dict:
    code = diagram.parse_gauss_code(text)
    out = _base("parse")
    out.update(
        code=code.serialize(),
        json=code.to_json(),
        crossings=code.crossing_count,
        strands=len(diagram.strands_of(code)),
        overpasses=diagram.overpass_count(code),
    )
    return out


def build_report(family: str, **params: Any) -> dict:
    if family == "torus":
        code = diagram.build_torus_2braid(int(params["p"]), int(params["n"]))
    elif family == "pretzel":
        code = diagram.build_pretzel([int(x) for x in params["q"]])
    elif family == "chain":
        code = diagram.build_twist_chain([int(x) for x in params["weights"]])
    else:
        raise BadParameter(f"unknown family {family!r}")
    out = _base("build")
    out.update(family=family, code=code.serialize(), crossings=code.crossing_count)
    return out


def omega_report(text: str, strand_cap: int | None = None) -> dict:
    code = diagram.parse_gauss_code(text)
    kwargs = {} if strand_cap is None else {"strand_cap": strand_cap}
    result = wirtinger.omega(code, **kwargs)
    out = _base("omega")
    out.update(result.to_json())
    out["overpasses"] = diagram.overpass_count(code)
    return out


def colorable_report(text: str, k: int, strand_cap: int | None = None) -> dict:
    code = diagram.parse_gauss_code(text)
    kwargs = {} if strand_cap is None else {"strand_cap": strand_cap}
    ok, witness = wirtinger.is_k_colorable(code, k, **kwargs)
    out = _base("colorable")
    out.update(k=k, colorable=ok)
    if witness is not None:
        out["seeds"] = sorted(witness.seeds)
        out["trace"] = [list(step) for step in witness.trace]
    return out


def welded_search_report(
    text: str, budget: int, cap: int, visited_cap: int | None = None
) -> dict:
    code = diagram.parse_gauss_code(text)
    kwargs = {} if visited_cap is None else {"visited_cap": visited_cap}
    result = wirtinger.search_welded_min_omega(code, budget, cap, **kwargs)
    out = _base("welded-search")
    out.update(result.to_json())
    out["start_omega"] = wirtinger.omega(code).omega
    return out


def presentation_report(text: str) -> dict:
    code = diagram.parse_gauss_code(text)
    pres = presentations.wirtinger_presentation(code)
    out = _base("presentation")
    out.update(presentation=pres.to_json())
    return out


def twist_spin_report(pres_json: Mapping, m: int, axis: str | None = None) -> dict:
    pres = presentations.GroupPresentation.from_json(pres_json)
    spun = presentations.twist_spin(pres, m, axis)
    out = _base("twist-spin")
    out.update(presentation=spun.to_json())
    return out


def connect_report(
    pres_jsons: Sequence[Mapping], amalgam: Sequence[Sequence[str]] | None = None
) -> dict:
    summands = [presentations.GroupPresentation.from_json(p) for p in pres_jsons]
    choices = [tuple(pair) for pair in amalgam] if amalgam else None
    total = presentations.connected_sum_presentation(summands, choices)
    out = _base("connect")
    out.update(presentation=total.to_json())
    return out


def verify_report(
    pres_json: Mapping,
    target: str,
    images: Mapping[str, str],
    graph_json: Mapping | None = None,
    degree: int | None = None,
) -> dict:
    pres = presentations.GroupPresentation.from_json(pres_json)
    evaluator: presentations.Evaluator
    mapped: dict[str, Any] = {}
    if target == "coxeter":
        if graph_json is None:
            raise BadParameter("coxeter target needs a graph")
        graph = coxeter.CoxeterGraph.from_json(graph_json)
        evaluator = coxeter.CoxeterEvaluator(graph)
        for gen, word in images.items():
            mapped[gen] = tuple(word.split())
    elif target == "alternating":
        if degree is None:
            raise BadParameter("alternating target needs a degree")
        evaluator = alternating.PermutationEvaluator(degree)
        for gen, cycles in images.items():
            mapped[gen] = alternating.parse_cycles(cycles, degree)
    else:
        raise BadParameter(f"unknown target {target!r}")
    failures = presentations.homomorphism_failures(pres, mapped, evaluator)
    out = _base("verify")
    out.update(
        target=target,
        holds=not failures,
        failed_relators=[f.to_json() for f in failures],
    )
    return out


def verify_coxeter_report(
    text: str,
    graph_json: Mapping,
    labels: Mapping[str, str],
    require_surjective: bool = True,
) -> dict:
    code = diagram.parse_gauss_code(text)
    graph = coxeter.CoxeterGraph.from_json(graph_json)
    seeds = {int(sid): tuple(word.split()) for sid, word in labels.items()}
    report = coxeter.verify_coxeter_labeling(
        code, graph, seeds, require_surjective=require_surjective
    )
    out = _base("verify-coxeter")
    out.update(report.to_json())
    return out


def verify_alternating_report(
    text: str, labels: Mapping[str, str], p: int, degree: int | None = None
) -> dict:
    code = diagram.parse_gauss_code(text)
    parsed = {
        int(sid): alternating.parse_cycles(cycles, degree)
        for sid, cycles in labels.items()
    }
    m = degree
    if m is None:
        m = max(perm.degree for perm in parsed.values())
        parsed = {
            sid: alternating.parse_cycles(str(perm), m) for sid, perm in parsed.items()
        }
    labeling = alternating.CycleLabeling(m, p, parsed)
    report = alternating.verify_perm_labeling(code, labeling)
    generates, order = alternating.generates_alternating(
        list(parsed.values()), m
    )
    out = _base("verify-alternating")
    out.update(report.to_json())
    out.update(degree=m, p=p, seeds_generate_alternating=generates, closure_order=order)
    return out


def nakanishi_report(
    text: str, p: int = 2, twist: int | None = None, copies: int = 1
) -> dict:
    code = diagram.parse_gauss_code(text)
    pres = presentations.wirtinger_presentation(code)
    if twist is not None:
        pres = presentations.twist_spin(pres, twist)
    if copies < 1:
        raise BadParameter("copies must be at least 1")
    if copies > 1:
        pres = presentations.connected_sum_presentation([pres] * copies)
    bound = alexander.nakanishi_lower_bound(pres, p)
    out = _base("nakanishi")
    out.update(bound.to_json())
    return out


def trisect_report(b: int, c1: int, c2: int, c3: int, euler: int) -> dict:
    params = surfaces.validate_trisection(b, c1, c2, c3, euler)
    out = _base("trisect")
    out.update(params.to_json())
    out["patch_number"] = params.patch_number
    out["lower_bound_for_b"] = surfaces.trisection_lower_bound(
        params.patch_number, euler
    )
    return out


def bounds_report(text: str, rank: int | None = None, euler: int = 0) -> dict:
    code = diagram.parse_gauss_code(text)
    ledger = surfaces.tube_bounds(code, verified_rank=rank, euler=euler)
    out = _base("bounds")
    out.update(ledger.to_json())
    return out


def volume_report(tw: int, genus: int, assert_hypotheses: bool) -> dict:
    bounds = surfaces.volume_bounds(tw, genus, assert_hypotheses)
    out = _base("volume")
    out.update(bounds.to_json())
    return out


def batch_entry(line_number: int, text: str) -> dict:
    """Omega for one manifest line; failures are isolated per entry."""
    from .errors import WirtlabError

    entry: dict[str, Any] = {"line": line_number, "input": text}
    try:
        code = diagram.parse_gauss_code(text)
        result = wirtinger.omega(code)
        entry.update(
            omega=result.omega,
            seeds=sorted(result.witness.seeds),
            crossings=code.crossing_count,
        )
    except WirtlabError as exc:
        entry["error"] = {"type": type(exc).__name__, "message": str(exc)}
    return entry


def batch_report(lines: Sequence[str], workers: int = 4) -> dict:
    """Per-line omega results; order matches the manifest regardless of
    completion order."""
    from concurrent.futures import ThreadPoolExecutor

    jobs = [
        (i + 1, line.strip())
        for i, line in enumerate(lines)
        if line.strip() and not line.strip().startswith("#")
    ]
    out = _base("batch")
    if not jobs:
        out.update(entries=[], total=0, failed=0)
        return out
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        entries = list(pool.map(lambda job: batch_entry(*job), jobs))
    out.update(
        entries=entries,
        total=len(entries),
        failed=sum(1 for e in entries if "error" in e),
    )
    return out
