"""FastAPI service wrapping the library; run with `uvicorn wirtlab.service:app`.

Domain errors map to 422, resource caps to 429.  All computations are pure
and stateless, so the app can serve many clients concurrently.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__, reports
from .errors import ResourceLimit, WirtlabError
from .schemas import (
    BatchRequest,
    BoundsRequest,
    BuildRequest,
    CodeRequest,
    ColorableRequest,
    ConnectRequest,
    NakanishiRequest,
    TrisectRequest,
    TwistSpinRequest,
    VerifyAlternatingRequest,
    VerifyCoxeterRequest,
    VerifyRequest,
    VolumeRequest,
    WeldedSearchRequest,
)

app = FastAPI(
    title="wirtlab",
    description="Bridge number and meridional rank computations on knot diagrams",
    version=__version__,
)


@app.exception_handler(WirtlabError)
async def domain_error_handler(request: Request, exc: WirtlabError) -> JSONResponse:
    status = 429 if isinstance(exc, ResourceLimit) else 422
    return JSONResponse(
        status_code=status,
        content={"error": type(exc).__name__, "message": str(exc)},
    )


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/parse")
def parse(req: CodeRequest) -> dict:
    return reports.parse_report(req.code)


@app.post("/build")
def build(req: BuildRequest) -> dict:
    if req.family == "torus":
        return reports.build_report("torus", p=req.p, n=req.n)
    if req.family == "pretzel":
        return reports.build_report("pretzel", q=req.q or [])
    return reports.build_report(req.family, weights=req.weights or [])


@app.post("/omega")
def omega(req: CodeRequest) -> dict:
    return reports.omega_report(req.code)


@app.post("/colorable")
def colorable(req: ColorableRequest) -> dict:
    return reports.colorable_report(req.code, req.k)


@app.post("/welded-search")
def welded_search(req: WeldedSearchRequest) -> dict:
    return reports.welded_search_report(req.code, req.budget, req.cap)


@app.post("/presentation")
def presentation(req: CodeRequest) -> dict:
    return reports.presentation_report(req.code)


@app.post("/twist-spin")
def twist_spin(req: TwistSpinRequest) -> dict:
    return reports.twist_spin_report(
        req.presentation.model_dump(exclude_none=True), req.m, req.axis
    )


@app.post("/connect")
def connect(req: ConnectRequest) -> dict:
    return reports.connect_report(
        [p.model_dump(exclude_none=True) for p in req.presentations], req.amalgam
    )


@app.post("/verify")
def verify(req: VerifyRequest) -> dict:
    return reports.verify_report(
        req.presentation.model_dump(exclude_none=True),
        req.target,
        req.images,
        graph_json=req.graph.model_dump() if req.graph else None,
        degree=req.degree,
    )


@app.post("/verify-coxeter")
def verify_coxeter(req: VerifyCoxeterRequest) -> dict:
    return reports.verify_coxeter_report(
        req.code, req.graph.model_dump(), req.labels, req.require_surjective
    )


@app.post("/verify-alternating")
def verify_alternating(req: VerifyAlternatingRequest) -> dict:
    return reports.verify_alternating_report(req.code, req.labels, req.p, req.degree)


@app.post("/nakanishi")
def nakanishi(req: NakanishiRequest) -> dict:
    return reports.nakanishi_report(req.code, req.p, req.twist, req.copies)


@app.post("/trisect")
def trisect(req: TrisectRequest) -> dict:
    return reports.trisect_report(req.b, req.c1, req.c2, req.c3, req.euler)


@app.post("/bounds")
def bounds(req: BoundsRequest) -> dict:
    return reports.bounds_report(req.code, req.rank, req.euler)


@app.post("/volume")
def volume(req: VolumeRequest) -> dict:
    return reports.volume_report(req.tw, req.genus, req.assert_hypotheses)


@app.post("/batch")
def batch(req: BatchRequest) -> dict:
    return reports.batch_report(req.codes)
