"""FastAPI application wrapping the solver/verifier handlers.

Responses are serialized by the package's canonical JSON writer (fixed key
order, 17-digit floats) so that the same request always yields the same
bytes; library input errors map to HTTP 400 with a structured error body,
request-model violations to FastAPI's 422.
"""

from fastapi import FastAPI, Request
from fastapi.responses import PlainTextResponse, Response

from ..errors import InputError, UsageError
from ..reports import canonical_json
from . import handlers, models

app = FastAPI(
    title="bitension",
    version="0.1.0",
    description=(
        "Closed-form solvers and residual verification for biharmonic "
        "curves and Clifford-type configurations in spheres and complex "
        "projective space."
    ),
)


def _report_response(report: dict) -> Response:
    return Response(content=canonical_json(report) + "\n",
                    media_type="application/json")


def _error_response(category: str, message: str, status: int) -> Response:
    body = canonical_json({"error": {"category": category, "message": message}})
    return Response(content=body + "\n", status_code=status,
                    media_type="application/json")


@app.exception_handler(UsageError)
async def usage_error_handler(request: Request, exc: UsageError):
    return _error_response("usage", str(exc), 400)


@app.exception_handler(InputError)
async def input_error_handler(request: Request, exc: InputError):
    return _error_response("domain", str(exc), 400)


@app.get("/")
def index() -> dict:
    return {
        "name": "bitension",
        "schema": 1,
        "endpoints": sorted(
            route.path for route in app.routes if route.path.count("/") > 1
        ),
    }


@app.post("/solve/clifford", response_model=models.Report,
          response_model_by_alias=True)
def solve_clifford(req: models.CliffordSolveRequest):
    return _report_response(handlers.handle_solve_clifford(req))


@app.post("/solve/zhang", response_model=models.Report,
          response_model_by_alias=True)
def solve_zhang(req: models.ZhangSolveRequest):
    return _report_response(handlers.handle_solve_zhang(req))


@app.post("/solve/helix", response_model=models.Report,
          response_model_by_alias=True)
def solve_helix(req: models.HelixSolveRequest):
    return _report_response(handlers.handle_solve_helix(req))


@app.post("/solve/sphere-bundle", response_model=models.Report,
          response_model_by_alias=True)
def solve_sphere_bundle(req: models.SphereBundleSolveRequest):
    return _report_response(handlers.handle_solve_sphere_bundle(req))


@app.post("/verify/curve", response_model=models.Report,
          response_model_by_alias=True)
def verify_curve(req: models.CurveVerifyRequest):
    return _report_response(handlers.handle_verify_curve(req))


@app.post("/verify/torus", response_model=models.Report,
          response_model_by_alias=True)
def verify_torus(req: models.TorusVerifyRequest):
    return _report_response(handlers.handle_verify_torus(req))


@app.post("/verify/hypersurface", response_model=models.Report,
          response_model_by_alias=True)
def verify_hypersurface(req: models.HypersurfaceVerifyRequest):
    return _report_response(handlers.handle_verify_hypersurface(req))


@app.post("/classify/helix", response_model=models.Report,
          response_model_by_alias=True)
def classify_helix(req: models.HelixClassifyRequest):
    return _report_response(handlers.handle_classify_helix(req))


@app.post("/sample/curve", response_class=PlainTextResponse)
def sample_curve(req: models.CurveSampleRequest):
    return PlainTextResponse(handlers.handle_sample_curve(req),
                             media_type="text/csv")
