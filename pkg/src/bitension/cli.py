"""Command-line front end; a thin client of the service layer.

By default requests are handled in process (same handlers the HTTP service
routes to); ``--server URL`` posts them to a running instance instead.
Reports go to stdout as canonical JSON (CSV for ``sample``), diagnostics to
stderr.  Exit codes: 0 evaluation done (whatever the verdict), 2 usage
error, 3 domain error.
"""

import argparse
import sys

from pydantic import ValidationError

from .errors import InputError, UsageError
from .reports import canonical_json
from .service import handlers
from .service import models

ROUTES = {
    ("solve", "clifford"): ("/solve/clifford", models.CliffordSolveRequest,
                            handlers.handle_solve_clifford, False),
    ("solve", "zhang"): ("/solve/zhang", models.ZhangSolveRequest,
                         handlers.handle_solve_zhang, False),
    ("solve", "helix"): ("/solve/helix", models.HelixSolveRequest,
                         handlers.handle_solve_helix, False),
    ("solve", "sphere-bundle"): ("/solve/sphere-bundle",
                                 models.SphereBundleSolveRequest,
                                 handlers.handle_solve_sphere_bundle, False),
    ("verify", "curve"): ("/verify/curve", models.CurveVerifyRequest,
                          handlers.handle_verify_curve, False),
    ("verify", "torus"): ("/verify/torus", models.TorusVerifyRequest,
                          handlers.handle_verify_torus, False),
    ("verify", "hypersurface"): ("/verify/hypersurface",
                                 models.HypersurfaceVerifyRequest,
                                 handlers.handle_verify_hypersurface, False),
    ("classify", "helix"): ("/classify/helix", models.HelixClassifyRequest,
                            handlers.handle_classify_helix, False),
    ("sample", "curve"): ("/sample/curve", models.CurveSampleRequest,
                          handlers.handle_sample_curve, True),
}


def _float_list(text: str) -> list:
    try:
        return [float(piece) for piece in text.split(",") if piece != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated reals: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitension",
        description="Biharmonicity solvers and verifiers for sphere and "
                    "projective-space configurations.",
        allow_abbrev=False,
    )
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default runs in process")
    top = parser.add_subparsers(dest="command", required=True)

    solve = top.add_parser("solve", help="closed-form solvers").add_subparsers(
        dest="target", required=True)
    verify = top.add_parser("verify", help="residual verification").add_subparsers(
        dest="target", required=True)
    classify = top.add_parser("classify", help="torsion-class matching").add_subparsers(
        dest="target", required=True)
    sample = top.add_parser("sample", help="CSV curve sampling").add_subparsers(
        dest="target", required=True)

    p = solve.add_parser("clifford", allow_abbrev=False)
    p.add_argument("--m1", type=int, required=True)
    p.add_argument("--m2", type=int, required=True)
    p.add_argument("--tol", type=float, default=None)

    p = solve.add_parser("zhang", allow_abbrev=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=None)

    p = solve.add_parser("helix", allow_abbrev=False)
    p.add_argument("--alpha0", type=float, required=True)
    p.add_argument("--branch", choices=("plus", "minus"), default="plus")
    p.add_argument("--tol", type=float, default=None)

    p = solve.add_parser("sphere-bundle", allow_abbrev=False)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a-sq", dest="a_sq", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = verify.add_parser("curve", allow_abbrev=False)
    p.add_argument("--family", required=True,
                   choices=("tau12-pm1", "tau12-zero-circle",
                            "tau12-zero-helix", "great-circle"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k1", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--s-max", dest="s_max", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = verify.add_parser("torus", allow_abbrev=False)
    p.add_argument("--radii-sq", dest="radii_sq", type=_float_list, required=True,
                   help="comma-separated squared radii summing to 1")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = verify.add_parser("hypersurface", allow_abbrev=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mean-curvature-sq", dest="mean_curvature_sq",
                   type=float, required=True)
    p.add_argument("--second-ff-norm-sq", dest="second_ff_norm_sq",
                   type=float, required=True)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--m-bar", dest="m_bar", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = classify.add_parser("helix", allow_abbrev=False)
    p.add_argument("--k1", type=float, required=True)
    p.add_argument("--k2", type=float, required=True)
    p.add_argument("--k3", type=float, required=True)
    p.add_argument("--torsions", type=_float_list, required=True,
                   help="t12,t13,t14,t23,t24,t34")
    p.add_argument("--tol", type=float, default=None)

    p = sample.add_parser("curve", allow_abbrev=False)
    p.add_argument("--family", required=True,
                   choices=("tau12-pm1", "tau12-zero-circle",
                            "tau12-zero-helix", "great-circle"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k1", type=float, default=None)
    p.add_argument("--ds", type=float, default=None)
    p.add_argument("--count", type=int, default=None)

    return parser


def _build_request(model_cls, args: argparse.Namespace):
    skip = {"command", "target", "server"}
    payload = {
        key: value
        for key, value in vars(args).items()
        if key not in skip and value is not None
    }
    try:
        return model_cls(**payload)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(piece) for piece in first["loc"]) or "request"
        raise UsageError(f"invalid {loc}: {first['msg']}")


def _run_remote(server: str, path: str, request, is_csv: bool) -> str:
    import httpx

    url = server.rstrip("/") + path
    try:
        response = httpx.post(url, json=request.model_dump(), timeout=60.0)
    except httpx.HTTPError as exc:
        raise InputError(f"request to {url} failed: {exc}")
    if response.status_code == 200:
        return response.text
    if response.status_code == 422:
        raise UsageError(f"server rejected the request: {response.text.strip()}")
    try:
        error = response.json().get("error", {})
    except ValueError:
        error = {}
    message = error.get("message", response.text.strip())
    if error.get("category") == "usage":
        raise UsageError(message)
    raise InputError(message)


def run(argv) -> str:
    """Parse argv, evaluate, and return the exact text for stdout."""
    parser = build_parser()
    args = parser.parse_args(argv)
    path, model_cls, handler, is_csv = ROUTES[(args.command, args.target)]
    request = _build_request(model_cls, args)
    if args.server:
        return _run_remote(args.server, path, request, is_csv)
    result = handler(request)
    if is_csv:
        return result
    return canonical_json(result) + "\n"


def main(argv=None) -> int:
    try:
        body = run(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(body)
    return 0


if __name__ == "__main__":
    sys.exit(main())
