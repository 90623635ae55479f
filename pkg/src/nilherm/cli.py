"""Command-line client for classification, scans and verification.

All commands run in-process by default; with ``--server URL`` they are
sent to a running service instead, so the CLI is a thin client over the
same handlers either way.

Exit codes: 0 success, 1 verification failures, 2 invalid input,
3 point not in the moduli space.
"""

from __future__ import annotations

import argparse
import json
import sys

from nilherm.errors import NilhermError, NotInModuliError
from nilherm.service import handlers, schemas

_EXIT_CODES = {
    "invalid_input": 2,
    "not_in_moduli": 3,
    "not_nilpotent": 2,
    "error": 2,
}

CSV_HEADER = (
    "point_id,u0re,u0im,u1re,u1im,u2re,u2im,u3re,u3im,w1,w2,w3,w4,pattern,label"
)


class _RemoteError(Exception):
    def __init__(self, message: str, code: str):
        super().__init__(message)
        self.code = code


def _make_client(server: str):
    import httpx

    return httpx.Client(base_url=server, timeout=600.0)


def _dispatch(server, path, request, response_model, handler):
    if not server:
        return handler(request)
    with _make_client(server) as client:
        resp = client.post(path, json=request.model_dump())
        if resp.status_code >= 400:
            try:
                body = resp.json()
            except ValueError:
                body = {}
            raise _RemoteError(
                body.get("error", f"HTTP {resp.status_code}"),
                body.get("code", "invalid_input"),
            )
        return response_model.model_validate(resp.json())


def _dump(model) -> str:
    return json.dumps(model.model_dump(by_alias=True), sort_keys=True, indent=2)


def _pattern(vanishing) -> str:
    return "".join("1" if v else "0" for v in vanishing)


def _csv_row(point_id, point: schemas.PointModel, sig: schemas.SignatureModel) -> str:
    coords = ",".join(f"{re!r},{im!r}" for re, im in point.cp3)
    norms = ",".join(repr(x) for x in (sig.w1, sig.w2, sig.w3, sig.w4))
    return f"{point_id},{coords},{norms},{_pattern(sig.vanishing)},{sig.label}"


def _algebra_payload(ref: str) -> tuple[str, dict | None]:
    """Catalog name stays a name; a file path is inlined for transport."""
    from nilherm import catalog

    if ref in catalog.names():
        return ref, None
    from nilherm.liealg import LieAlgebra

    return ref, LieAlgebra.load(ref).to_dict()


def cmd_classify(args) -> int:
    name, spec = _algebra_payload(args.algebra)
    req = schemas.ClassifyRequest(
        algebra=name,
        algebra_spec=spec,
        point=args.point,
        tol=args.tol,
        nonvanish_floor=args.nonvanish_floor,
        seed=args.seed,
    )
    resp = _dispatch(args.server, "/classify", req, schemas.ClassifyResponse, handlers.handle_classify)
    if args.format == "csv":
        print(CSV_HEADER)
        print(_csv_row(0, resp.point, resp.signature))
    else:
        print(_dump(resp))
    return 0


def cmd_scan(args) -> int:
    name, spec = _algebra_payload(args.algebra)
    req = schemas.ScanRequest(
        algebra=name,
        algebra_spec=spec,
        locus=args.locus,
        n=args.n,
        seed=args.seed,
        tol=args.tol,
        nonvanish_floor=args.nonvanish_floor,
    )
    resp = _dispatch(args.server, "/scan", req, schemas.ScanResponse, handlers.handle_scan)
    if args.format == "csv":
        lines = [CSV_HEADER]
        lines += [_csv_row(r.point_id, r.point, r.signature) for r in resp.rows]
        text = "\n".join(lines)
    else:
        text = _dump(resp)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_verify(args) -> int:
    req = schemas.VerifyRequest(
        suite=args.suite,
        seed=args.seed,
        tol=args.tol,
        nonvanish_floor=args.nonvanish_floor,
    )
    resp = _dispatch(args.server, "/verify", req, schemas.VerifyResponse, handlers.handle_verify)
    if args.json:
        print(_dump(resp))
    else:
        print(resp.summary)
    return 0 if resp.passed else 1


def cmd_cohomology(args) -> int:
    name, spec = _algebra_payload(args.algebra)
    req = schemas.CohomologyRequest(algebra=name, algebra_spec=spec)
    resp = _dispatch(args.server, "/cohomology", req, schemas.CohomologyResponse, handlers.handle_cohomology)
    print(_dump(resp))
    return 0


def cmd_construct(args) -> int:
    name, spec = _algebra_payload(args.algebra)
    req = schemas.CosymplecticRequest(
        algebra=name,
        algebra_spec=spec,
        random_gram=args.random_gram,
        seed=args.seed,
    )
    resp = _dispatch(
        args.server, "/construct-cosymplectic", req, schemas.CosymplecticResponse, handlers.handle_cosymplectic
    )
    print(_dump(resp))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("nilherm.service.app:app", host=args.host, port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilherm",
        description="Almost Hermitian structures on 6-dimensional nilpotent Lie algebras",
    )
    parser.add_argument("--server", default="", help="URL of a running service; default runs in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="vanishing threshold")
    common.add_argument("--nonvanish-floor", type=float, default=1e-6, help="definite non-vanishing floor")
    common.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("classify", parents=[common], help="classify one moduli point")
    p.add_argument("--algebra", default="iwasawa", help="catalog name or algebra JSON file")
    p.add_argument("--point", required=True, help="cp3:[...], omega:[...], pab:{...} or a locus spec")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", parents=[common], help="classify samples of a locus")
    p.add_argument("--algebra", default="iwasawa")
    p.add_argument("--locus", default="cp3:uniform")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default="", help="write the table to a file")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=("theorem1", "theorem2", "theorem3", "prop4", "oracles"))
    p.add_argument("--json", action="store_true", help="emit the full JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cohomology", help="Betti numbers, nilpotency step, bases")
    p.add_argument("--algebra", default="iwasawa")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("construct-cosymplectic", parents=[common], help="build a cosymplectic point")
    p.add_argument("--algebra", default="iwasawa")
    p.add_argument("--random-gram", action="store_true", help="use a seeded random metric")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotInModuliError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 3
    except NilhermError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return _EXIT_CODES.get(ex.code, 2)
    except _RemoteError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return _EXIT_CODES.get(ex.code, 2)
    except FileNotFoundError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
