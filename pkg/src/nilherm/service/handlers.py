"""Request handlers: the single implementation behind HTTP and the CLI."""

from __future__ import annotations

import json

import numpy as np

from nilherm import catalog
from nilherm.errors import InvalidInputError
from nilherm.exterior import Multivector
from nilherm.ghclass import classify, cosymplectic_construct, w4_norm
from nilherm.hermitian import J_from_omega, omega_from_J
from nilherm.liealg import LieAlgebra
from nilherm.moduli import SO4Element, cp3_from_J, omega_pab, parse_locus
from nilherm.service import schemas


def resolve_algebra(name: str, spec: dict | None) -> LieAlgebra:
    if spec is not None:
        return LieAlgebra.from_dict(spec)
    return catalog.resolve_algebra(name)


def _parse_complex_entry(x) -> complex:
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, str):
        try:
            return complex(x.replace(" ", ""))
        except ValueError:
            raise InvalidInputError(f"bad complex number {x!r}") from None
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return complex(float(x[0]), float(x[1]))
    raise InvalidInputError(f"bad complex number {x!r}")


def parse_point(spec: str, seed: int = 0) -> Multivector:
    """Resolve a point spec to a fundamental 2-form.

    Accepted forms: ``cp3:[u0,u1,u2,u3]`` (entries numeric, "a+bj" strings
    or [re, im] pairs), ``omega:[15 coefficients]``, ``pab:{"P": 4x4,
    "a": .., "b": ..}``, or any locus spec, from which one point is drawn
    with the given seed.
    """
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "cp3" and arg.strip() != "uniform":
        try:
            entries = json.loads(arg)
        except json.JSONDecodeError as ex:
            raise InvalidInputError(f"bad cp3 point {arg!r}: {ex}") from ex
        if not isinstance(entries, list) or len(entries) != 4:
            raise InvalidInputError("cp3 point needs 4 homogeneous coordinates")
        from nilherm.moduli import from_cp3

        u = np.array([_parse_complex_entry(x) for x in entries])
        return omega_from_J(from_cp3(u))
    if kind == "omega":
        try:
            entries = json.loads(arg)
        except json.JSONDecodeError as ex:
            raise InvalidInputError(f"bad omega coefficients {arg!r}: {ex}") from ex
        if not isinstance(entries, list) or len(entries) != 15:
            raise InvalidInputError("omega needs its 15 degree-2 coefficients")
        w = Multivector.from_coeff_vector(2, [float(x) for x in entries])
        J_from_omega(w)  # validates membership
        return w
    if kind == "pab":
        try:
            data = json.loads(arg)
            P = SO4Element(np.asarray(data["P"], dtype=float))
            a, b = float(data["a"]), float(data["b"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as ex:
            raise InvalidInputError(f"bad pab point {arg!r}: {ex}") from ex
        return omega_pab(P, a, b)
    locus = parse_locus(spec)
    return locus.sample(np.random.default_rng(seed))


def _point_model(omega: Multivector) -> schemas.PointModel:
    u = cp3_from_J(J_from_omega(omega)).u
    return schemas.PointModel(
        cp3=[[float(z.real), float(z.imag)] for z in u],
        omega=[float(x.real) for x in omega.coeff_vector(2)],
    )


def _signature_model(sig) -> schemas.SignatureModel:
    return schemas.SignatureModel(**sig.to_dict())


def handle_classify(req: schemas.ClassifyRequest) -> schemas.ClassifyResponse:
    alg = resolve_algebra(req.algebra, req.algebra_spec)
    omega = parse_point(req.point, req.seed)
    sig = classify(alg, J_from_omega(omega), req.tol, req.nonvanish_floor)
    return schemas.ClassifyResponse(
        algebra=alg.name,
        point=_point_model(omega),
        signature=_signature_model(sig),
    )


def handle_scan(req: schemas.ScanRequest) -> schemas.ScanResponse:
    alg = resolve_algebra(req.algebra, req.algebra_spec)
    locus = parse_locus(req.locus)
    rng = np.random.default_rng(req.seed)
    rows = []
    mins: dict[str, float] = {}
    for k in range(req.n):
        omega = locus.sample(rng)
        sig = classify(alg, J_from_omega(omega), req.tol, req.nonvanish_floor)
        rows.append(
            schemas.ScanRow(
                point_id=k,
                point=_point_model(omega),
                signature=_signature_model(sig),
            )
        )
        for i, v in enumerate(sig.norms):
            key = f"w{i + 1}"
            if key not in mins or v < mins[key]:
                mins[key] = v
    return schemas.ScanResponse(
        algebra=alg.name,
        locus=req.locus,
        seed=req.seed,
        tol=req.tol,
        nonvanish_floor=req.nonvanish_floor,
        n_requested=req.n,
        rows=rows,
        min_norms=mins,
    )


def handle_verify(req: schemas.VerifyRequest) -> schemas.VerifyResponse:
    counts = req.counts or {}
    report = catalog.run_suite(
        req.suite, seed=req.seed, tol=req.tol, floor=req.nonvanish_floor, **counts
    )
    data = report.to_dict()
    data["summary"] = report.summary()
    return schemas.VerifyResponse(**data)


def handle_cohomology(req: schemas.CohomologyRequest) -> schemas.CohomologyResponse:
    alg = resolve_algebra(req.algebra, req.algebra_spec)
    prof = alg.cohomology()
    return schemas.CohomologyResponse(
        algebra=alg.name,
        betti=list(prof.betti),
        step=prof.step,
        nilpotent=prof.step is not None,
        kernel_basis=[[float(x.real) for x in b.coeff_vector(1)] for b in prof.kernel_basis],
        image_basis=[[float(x.real) for x in b.coeff_vector(2)] for b in prof.image_basis],
    )


def handle_cosymplectic(req: schemas.CosymplecticRequest) -> schemas.CosymplecticResponse:
    alg = resolve_algebra(req.algebra, req.algebra_spec)
    if req.random_gram:
        rng = np.random.default_rng(req.seed)
        m = rng.normal(size=(6, 6))
        alg = LieAlgebra(alg.name, alg.d_gen, gram=m @ m.T + np.eye(6), dist=alg.dist)
    omega = cosymplectic_construct(alg)
    back = alg.orthonormal_frame().from_orthonormal(omega)
    return schemas.CosymplecticResponse(
        algebra=alg.name,
        omega=[float(x.real) for x in omega.coeff_vector(2)],
        omega_original_frame=[float(x.real) for x in back.coeff_vector(2)],
        w4=w4_norm(alg, J_from_omega(omega)),
        gram=None if alg.gram is None else alg.gram.tolist(),
    )
