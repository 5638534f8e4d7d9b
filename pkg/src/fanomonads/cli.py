"""Command line front end. Every command prints one JSON document."""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import hilbert
from .exact import Matrix
from .exact.field import DEFAULT_PRIME, MAX_PRIME, PrimeField
from .invariants import (
    WALL_LIMITS,
    apolar_quartic,
    dd_invariant,
    sample_wall_net,
    split_net,
    wall_semistable,
    zero_net,
)
from .jumping import (
    apply_to_minors,
    jumping_conics_curve,
    jumping_conics_matrix,
    jumping_curve_chi,
    jumping_curve_degree,
    jumping_lines_matrix,
    maximal_minors,
)
from .models import GeometryTag, SamplingError, build_model, build_v22_model, model_from_json
from .monads import (
    MonadData,
    delta_check,
    net_to_monad,
    sample_degenerate_quadric_monad,
    sample_net,
    sample_quadric_monad,
    trial_rng,
    validate_monad,
)
from .pencil import Pencil, branch_points, branch_sextic, is_smooth_pencil, sextic_coefficients
from .tensors import Net

FORMAT = 1


class ConfigError(ValueError):
    pass


def _field(prime: int) -> PrimeField:
    if prime % 2 == 0 or prime >= MAX_PRIME:
        raise ConfigError(f"prime must be odd and below 2^62, got {prime}")
    try:
        return PrimeField(prime)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _geometry(name: str, k: int | None, allowed=("quadric", "v5", "v22")) -> GeometryTag:
    try:
        g = GeometryTag.of(name)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if g.kind not in allowed:
        raise ConfigError(f"geometry {g.kind} not supported by this command; choose from {list(allowed)}")
    if k is not None:
        try:
            g.check_k(k)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return g


def _doc(command: str, **body) -> dict:
    return {"format": FORMAT, "command": command, **body}


# --------------------------------------------------------------------------
# commands


def sample_document(geometry: str, k: int, prime: int, seed: int) -> dict:
    g = _geometry(geometry, k)
    f = _field(prime)
    model = build_model(g, f, random.Random(seed))
    rng = trial_rng(seed, 0)
    net = None
    if g.kind == "quadric":
        monad = sample_quadric_monad(k, f, rng)
    else:
        net = sample_net(g, k, model, rng)
        monad = net_to_monad(net)
    return _doc("sample", geometry=g.kind, k=k, prime=prime, seed=seed,
                model=model.to_json(seed), net=net.to_json() if net else None, monad=monad.to_json())


def cmd_sample(args) -> tuple[int, dict]:
    return 0, sample_document(args.geometry, args.k, args.prime, args.seed)


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    if doc.get("format") != FORMAT or doc.get("command") != "sample":
        raise ConfigError("input is not a sample document of this format")
    return doc


def cmd_validate(args) -> tuple[int, dict]:
    if args.input:
        doc = _load(args.input)
    else:
        if args.geometry is None or args.k is None:
            raise ConfigError("validate needs --input or both --geometry and --k")
        doc = sample_document(args.geometry, args.k, args.prime, args.seed)
    model = model_from_json(doc["model"])
    f = model.field
    monad = MonadData.from_json(doc["monad"], f)
    _geometry(monad.geometry.kind, monad.k)
    report = validate_monad(monad, model, args.npoints, trial_rng(doc["seed"], 1))
    body = report.to_json()
    if doc.get("net") is not None:
        net = Net.from_json(f, doc["net"])
        body["reassembly_ok"] = net_to_monad(net).reassemble() == monad.reassemble()
    ok = report.passed and body.get("reassembly_ok", True)
    return (0 if ok else 1), _doc("validate", seed=doc["seed"], prime=f.characteristic, report=body)


def cmd_dd(args) -> tuple[int, dict]:
    _geometry("quadric", args.k)
    f = _field(args.prime)
    rng = trial_rng(args.seed, 0)
    if args.degenerate:
        monad, point = sample_degenerate_quadric_monad(args.k, f, rng)
        extra = {"degenerate_point": point.to_json()}
    else:
        monad = sample_quadric_monad(args.k, f, rng)
        extra = {}
    value = dd_invariant(monad.a, monad.d)
    return 0, _doc("dd", k=args.k, prime=args.prime, seed=args.seed, value=value,
                   verdict="zero" if f.is_zero(value) else "nonzero", **extra)


def cmd_delta(args) -> tuple[int, dict]:
    g = _geometry(args.geometry, args.k)
    f = _field(args.prime)
    if args.trials < 1:
        raise ConfigError("--trials must be positive")
    report = delta_check(g, args.k, args.trials, f, args.seed, jobs=args.jobs)
    return (0 if report.all_match else 1), _doc("delta", report=report.to_json())


def cmd_jumping(args) -> tuple[int, dict]:
    g = _geometry(args.geometry, args.k, allowed=("quadric", "v22"))
    f = _field(args.prime)
    model = build_model(g, f, random.Random(args.seed))
    rng = trial_rng(args.seed, 0)
    if g.kind == "quadric":
        monad = sample_quadric_monad(args.k, f, rng)
        b = jumping_lines_matrix(monad)
        minors = maximal_minors(b)
        hb = all(p.is_zero() for p in apply_to_minors(b, minors))
        degree = jumping_curve_degree(args.k)
        body = {"kind": "jumping lines", "degree": degree, "hilbert_chi": hilbert.poly_to_json(jumping_curve_chi(args.k)),
                "matrix": b.to_json(), "minors": [m.to_json() for m in minors], "hilbert_burch": hb}
        ok = hb and any(not m.is_zero() for m in minors)
    else:
        net = sample_net(g, args.k, model, rng)
        curve = jumping_conics_curve(net)
        body = {"kind": "jumping conics", "degree": curve.degree(), "curve": curve.to_json(),
                "symmetric": jumping_conics_matrix(net).is_symmetric(), "generic_splitting": not curve.is_zero()}
        ok = body["symmetric"] and body["generic_splitting"] and curve.degree() == args.k
    return (0 if ok else 1), _doc("jumping", geometry=g.kind, k=args.k, prime=args.prime, seed=args.seed, **body)


def cmd_apolar(args) -> tuple[int, dict]:
    f = _field(args.prime)
    if f.size < 11:
        raise ConfigError("the V22 model needs a prime >= 11")
    model = build_v22_model(f, random.Random(args.seed))
    quartic = apolar_quartic(model)
    return 0, _doc("apolar", prime=args.prime, seed=args.seed, quartic=quartic.to_json(),
                   B_gram=[g.tolist() for g in model.grams])


def cmd_semistable(args) -> tuple[int, dict]:
    if args.q not in WALL_LIMITS:
        raise ConfigError("--q must be 2 or 3")
    if not 1 <= args.k <= WALL_LIMITS[args.q]:
        raise ConfigError(f"k must be in 1..{WALL_LIMITS[args.q]} for q = {args.q}")
    if args.q == 2:
        raise ConfigError("nets over F_2 are not supported: the Gram convention needs odd characteristic")
    net = sample_wall_net(args.q, args.k, random.Random(args.seed))
    if args.net == "zero":
        net = zero_net(net)
    elif args.net == "split":
        net = split_net(net)
    w = wall_semistable(net)
    return 0, _doc("semistable", q=args.q, k=args.k, seed=args.seed, net_kind=args.net, net=net.to_json(),
                   witness=w.to_json(), verified=w.verify(net))


def _parse_diag(text: str, f) -> list:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise ConfigError("--diagonal expects six comma separated integers") from None
    if len(vals) != 6:
        raise ConfigError("--diagonal expects six entries")
    return [f(v) for v in vals]


def cmd_pencil(args) -> tuple[int, dict]:
    f = _field(args.prime)
    if args.diagonal:
        q1 = Matrix.identity(f, 6)
        q2 = Matrix.diag(f, _parse_diag(args.diagonal, f))
    else:
        from .invariants import random_symmetric

        rng = random.Random(args.seed)
        q1, q2 = random_symmetric(f, 6, rng), random_symmetric(f, 6, rng)
    try:
        p = Pencil(q1, q2)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    s = branch_sextic(p)
    return 0, _doc("pencil", prime=args.prime, seed=args.seed, sextic=sextic_coefficients(s),
                   smooth=is_smooth_pencil(p), rational_branch_points=[list(x) for x in branch_points(p)])


def cmd_chi(args) -> tuple[int, dict]:
    g = _geometry(args.geometry, None)
    if args.k < 1:
        raise ConfigError("k must be positive")
    if g.kind == "v22":
        inst = hilbert.chi_instanton(g, g.c2(args.k))
        return 0, _doc("chi", geometry=g.kind, k=args.k, c2=g.c2(args.k), chi_instanton=hilbert.poly_to_json(inst),
                       identity=None, note="the monad side is not available on V22")
    inst = hilbert.chi_instanton(g, args.k)
    mon = hilbert.chi_monad(g, args.k)
    same = inst == mon
    return (0 if same else 1), _doc("chi", geometry=g.kind, k=args.k, chi_instanton=hilbert.poly_to_json(inst),
                                    chi_monad=hilbert.poly_to_json(mon), identity=same)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanomonads", description="Instanton monads on Q, V5 and V22 over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, geometry=True, k=True, k_required=True):
        if geometry:
            p.add_argument("--geometry", required=k_required, choices=["quadric", "v5", "v22"])
        if k:
            p.add_argument("--k", type=int, required=k_required)
        p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", help="write the JSON document here instead of stdout")

    p = sub.add_parser("sample", help="sample a monad (and its net)")
    common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("validate", help="fibrewise validation of a sampled monad")
    common(p, k_required=False)
    p.add_argument("--input", help="a document written by `sample`")
    p.add_argument("--npoints", type=int, default=200)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("dd", help="DD invariant of a quadric monad")
    common(p, geometry=False)
    p.add_argument("--degenerate", action="store_true", help="use a monad that fails surjectivity at a point")
    p.set_defaults(func=cmd_dd)

    p = sub.add_parser("delta", help="tangent/orbit dimension count")
    common(p)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("jumping", help="jumping lines (quadric) or conics (v22)")
    common(p)
    p.set_defaults(func=cmd_jumping)

    p = sub.add_parser("apolar", help="apolar quartic of a V22 model")
    common(p, geometry=False, k=False)
    p.set_defaults(func=cmd_apolar)

    p = sub.add_parser("semistable", help="Wall criterion by subspace enumeration")
    common(p, geometry=False)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--net", choices=["sampled", "zero", "split"], default="sampled")
    p.set_defaults(func=cmd_semistable)

    p = sub.add_parser("pencil", help="branch sextic of a pencil of quadrics in P^5")
    common(p, geometry=False, k=False)
    p.add_argument("--diagonal", help="Q1 = I, Q2 = diag(d1,...,d6)")
    p.set_defaults(func=cmd_pencil)

    p = sub.add_parser("chi", help="Hilbert polynomial identity")
    common(p)
    p.set_defaults(func=cmd_chi)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, doc = args.func(args)
    except ConfigError as exc:
        print(json.dumps({"format": FORMAT, "error": str(exc)}), file=sys.stderr)
        return 2
    except SamplingError as exc:
        code, doc = 1, _doc(args.command, error=str(exc))
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
