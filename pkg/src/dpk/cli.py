"""dpk command line: JSON-in, JSON-out pipelines over the library.

Exit codes: 0 success, 1 usage errors, 2 domain errors (inconsistent
evidence, inconclusive certificates, refused enumerations).  All
randomized commands are deterministic for a fixed --seed; seeds and
budgets are echoed into every artifact.  Errors are emitted as JSON on
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .classify import Evidence, PointRecord, classify, full_table
from .cohomology import (
    deep_scan,
    h1_cyclic,
    kperp_basis,
    make_certificate,
    scan_group_h1,
)
from .counting import SurfaceModel, count_points, default_budget, is_smooth_model
from .errors import DpkError, InconsistentEvidence, TooLarge
from .finitefield import QQ, FiniteField
from .groebner import veronese_general_position
from .lattice import PicLattice
from .pointless import (
    PAdicCubic,
    Perturbation,
    build_pointless_cubic,
    smoothness_prime,
    verify_pointless,
)
from .poly import MultiPoly
from .weyl import closure_matrices, element_from_word

PAPER_FORM_1 = "x*y^2 + x^2*z - x*y*z + x*z^2 + y*z^2"
PAPER_FORM_2 = "x^2*y - x*y^2 + x^2*z + x*y*z - y^2*z + x*z^2"


def _emit(args, payload, code=0):
    payload = {"schema": 1, **payload}
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def _fail(message, code=2):
    print(json.dumps({"schema": 1, "error": message}), file=sys.stderr)
    return code


def _parse_word(text):
    if not text:
        return ()
    return tuple(int(x) for x in text.replace(" ", "").split(","))


def cmd_table(args):
    return _emit(args, {"table": full_table()})


def cmd_lattice(args):
    lat = PicLattice(args.degree)
    if args.what == "exceptional":
        classes = lat.exceptional_classes()
        return _emit(
            args,
            {
                "degree": args.degree,
                "count": len(classes),
                "classes": [c.to_json() for c in classes],
            },
        )
    if args.what == "roots":
        rs = lat.root_system()
        return _emit(
            args,
            {
                "degree": args.degree,
                "type": rs.type_label,
                "count": len(rs.roots),
                "roots": [r.to_json() for r in rs.roots],
                "simple_roots": [r.to_json() for r in rs.simple_roots],
            },
        )
    if args.what == "adjacency":
        e = [int(x) for x in args.cls.replace(" ", "").split(",")]
        adj = lat.exceptional_adjacency(e)
        return _emit(
            args,
            {
                "degree": args.degree,
                "class": e,
                "count": len(adj),
                "meeting": [c.to_json() for c in adj],
            },
        )
    raise DpkError(f"unknown lattice query {args.what}")


def cmd_h1(args):
    lat = PicLattice(args.degree)
    word = _parse_word(args.word)
    g = element_from_word(lat, word)
    sub = kperp_basis(lat) if args.kperp else None
    h1 = h1_cyclic(g, sublattice=sub)
    cert = make_certificate(args.degree, word, h1)
    return _emit(
        args,
        {
            "degree": args.degree,
            "word": list(word),
            "order": g.order,
            "lattice": "K-perp" if args.kperp else "Pic",
            "h1": h1.to_json(),
            "conclusion": cert.conclusion,
        },
    )


def cmd_h1_scan(args):
    lat = PicLattice(args.degree)
    if args.degree <= 2 and not args.deep:
        return _fail(
            f"full enumeration for degree {args.degree} is large; pass --deep to run it"
        )
    if args.deep or args.degree == 2:
        result = deep_scan(lat, cache=not args.no_cache)
        payload = result.to_json()
        payload["any_nontrivial"] = result.nontrivial_count > 0
        return _emit(args, payload)
    mats = closure_matrices(lat)
    hist, nmats, nfactors = scan_group_h1(lat, mats)
    nontrivial = sum(v for k, v in hist.items() if k)
    return _emit(
        args,
        {
            "degree": args.degree,
            "group_order": len(mats),
            "histogram": sorted([list(k), v] for k, v in hist.items()),
            "nontrivial_count": nontrivial,
            "any_nontrivial": nontrivial > 0,
            "witness_matrix": nmats[0] if nmats else None,
            "witness_h1": list(nfactors[0]) if nfactors else None,
        },
    )


def _load_json_arg(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def cmd_count(args):
    data = _load_json_arg(args.coeffs)
    if "kind" in data:
        surface = SurfaceModel.from_json(data)
        if args.kind and args.kind != surface.kind:
            raise DpkError(f"--kind {args.kind} conflicts with file kind {surface.kind}")
    else:
        if not args.kind:
            raise DpkError("--kind required when the file has no kind")
        field = FiniteField(args.q) if args.q else None
        coeff_field = field if field else QQ
        from .counting import KIND_INFO

        forms = [
            MultiPoly.from_string(coeff_field, KIND_INFO[args.kind]["vars"], s)
            for s in data["forms"]
        ]
        surface = SurfaceModel(args.kind, field, forms)
    if surface.field is None and not args.q:
        raise DpkError("--q required for integer-coefficient surfaces")
    field = surface.field or FiniteField(args.q)
    if args.q and field.q != args.q:
        raise DpkError(f"--q {args.q} conflicts with the surface field of size {field.q}")
    pc = count_points(surface, field)
    smooth = None
    if args.smooth:
        smooth = is_smooth_model(surface.reduce(field))
    out = {
        "surface": surface.to_json(),
        "count": pc.to_json(),
        "congruent_1_mod_q": (pc.count - 1) % field.q == 0,
        "budget": default_budget(),
    }
    if smooth is not None:
        out["smooth"] = smooth
    return _emit(args, out)


def cmd_pointless_cubic(args):
    perts = []
    if args.perturb:
        for row in _load_json_arg(args.perturb)["perturbations"]:
            perts.append(
                Perturbation(
                    i=row["i"],
                    c=row["c"],
                    g=MultiPoly.from_string(QQ, ("x", "y", "z"), row["g"]),
                )
            )
    surface = build_pointless_cubic(
        args.p, seed=args.seed, perturbations=perts, paper_line=args.paper_line
    )
    cert = verify_pointless(surface)
    payload = surface.to_json()
    payload["seed"] = args.seed
    payload["certificate"] = cert.to_json()
    payload["certificate"]["smoothness_prime"] = surface.provenance.get("smoothness_prime")
    return _emit(args, payload)


def cmd_verify_pointless(args):
    data = _load_json_arg(args.file)
    surface = PAdicCubic.from_json(data)
    cert = verify_pointless(surface)
    aux = smoothness_prime(surface)
    payload = surface.to_json()
    payload["certificate"] = cert.to_json()
    payload["certificate"]["smoothness_prime"] = aux
    code = 0 if cert.verdict == "NoQpPoints" else 2
    ret = _emit(args, payload)
    if code:
        _fail("pointlessness certificate is Inconclusive")
    return code or ret


def cmd_blunk(args):
    from .brauer import minimal_point_degree, triple_from_json

    data = _load_json_arg(args.config)
    if args.model:
        data["model"] = args.model
    triple = triple_from_json(data)
    degree = minimal_point_degree(triple)
    return _emit(
        args,
        {
            "model": triple.model,
            "minimal_point_degree": degree,
            "B_split": triple.b.is_split,
            "Q_split": triple.q.is_split,
            "config": triple.to_json(),
        },
    )


def cmd_classify(args):
    if args.evidence:
        data = _load_json_arg(args.evidence)
        data.setdefault("degree", args.degree)
        if args.field:
            data.setdefault("field_kind", args.field.capitalize())
        ev = Evidence.from_json(data)
    else:
        ev = Evidence(args.degree, args.field.capitalize())
    report = classify(ev)
    payload = report.to_json()
    payload["evidence"] = ev.to_json()
    return _emit(args, payload)


def cmd_general_position(args):
    if args.paper_forms:
        c1s, c2s = PAPER_FORM_1, PAPER_FORM_2
    else:
        if not (args.c1 and args.c2):
            raise DpkError("provide --c1 and --c2, or --paper-forms")
        c1s, c2s = args.c1, args.c2
    field = FiniteField(args.q) if args.q else QQ
    c1 = MultiPoly.from_string(field, ("x", "y", "z"), c1s)
    c2 = MultiPoly.from_string(field, ("x", "y", "z"), c2s)
    report = veronese_general_position(c1, c2)
    payload = report.to_json()
    payload["c1"] = c1s
    payload["c2"] = c2s
    payload["field"] = field.label() if isinstance(field, FiniteField) else "QQ"
    return _emit(args, payload, code=0 if report.general_position else 2)


def cmd_smooth(args):
    data = _load_json_arg(args.file)
    if "p" in data and "form" in data:  # p-adic cubic artifact
        surface = PAdicCubic.from_json(data)
        aux = smoothness_prime(surface)
        return _emit(
            args,
            {"p": surface.p, "smooth": aux is not None, "smoothness_prime": aux},
            code=0 if aux is not None else 2,
        )
    surface = SurfaceModel.from_json(data)
    if surface.field is None:
        raise DpkError("finite-field surface required; reduce integer models first")
    smooth = is_smooth_model(surface)
    return _emit(
        args,
        {"surface": surface.to_json(), "smooth": smooth},
        code=0 if smooth else 2,
    )


def build_parser():
    ap = argparse.ArgumentParser(
        prog="dpk",
        description="del Pezzo surface arithmetic toolkit (exact, JSON pipelines)",
    )
    ap.add_argument("--version", action="version", version=f"dpk {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("table", help="the degree-of-irrationality table")
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("lattice", help="Picard lattice enumerations")
    p.add_argument("what", choices=["exceptional", "roots", "adjacency"])
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--class", dest="cls", help="comma-separated divisor class (adjacency)")
    common(p)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("h1", help="H^1 of a single reflection word")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--word", default="", help="comma-separated simple-reflection indices")
    p.add_argument("--kperp", action="store_true", help="restrict to the K-orthogonal lattice")
    common(p)
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("h1-scan", help="H^1 over the full Weyl group")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--deep", action="store_true", help="allow the 2.9M-element degree-2 scan")
    p.add_argument("--no-cache", action="store_true")
    common(p)
    p.set_defaults(func=cmd_h1_scan)

    p = sub.add_parser("count", help="point count of a surface model")
    p.add_argument("--kind", choices=["cubic", "quadric_pair", "weighted_quartic", "weighted_sextic"])
    p.add_argument("--q", type=int, help="field size (prime) when not in the file")
    p.add_argument("--coeffs", required=True, help="surface JSON file, or - for stdin")
    p.add_argument("--smooth", action="store_true", help="also run the smoothness certificate")
    common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("pointless-cubic", help="build a pointless cubic over Q_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--paper-line", action="store_true", help="pin the classical Q_11 line")
    p.add_argument("--perturb", help="JSON file with perturbation terms")
    common(p)
    p.set_defaults(func=cmd_pointless_cubic)

    p = sub.add_parser("verify-pointless", help="verify a pointless-cubic artifact")
    p.add_argument("file", nargs="?", default="-", help="surface JSON file, or - for stdin")
    common(p)
    p.set_defaults(func=cmd_verify_pointless)

    p = sub.add_parser("blunk", help="minimal point degree of a degree-6 triple")
    p.add_argument("--config", required=True, help="triple JSON file, or - for stdin")
    p.add_argument("--model", choices=["number", "local"])
    common(p)
    p.set_defaults(func=cmd_blunk)

    p = sub.add_parser("classify", help="possible degrees of irrationality from evidence")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--field", choices=["finite", "local", "number", "arbitrary"], required=True)
    p.add_argument("--evidence", help="evidence JSON file, or - for stdin")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("general-position", help="degree-9 residual general position check")
    p.add_argument("--c1", help="first cubic form in x, y, z")
    p.add_argument("--c2", help="second cubic form in x, y, z")
    p.add_argument("--q", type=int, help="prime field size (default: rationals)")
    p.add_argument("--paper-forms", action="store_true", help="use the pinned witness forms")
    common(p)
    p.set_defaults(func=cmd_general_position)

    p = sub.add_parser("smooth", help="smoothness certificate for a surface artifact")
    p.add_argument("--file", required=True, help="surface JSON file, or - for stdin")
    common(p)
    p.set_defaults(func=cmd_smooth)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args) or 0
    except InconsistentEvidence as exc:
        return _fail(f"inconsistent evidence: {exc}")
    except TooLarge as exc:
        return _fail(f"refused: {exc}")
    except DpkError as exc:
        return _fail(str(exc))
    except FileNotFoundError as exc:
        print(json.dumps({"schema": 1, "error": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
