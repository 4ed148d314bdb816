"""Command-line front end (``padic-arr`` / ``python -m padic_arrangements``).

Global options may also be set through environment variables named
PADIC_ARR_<OPTION>, e.g. PADIC_ARR_P=3.  Explicit flags win over the
environment, which wins over the built-in defaults.

Exit codes: 0 success, 1 a check failed, 2 bad configuration or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

from .arrangements import Arrangement, classify_uni, compatible_family, rank
from .cech import torus_complex, twisted_complex, twisted_concentration, xdt_graded_ht
from .complexes import cohomology_dict
from .errors import ArrangementError, ConfigError, PredictionMismatch
from .harness import SUITES, normalize_config, run_suite
from .limits import (
    MonomialBox,
    Measure,
    check_filtered_condition,
    check_restriction_inclusion,
    kummer_kernel_certificate,
    kummer_reduce,
    power_system,
    surjectivity_certificate,
    verify_log_exp,
    zero_mass_basis,
    zero_mass_rank,
)
from .projective import canonicalize, enumerate_points, project
from .serialization import dumps, load_arrangement, parse_ints, parse_members, schema_tag

ENV_PREFIX = "PADIC_ARR_"

GLOBALS = {
    "p": (int, 2),
    "n": (int, 2),
    "d": (int, 1),
    "seed": (int, 0),
    "format": (str, "json"),
    "cap": (int, 10**6),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _global_parent() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    g = parent.add_argument_group("global options")
    g.add_argument("--p", type=int, default=argparse.SUPPRESS, help="residue characteristic")
    g.add_argument("--n", type=int, default=argparse.SUPPRESS, help="precision / order")
    g.add_argument("--d", type=int, default=argparse.SUPPRESS, help="projective dimension")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks")
    g.add_argument("--format", choices=("json", "text", "csv"), default=argparse.SUPPRESS)
    return parent


def _cap_parent() -> argparse.ArgumentParser:
    parent = _Parser(add_help=False)
    parent.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="enumeration size cap")
    return parent


def _arrangement_args(sp):
    sp.add_argument("--file", help="arrangement JSON document")
    sp.add_argument("--members", help='dual vectors, e.g. "1,0,0;1,2,0"')
    sp.add_argument("--flavor", choices=("closed", "open", "algebraic"), default="closed")


def build_parser() -> argparse.ArgumentParser:
    common = _global_parent()
    capped = _cap_parent()
    parser = _Parser(prog="padic-arr", description=__doc__.splitlines()[0], parents=[common, capped])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    sp = sub.add_parser("rank", parents=[common], help="rank of an arrangement")
    _arrangement_args(sp)
    sp = sub.add_parser("classify-uni", parents=[common], help="fibration type of the union of tubes")
    _arrangement_args(sp)

    sub.add_parser("enumerate", parents=[common, capped], help="list P^d(Z/p^n)")

    sp = sub.add_parser("project", parents=[common], help="reduce a point to a lower level")
    sp.add_argument("--coords", required=True)
    sp.add_argument("--to", type=int, required=True)

    sp = sub.add_parser("cech-twisted", parents=[common], help="multidegree piece of the twisted Cech complex")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--alpha", required=True)

    sp = sub.add_parser("torus-h", parents=[common], help="cohomology of the torus complex")
    sp.add_argument("--t", type=int, required=True)

    # --cap here is the degree cap of the graded table, not the enumeration cap
    sp = sub.add_parser("xdt-graded", parents=[common], help="graded top cohomology table")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--cap", dest="degree_cap", type=int, required=True)

    sp = sub.add_parser("restriction-check", parents=[common], help="monomial restriction certificate")
    sp.add_argument("--dims", type=int, required=True)
    sp.add_argument("--ranges", default="2", help='exponent bound, or per-coordinate "annulus:-2:2,disk:0:3"')
    sp.add_argument("--prec", type=int, default=4)
    sp.add_argument("--steps", type=int, default=1)
    sp.add_argument("--r", type=int, default=0)
    sp.add_argument("--s", type=int, default=0)

    sp = sub.add_parser("filtered-check", parents=[common], help="filtered-group inclusion model checker")
    sp.add_argument("--system", choices=("positive", "negative", "constant"), default="positive")
    sp.add_argument("--c", type=int, default=1)
    sp.add_argument("--levels", type=int, default=6)
    sp.add_argument("--depth", type=int, default=4)

    sp = sub.add_parser("measures", parents=[common], help="zero-mass lattices along a compatible family")
    sp.add_argument("--family", required=True, help='algebraic seed, e.g. "1,0;1,4"')
    sp.add_argument("--level", type=int, required=True)

    sp = sub.add_parser("kummer", parents=[common], help="mod-m reduction of zero-mass lattices")
    sp.add_argument("--modulus", type=int, required=True)
    sp.add_argument("--family", required=True)
    sp.add_argument("--level", type=int, default=3)
    sp.add_argument("--weights", default=None, help="weights of a measure at that level")

    sp = sub.add_parser("logexp", parents=[common], help="truncated log/exp isometry scan")
    sp.add_argument("--prec", type=int, default=6)
    sp.add_argument("--v0", type=int, default=2)

    sp = sub.add_parser("verify-all", parents=[common], help="run verification suites")
    sp.add_argument("--suite", choices=("all",) + SUITES, default="all")
    sp.add_argument("--t-max", type=int, default=None)
    sp.add_argument("--box", type=int, default=None)
    sp.add_argument("--samples", type=int, default=None)
    return parser


def resolve_globals(ns: argparse.Namespace, environ=None) -> dict:
    env = os.environ if environ is None else environ
    out = {}
    for key, (kind, default) in GLOBALS.items():
        if key in vars(ns):
            out[key] = getattr(ns, key)
            continue
        raw = env.get(ENV_PREFIX + key.upper())
        if raw is None:
            out[key] = default
            continue
        try:
            out[key] = kind(raw)
        except ValueError:
            raise ConfigError(f"{ENV_PREFIX}{key.upper()}={raw!r} is not a valid {kind.__name__}") from None
    if out["format"] not in ("json", "text", "csv"):
        raise ConfigError(f"unknown format {out['format']!r}")
    return out


# -- output ---------------------------------------------------------------------

def _text(doc, indent: int = 0) -> str:
    pad = " " * indent
    lines = []
    if isinstance(doc, dict):
        width = max((len(str(k)) for k in doc), default=0)
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k):<{width}}  {v}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, dict):
                lines.append(pad + "  ".join(f"{k}={item[k]}" for k in sorted(item)))
            else:
                lines.append(f"{pad}{item}")
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(lines)


def _csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: v if not isinstance(v, list) else " ".join(map(str, v)) for k, v in r.items()})
    return buf.getvalue()


def emit(doc: dict, fmt: str, rows_key: str | None = None, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(dumps(doc))
    elif fmt == "csv":
        rows = doc.get(rows_key) if rows_key else None
        if not isinstance(rows, list):
            rows = [{k: v for k, v in doc.items() if not isinstance(v, (dict, list))}]
        out.write(_csv(rows))
    else:
        out.write(_text(doc) + "\n")


# -- verbs ----------------------------------------------------------------------

def _arrangement(ns, g) -> Arrangement:
    if ns.file:
        return load_arrangement(ns.file)
    if not ns.members:
        raise ConfigError("give --file or --members")
    order = None if ns.flavor == "algebraic" else g["n"]
    try:
        return Arrangement.from_vectors(ns.flavor, g["p"], order, parse_members(ns.members))
    except ArrangementError as exc:
        raise ConfigError(str(exc)) from None


def _doc(kind: str, **body) -> dict:
    return {"schema": schema_tag(kind), **body}


def cmd_rank(ns, g):
    A = _arrangement(ns, g)
    return _doc("rank", arrangement=A.as_dict(), rank=rank(A)), None, 0


def cmd_classify(ns, g):
    A = _arrangement(ns, g)
    return _doc("unishape", arrangement=A.as_dict(), shape=classify_uni(A).as_dict()), None, 0


def cmd_enumerate(ns, g):
    pts = enumerate_points(g["d"], g["p"], g["n"], g["cap"])
    rows = [{"index": i, "coords": list(z.coords)} for i, z in enumerate(pts)]
    return _doc("points", p=g["p"], n=g["n"], d=g["d"], count=len(pts), points=rows), "points", 0


def cmd_project(ns, g):
    z = canonicalize(parse_ints(ns.coords), g["p"], g["n"])
    w = project(z, ns.to)
    return _doc("projection", source=z.as_dict(), target=w.as_dict()), None, 0


def cmd_cech(ns, g):
    alpha = parse_ints(ns.alpha)
    C = twisted_complex(ns.t, alpha)
    verdict = twisted_concentration(ns.t, alpha)
    return _doc("cohomology", t=ns.t, alpha=alpha, verdict=verdict, **cohomology_dict(C)), "cohomology", 0


def cmd_torus(ns, g):
    if not 1 <= ns.t <= 6:
        raise ConfigError("--t must lie in 1..6")
    body = cohomology_dict(torus_complex(ns.t))
    ok = all(c["free"] == (1 if c["deg"] == 1 else 0) and not c["torsion"] for c in body["cohomology"])
    return _doc("cohomology", t=ns.t, matches_prediction=ok, **body), "cohomology", 0 if ok else 1


def cmd_xdt(ns, g):
    table = xdt_graded_ht(g["d"], ns.t, ns.k, ns.degree_cap)
    return _doc("graded", **table.as_dict()), "rows", 0


def _parse_ranges(text: str, dims: int):
    if ":" not in text:
        bound = int(text)
        return [("annulus", -bound, bound)] * dims
    parts = []
    for item in text.split(","):
        kind, lo, hi = item.split(":")
        parts.append((kind, int(lo), int(hi)))
    if len(parts) != dims:
        raise ConfigError(f"--ranges lists {len(parts)} coordinates, --dims is {dims}")
    return parts


def cmd_restriction(ns, g):
    try:
        parts = _parse_ranges(ns.ranges, ns.dims)
    except ValueError:
        raise ConfigError(f"cannot parse --ranges {ns.ranges!r}") from None
    box = MonomialBox(
        tuple(k for k, _, _ in parts),
        tuple((lo, hi) for _, lo, hi in parts),
        tuple(ns.r for _ in parts),
        tuple(None if k == "disk" else ns.s for k, _, _ in parts),
    )
    cert = check_restriction_inclusion(box, ns.prec, ns.steps)
    return _doc("restriction", **cert), None, 0 if cert["holds"] else 1


def cmd_filtered(ns, g):
    p = g["p"]
    N = ns.levels + ns.depth + 2
    if ns.system == "positive":
        S = power_system(p, N, ns.depth, ns.levels)
    elif ns.system == "negative":
        S = power_system(p, N, ns.depth, ns.levels, lambda i, n: i + n + (1 if i >= 1 and n >= 1 else 0))
    else:
        S = power_system(p, N, ns.depth, ns.levels, lambda i, n: 0, H=((1,),))
    res = check_filtered_condition(S, ns.c, g["seed"])
    expected = ns.system != "negative"
    return _doc("filtered", system=ns.system, expected=expected, **res), None, 0 if res["holds"] == expected else 1


def _family(ns, g):
    seed = Arrangement.from_vectors("algebraic", g["p"], None, parse_members(ns.family))
    return compatible_family(seed, ns.level)


def cmd_measures(ns, g):
    F = _family(ns, g)
    levels = []
    ok = True
    for m, A in enumerate(F.levels, start=1):
        entry = {"level": m, "size": len(A), "lattice_rank": zero_mass_rank(A),
                 "basis": [list(mu.weights) for mu in zero_mass_basis(A)]}
        if m > 1:
            cert = surjectivity_certificate(A, m - 1)
            entry["surjective_onto_previous"] = cert["surjective"]
            ok = ok and cert["surjective"]
        levels.append(entry)
    return _doc("measures", p=g["p"], levels=levels, **{"pass": ok}), "levels", 0 if ok else 1


def cmd_kummer(ns, g):
    F = _family(ns, g)
    lvl = F.depth
    A = F.at(lvl)
    cert = kummer_kernel_certificate(A, ns.modulus)
    body = {"level": lvl, "modulus": ns.modulus, **cert}
    if ns.weights:
        mu = Measure(A, tuple(parse_ints(ns.weights)))
        body["reduced"] = list(kummer_reduce(mu, ns.modulus))
    return _doc("kummer", **body), None, 0 if cert["holds"] else 1


def cmd_logexp(ns, g):
    res = verify_log_exp(g["p"], ns.prec, ns.v0)
    return _doc("logexp", **res), None, 0 if res["pass"] else 1


def cmd_verify(ns, g):
    config = {"seed": g["seed"]}
    for key in ("t_max", "box", "samples"):
        v = getattr(ns, key)
        if v is not None:
            config[key] = v
    normalize_config(config)
    report = run_suite(ns.suite, config)
    return report, None, 0 if report.passed else 1


VERBS = {
    "rank": cmd_rank,
    "classify-uni": cmd_classify,
    "enumerate": cmd_enumerate,
    "project": cmd_project,
    "cech-twisted": cmd_cech,
    "torus-h": cmd_torus,
    "xdt-graded": cmd_xdt,
    "restriction-check": cmd_restriction,
    "filtered-check": cmd_filtered,
    "measures": cmd_measures,
    "kummer": cmd_kummer,
    "logexp": cmd_logexp,
    "verify-all": cmd_verify,
}


# list-valued options whose values may start with a minus sign
_LIST_FLAGS = ("--alpha", "--coords", "--members", "--family", "--weights")


def _glue_list_values(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for a in it:
        if a in _LIST_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None, out=None, environ=None) -> int:
    out = out or sys.stdout
    argv = _glue_list_values(list(sys.argv[1:] if argv is None else argv))
    try:
        ns = build_parser().parse_args(argv)
        g = resolve_globals(ns, environ)
        result, rows_key, code = VERBS[ns.verb](ns, g)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PredictionMismatch as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except ArrangementError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if hasattr(result, "to_json"):
        if g["format"] == "json":
            out.write(result.to_json())
        elif g["format"] == "csv":
            out.write(_csv([c.as_dict() for c in sorted(result.checks, key=lambda c: c.id)]))
        else:
            out.write(result.to_text())
    else:
        if "pass_" in result:
            result["pass"] = result.pop("pass_")
        emit(result, g["format"], rows_key, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
