"""Verification suites replaying the finite-level claims with independent oracles.

Each suite returns a VerificationReport whose JSON form is deterministic for
a given configuration: checks are sorted by id and wall time is kept out of
the serialized document.
"""

from __future__ import annotations

import hashlib
import itertools
import math
import random
import time
from dataclasses import dataclass, field

from . import __version__
from .arrangements import (
    Arrangement,
    classify_uni,
    compatible_family,
    mv_degree_bounds,
    rank,
)
from .cech import (
    boxed_twist_rank,
    h1_generated_by_all_ones,
    projective_twist_rank,
    sign_rule,
    torus_complex,
    twisted_complex,
    xdt_graded_ht,
)
from .complexes import CochainComplex, complex_cohomology
from .errors import ConfigError
from .limits import (
    MonomialBox,
    check_filtered_condition,
    check_restriction_inclusion,
    kummer_kernel_certificate,
    power_system,
    restriction_scaling,
    surjectivity_certificate,
    verify_log_exp,
    zero_mass_rank,
)
from .local_algebra import INF, matmul, minors_gcd_divisors, snf_int, snf_local, vp
from .projective import (
    Hyperplane,
    canonicalize,
    enumerate_points,
    gl_act,
    gl_act_point,
    point_count,
    random_gl,
    random_point,
    tube_relation,
)
from .serialization import dumps, schema_tag

SUITES = ("arith", "projective", "arrangements", "cech", "torus", "limits", "units")

DEFAULTS = {
    "seed": 0,
    "t_max": 5,
    "box": 4,
    "samples": 20,
}


def _plain(x):
    """JSON-friendly copy: infinities become the string "inf", tuples become lists."""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


@dataclass(frozen=True)
class CheckRecord:
    id: str
    anchor: str
    parameters: dict
    expected: object
    computed: object
    passed: bool

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "parameters": _plain(self.parameters),
            "expected": _plain(self.expected),
            "computed": _plain(self.computed),
            "pass": bool(self.passed),
        }


@dataclass
class VerificationReport:
    suite: str
    config: dict
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def input_hash(self) -> str:
        return hashlib.sha256(dumps(_plain(self.config)).encode()).hexdigest()

    def to_dict(self) -> dict:
        return {
            "schema": schema_tag("report"),
            "suite": self.suite,
            "version": __version__,
            "input_hash": self.input_hash,
            "config": _plain(self.config),
            "pass": self.passed,
            "counts": {
                "total": len(self.checks),
                "failed": sum(1 for c in self.checks if not c.passed),
            },
            "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.id)],
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_text(self) -> str:
        rows = [(c.id, "PASS" if c.passed else "FAIL", c.anchor) for c in sorted(self.checks, key=lambda c: c.id)]
        w0 = max([len(r[0]) for r in rows] + [2])
        lines = [f"suite {self.suite}  version {__version__}  checks {len(rows)}"]
        lines += [f"{i:<{w0}}  {s:<4}  {a}" for i, s, a in rows]
        lines.append(f"overall {'PASS' if self.passed else 'FAIL'}  ({self.wall_time:.2f}s)")
        return "\n".join(lines) + "\n"


class _Recorder:
    def __init__(self, prefix: str):
        self.prefix = prefix
        self.checks: list[CheckRecord] = []

    def add(self, name, anchor, params, expected, computed, passed=None):
        if passed is None:
            passed = _plain(expected) == _plain(computed)
        self.checks.append(CheckRecord(f"{self.prefix}.{name}", anchor, params, expected, computed, passed))


# -- oracles -------------------------------------------------------------------

def orbit_count(d: int, p: int, n: int) -> int:
    """Number of unit-scaling orbits of unimodular vectors, by explicit orbits."""
    q = p**n
    units = [u for u in range(q) if u % p]
    seen = set()
    for v in itertools.product(range(q), repeat=d + 1):
        if not any(x % p for x in v):
            continue
        seen.add(min(tuple(u * x % q for x in v) for u in units))
    return len(seen)


def composition_oracle(d: int, t: int, k: int, j: int) -> int:
    """Fiber monomials of degree j times negative multidegrees of sum k - j, by enumeration."""
    fiber = sum(1 for a in itertools.product(range(j + 1), repeat=d - t) if sum(a) == j)
    target = k - j
    base = 0
    if target <= -(t + 1):
        base = sum(1 for b in itertools.product(range(target, 0), repeat=t + 1) if sum(b) == target)
    return fiber * base


def uni_witness_ok(B: Arrangement, shape) -> bool:
    """In the new coordinates each dual only involves p^alpha_i w_i."""
    q = B.p**B.order
    s = snf_local(B.dual_matrix(), B.p, B.order)
    R = s.right
    MR = matmul(B.dual_matrix(), R, q)
    for row in MR:
        for i, x in enumerate(row):
            a = shape.alphas[i] if i < len(shape.alphas) else INF
            bound = B.order if a == INF else a
            if x % q and vp(x % q, B.p) < bound:
                return False
    return matmul(R, [list(r) for r in shape.basis_change], q) == [
        [int(i == j) for j in range(len(R))] for i in range(len(R))
    ]


# -- suites --------------------------------------------------------------------

def suite_arith(cfg) -> list[CheckRecord]:
    rec = _Recorder("arith")
    rng = random.Random(cfg["seed"])
    from .local_algebra import TruncElem, valuation

    for p, n, x, want in [(3, 2, 0, INF), (3, 2, 6, 1), (2, 4, 12, 2)]:
        rec.add(f"valuation.{p}.{n}.{x}", "plumbing", {"p": p, "n": n, "x": x}, want,
                valuation(TruncElem(x, n, p)))
    rec.add("snf_local.example_pair", "rank via elementary divisors", {"p": 2, "n": 3, "k": 1},
            [0, 1], list(snf_local([[1, 0], [1, 2]], 2, 3).alphas))
    rec.add("snf_local.diag", "rank via elementary divisors", {"p": 2, "n": 3}, [1, 2],
            list(snf_local([[2, 0], [0, 4]], 2, 3).alphas))
    bad = 0
    for trial in range(cfg["samples"]):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        M = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        if list(snf_int(M).diagonal) != minors_gcd_divisors(M):
            bad += 1
    rec.add("snf_int.minors_oracle", "plumbing", {"samples": cfg["samples"]}, 0, bad)
    bad = 0
    for trial in range(cfg["samples"]):
        p, n = rng.choice([2, 3]), rng.randint(1, 3)
        q = p**n
        M = [[rng.randrange(q) for _ in range(3)] for _ in range(3)]
        g, h = random_gl(2, p, n, rng), random_gl(2, p, n, rng)
        N = matmul(matmul(g, M, q), h, q)
        if snf_local(M, p, n).alphas != snf_local(N, p, n).alphas:
            bad += 1
    rec.add("snf_local.unit_invariance", "rank is independent of choices", {"samples": cfg["samples"]}, 0, bad)
    C0 = CochainComplex((1, 1), (((2,),),))
    rec.add("cohomology.times_two", "plumbing", {}, [[0, []], [0, [2]]],
            [[r.free, list(r.torsion)] for r in complex_cohomology(C0)])
    return rec.checks


def suite_projective(cfg) -> list[CheckRecord]:
    rec = _Recorder("projective")
    rng = random.Random(cfg["seed"])
    for p, d, n in itertools.product((2, 3), (1, 2), (1, 2, 3)):
        oracle = orbit_count(d, p, n)
        got = len(enumerate_points(d, p, n))
        rec.add(f"count.p{p}.d{d}.n{n}", "P^d(O/p^n) is finite with the closed count",
                {"p": p, "d": d, "n": n}, oracle, got, passed=(got == oracle == point_count(d, p, n)))
    rec.add("canonicalize.example", "quotient by unit scaling", {"p": 2, "n": 2, "v": [3, 2]},
            [1, 2], list(canonicalize((3, 2), 2, 2).coords))
    bad = 0
    for _ in range(cfg["samples"]):
        p, n, d = rng.choice([2, 3]), rng.randint(1, 2), rng.randint(1, 2)
        g = random_gl(d, p, n + 1, rng)
        H = Hyperplane(random_point(d, p, n + 1, rng))
        z = random_point(d, p, n + 1, rng)
        for flavor in ("closed", "open"):
            if tube_relation(H, z, n, flavor) != tube_relation(gl_act(g, H), gl_act_point(g, z), n, flavor):
                bad += 1
    rec.add("gl.tube_equivariance", "the unimodular group permutes tubes of equal radius",
            {"samples": cfg["samples"]}, 0, bad)
    return rec.checks


def random_closed_arrangement(rng, p: int, n: int, d: int, size: int) -> Arrangement:
    size = min(size, point_count(d, p, n))
    seen = set()
    members = []
    while len(members) < size:
        h = Hyperplane(random_point(d, p, n, rng))
        if h not in seen:
            seen.add(h)
            members.append(h)
    return Arrangement("closed", p, d, n, tuple(members))


def suite_arrangements(cfg) -> list[CheckRecord]:
    rec = _Recorder("arrangements")
    rng = random.Random(cfg["seed"])
    for p, n, k, d in [(2, 3, 1, 2), (3, 4, 2, 2)]:
        a = [1] + [0] * d
        b = [1, p**k] + [0] * (d - 1)
        for label, vecs in (("ab", [a, b]), ("ba", [b, a])):
            B = Arrangement.from_vectors("closed", p, n, vecs)
            shape = classify_uni(B)
            rec.add(f"classify.p{p}n{n}k{k}d{d}.{label}", "X_1^d(n, n-k) from the two-member example",
                    {"p": p, "n": n, "k": k, "d": d, "order": label},
                    {"t": 1, "beta": [n, n - k]}, {"t": shape.t, "beta": list(shape.beta)},
                    passed=(shape.t == 1 and list(shape.beta) == [n, n - k] and uni_witness_ok(B, shape)))
        # a presentation moved by a random unimodular change of coordinates
        g = random_gl(d, p, n, rng)
        B = Arrangement.from_vectors("closed", p, n, [a, b])
        moved = Arrangement("closed", p, d, n, tuple(gl_act(g, h) for h in B.members))
        shape = classify_uni(moved)
        rec.add(f"classify.p{p}n{n}k{k}d{d}.moved", "X_1^d(n, n-k) from the two-member example",
                {"p": p, "n": n, "k": k, "d": d}, {"t": 1, "beta": [n, n - k]},
                {"t": shape.t, "beta": list(shape.beta)})
    seed_alg = Arrangement.from_vectors("algebraic", 2, None, [(1, 0), (1, 4)])
    fam = compatible_family(seed_alg, 3)
    rec.add("family.merging_seed", "compatible family of projections", {"p": 2, "N": 3},
            [1, 1, 2], [len(x) for x in fam.levels], passed=fam.check() and [len(x) for x in fam.levels] == [1, 1, 2])
    bad = []
    count = 0
    for trial in range(cfg["samples"]):
        p, n, d = rng.choice([2, 3]), rng.randint(1, 3), 2
        size = rng.randint(1, 6)
        A = random_closed_arrangement(rng, p, n, d, min(size, point_count(d, p, n)))
        for row in mv_degree_bounds(A):
            count += 1
            B = A.sub(row["subset"])
            shape = classify_uni(B)
            t = 0 if shape.t is None else shape.t
            ok = row["hypothesis"] and row["rank"] <= row["size"] and row["interval"] == [0, t]
            if not ok:
                bad.append({"trial": trial, "subset": row["subset"]})
    rec.add("mv_tables.random", "vanishing in degrees >= |J| under rank <= |J|",
            {"samples": cfg["samples"], "max_size": 6, "subsets": count}, [], bad[:5])
    return rec.checks


def suite_cech(cfg) -> list[CheckRecord]:
    rec = _Recorder("cech")
    box = cfg["box"]
    for t in (1, 2, 3):
        bad = []
        total = 0
        for alpha in itertools.product(range(-box, box + 1), repeat=t + 1):
            total += 1
            reports = complex_cohomology(twisted_complex(t, alpha))
            rule = sign_rule(alpha)
            want = {0: 1} if rule == "H0" else ({t: 1} if rule == "Ht" else {})
            got = {r.degree: r.free for r in reports if r.free}
            if got != want or any(r.torsion for r in reports):
                bad.append(list(alpha))
        rec.add(f"twisted.t{t}", "concentration in degree 0 or t by the sign of alpha",
                {"t": t, "box": box, "count": total}, [], bad[:5])
    for t in (1, 2):
        bad = []
        for k in range(-5, 6):
            for s in range(t + 1):
                if boxed_twist_rank(t, k, s, 6) != projective_twist_rank(t, k, s):
                    bad.append([k, s])
        rec.add(f"twist_rank.t{t}", "cohomology of O(k) on P^t", {"t": t, "k": [-5, 5]}, [], bad)
    for d, t, k in [(2, 1, 0), (3, 1, 0), (3, 2, -1)]:
        table = xdt_graded_ht(d, t, k, 8)
        want = [[j, composition_oracle(d, t, k, j)] for j in range(max(0, t + 1 + k), 9)]
        rec.add(f"xdt.d{d}t{t}k{k}", "graded pieces with |alpha| >= t+1+k",
                {"d": d, "t": t, "k": k, "cap": 8}, want, [list(r) for r in table.rows])
    return rec.checks


def suite_torus(cfg) -> list[CheckRecord]:
    rec = _Recorder("torus")
    for t in range(1, cfg["t_max"] + 1):
        reports = complex_cohomology(torus_complex(t))
        got = [[r.degree, r.free, list(r.torsion)] for r in reports]
        want = [[i, 1 if i == 1 else 0, []] for i in range(t + 1)]
        rec.add(f"h.t{t}", "H^1 = Z and H^s = 0 otherwise", {"t": t}, want, got)
        rec.add(f"generator.t{t}", "the class of O(1) generates", {"t": t}, True, h1_generated_by_all_ones(t))
    return rec.checks


def suite_limits(cfg) -> list[CheckRecord]:
    rec = _Recorder("limits")
    for dim in (1, 2, 3):
        for kinds in itertools.product(("annulus", "disk"), repeat=dim):
            box = MonomialBox.uniform(kinds, 2, r=1, s=2)
            for steps in (1, 2, 3):
                cert = check_restriction_inclusion(box, 4, steps)
                oracle = all(e == steps * sum(abs(v) for v in nu) for nu, e in restriction_scaling(box, steps).items())
                name = "".join(k[0] for k in kinds)
                rec.add(f"restriction.{name}.c{steps}", "O+(V) inside O_L + p O+(U)",
                        {"kinds": list(kinds), "steps": steps}, steps, cert["min_exponent"],
                        passed=cert["holds"] and cert["min_exponent"] == steps and oracle)
    pos = check_filtered_condition(power_system(2, 10, 4, 6), 1, cfg["seed"])
    rec.add("filtered.positive", "G_{n+c}^(i) inside H + G_n^(i+1)", {"system": "p^(i+n)", "c": 1},
            {"holds": True, "intersection_ok": True, "cobord_ok": True},
            {k: pos[k] for k in ("holds", "intersection_ok", "cobord_ok")})

    def bumped(i, n):
        return i + n + (1 if i >= 1 and n >= 1 else 0)

    neg = check_filtered_condition(power_system(2, 10, 3, 5, bumped), 1, cfg["seed"])
    rec.add("filtered.negative", "G_{n+c}^(i) inside H + G_n^(i+1)", {"system": "bumped", "c": 1},
            {"holds": False, "witness": {"i": 0, "n": 1, "element": [4]}},
            {"holds": neg["holds"], "witness": neg["witness"]})
    p = 5
    seeds = {
        "merging": [(1, 0), (1, p**2)],
        "three_lines": [(1, 0), (0, 1), (1, 1), (1, p)],
        "plane": [(1, 0, 0), (0, 1, 0), (1, p, 0), (1, p, p**2), (0, 1, 1)],
    }
    for name, vecs in seeds.items():
        fam = compatible_family(Arrangement.from_vectors("algebraic", p, None, vecs), 3)
        surj = []
        for m in range(2, fam.depth + 1):
            for n in range(1, m):
                surj.append(surjectivity_certificate(fam.at(m), n)["surjective"])
        ranks = [zero_mass_rank(A) == len(A) - 1 for A in fam.levels]
        kern = [kummer_kernel_certificate(A, mod)["holds"] for A in fam.levels for mod in (2, 3, 4)]
        rec.add(f"measures.{name}", "surjective transitions of zero-mass lattices",
                {"p": p, "seed": [list(v) for v in vecs], "N": 3},
                {"surjective": True, "rank": True, "kummer": True},
                {"surjective": all(surj), "rank": all(ranks), "kummer": all(kern)})
    return rec.checks


def suite_units(cfg) -> list[CheckRecord]:
    from .limits import SymbolicUnit, exp_trunc, unit_valuation

    rec = _Recorder("units")
    for p in (2, 3, 5):
        res = verify_log_exp(p, 6, 2)
        rec.add(f"logexp.p{p}", "exp and log preserve the norm on small balls",
                {"p": p, "m": 6, "v0": 2}, [], res["failures"], passed=res["pass"])
    rec.add("logexp.example", "exp and log preserve the norm on small balls", {"p": 3, "m": 5, "x": 9},
            2, vp((exp_trunc(9, 3, 5) - 1) % 3**5, 3))
    p, n = 3, 2
    A = Arrangement.from_vectors("closed", p, n, [(1, 0), (0, 1)])
    # members are stored sorted, so look the two lines up by their duals
    ia = A.members.index(Hyperplane(canonicalize((1, 0), p, n)))
    ib = A.members.index(Hyperplane(canonicalize((0, 1), p, n)))
    u = SymbolicUnit.ratio(A, ia, ib)
    z = canonicalize((p**n, 1), p, n + 1)
    rec.add("unit_valuation.boundary", "units are ratios of linear forms", {"p": p, "n": n},
            n, unit_valuation(u, z))
    return rec.checks


_RUNNERS = {
    "arith": suite_arith,
    "projective": suite_projective,
    "arrangements": suite_arrangements,
    "cech": suite_cech,
    "torus": suite_torus,
    "limits": suite_limits,
    "units": suite_units,
}


def normalize_config(config: dict | None) -> dict:
    cfg = dict(DEFAULTS)
    for key, value in (config or {}).items():
        if key not in DEFAULTS:
            raise ConfigError(f"unknown config key {key!r}")
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"config value {key!r} must be an integer")
        cfg[key] = value
    if not 1 <= cfg["t_max"] <= 6:
        raise ConfigError("t_max must lie in 1..6")
    if cfg["box"] < 0 or cfg["samples"] < 1:
        raise ConfigError("box must be >= 0 and samples >= 1")
    return cfg


def run_suite(name: str, config: dict | None = None) -> VerificationReport:
    if name != "all" and name not in _RUNNERS:
        raise ConfigError(f"unknown suite {name!r}")
    cfg = normalize_config(config)
    start = time.perf_counter()
    report = VerificationReport(name, cfg)
    for suite in (SUITES if name == "all" else (name,)):
        report.checks.extend(_RUNNERS[suite](cfg))
    report.checks.sort(key=lambda c: c.id)
    report.wall_time = time.perf_counter() - start
    return report


__all__ = [
    "SUITES",
    "CheckRecord",
    "VerificationReport",
    "run_suite",
    "normalize_config",
    "orbit_count",
    "composition_oracle",
    "uni_witness_ok",
]
