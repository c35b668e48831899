"""Command-line front end: manifold-spec ingestion, command dispatch,
seeded configuration and machine-readable reports.

Exit codes: 0 = success / Flat / pass, 1 = NotFlat / fail, 2 = error /
Undecided.  Structured reports are deterministic for a fixed input and
seed up to the timing field.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .carnot import (
    CarnotError,
    SpencerComplex,
    StratifiedAlgebra,
    bch_truncated,
    free_nilpotent,
    isometry_algebra,
    validate,
)
from .flatness import FlatnessError, contact_flatness, engel_flatness, g235_flatness
from .geometry import CONSTANT_STRUCTURE, GeometryError, Metric, Space, VectorField
from .report import FLAT_NUMERIC, FLAT_PROVEN, NOT_FLAT, UNDECIDED
from .riemann import gaussian_curvature, riemannian_flatness
from .subriemann import (
    SRStructure,
    SubRiemannError,
    constant_symbol_check,
    equiregular_check,
    growth_vector,
    symbol_at_point,
)
from .symexpr import Chart, ExprError, SampleConfig, parse


class SpecError(Exception):
    pass


def load_manifold_spec(path: str):
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: not valid JSON: {exc}") from exc
    return data, digest


def build_chart(data) -> Chart:
    try:
        chart_block = data["chart"]
        coords = chart_block["coords"]
    except KeyError as exc:
        raise SpecError(f"spec is missing chart block field {exc}") from exc
    dim = chart_block.get("dim", len(coords))
    if dim != len(coords):
        raise SpecError("chart dim does not match the number of coordinates")
    constraints = chart_block.get("constraints", [])
    try:
        return Chart(coords, constraints)
    except ExprError as exc:
        raise SpecError(f"bad chart constraint: {exc}") from exc


def build_space(data) -> Space:
    chart = build_chart(data)
    mode = data.get("mode", "coordinates")
    if mode == "coordinates":
        return Space(chart)
    if mode != CONSTANT_STRUCTURE:
        raise SpecError(f"unknown mode {mode!r}")
    frame = data.get("frame", {})
    n = chart.n
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for item in frame.get("brackets", []):
        i, j, k, v = item
        v = Fraction(v)
        c[i - 1][j - 1][k - 1] = v
        c[j - 1][i - 1][k - 1] = -v
    try:
        return Space(chart, CONSTANT_STRUCTURE, c)
    except GeometryError as exc:
        raise SpecError(f"bad structure constants: {exc}") from exc


def build_structure(data) -> SRStructure:
    space = build_space(data)
    frame = data.get("frame")
    if not frame or "fields" not in frame:
        raise SpecError("spec needs a frame block with horizontal fields")
    fields = []
    for comps in frame["fields"]:
        if len(comps) != space.dim:
            raise SpecError("frame field has wrong number of components")
        if space.mode == CONSTANT_STRUCTURE:
            exprs = [
                parse(str(c), space.chart) if isinstance(c, str) else
                _const_expr(space.chart, c)
                for c in comps
            ]
        else:
            exprs = [parse(str(c), space.chart) for c in comps]
        fields.append(VectorField(space, exprs))
    return SRStructure(space, fields)


def _const_expr(chart, value):
    from .symexpr import const

    return const(chart, Fraction(value))


def build_metric(data) -> Metric:
    space = build_space(data)
    if space.mode != "coordinates":
        raise SpecError("metric commands need coordinate mode")
    mat = data.get("metric")
    if mat is None:
        raise SpecError("spec needs a metric block")
    rows = [[parse(str(e), space.chart) for e in row] for row in mat]
    try:
        return Metric(space, rows)
    except GeometryError as exc:
        raise SpecError(str(exc)) from exc


def load_algebra(path: str):
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: not valid JSON: {exc}") from exc
    try:
        return StratifiedAlgebra.from_dict(data), digest
    except (KeyError, CarnotError) as exc:
        raise SpecError(f"{path}: bad algebra file: {exc}") from exc


VERDICT_EXIT = {
    FLAT_PROVEN: 0,
    FLAT_NUMERIC: 0,
    NOT_FLAT: 1,
    UNDECIDED: 2,
    "constant": 0,
    "non-constant": 1,
    "undecided": 2,
    "pass": 0,
    "fail": 1,
}


class Report:
    def __init__(self, command, digest, config):
        self.command = command
        self.digest = digest
        self.config = config
        self.body = {}
        self.warnings = []
        self.transcript = {}
        self.exit_code = 0
        self.started = time.time()

    def to_dict(self, include_transcript=False, include_timing=True):
        out = {
            "command": self.command,
            "input_digest": self.digest,
            "config": {
                "samples": self.config.samples,
                "tol": self.config.tol,
                "seed": self.config.seed,
            },
            "version": __version__,
            "warnings": self.warnings,
        }
        out.update(self.body)
        if include_transcript:
            out["transcript"] = self.transcript
        if include_timing:
            out["timing_ms"] = round(1000 * (time.time() - self.started), 3)
        return out

    def render_text(self, include_transcript=False):
        lines = [f"command: {self.command}"]
        for key, value in self.body.items():
            lines.append(f"{key}: {json.dumps(value, sort_keys=True, default=str)}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        if include_transcript and self.transcript:
            lines.append("transcript:")
            for k, v in self.transcript.items():
                lines.append(f"  {k} = {v}")
        return "\n".join(lines)


def _flatness_body(report, rep):
    report.body["verdict"] = rep.verdict
    report.body["residuals_checked"] = rep.residuals_checked
    report.body["violations"] = [v.to_dict() for v in rep.violations[:8]]
    report.warnings.extend(rep.warnings)
    report.transcript.update(rep.transcript)
    report.exit_code = VERDICT_EXIT[rep.verdict]


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="srflat",
        description="Analyze Riemannian and sub-Riemannian structures and "
        "certify local flatness.",
    )
    parser.add_argument("--samples", type=int, default=32)
    parser.add_argument("--tol", type=float, default=1e-9)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--transcript", action="store_true", help="include construction intermediates")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("riem-flat", "gauss"):
        p = sub.add_parser(name)
        p.add_argument("spec")
    for name in ("growth", "equiregular", "symbol", "constant-symbol", "engel-flat", "contact-flat", "g235-flat"):
        p = sub.add_parser(name)
        p.add_argument("spec")
    pc = sub.add_parser("carnot")
    csub = pc.add_subparsers(dest="carnot_command", required=True)
    pf = csub.add_parser("free")
    pf.add_argument("generators", type=int)
    pf.add_argument("step", type=int)
    pf.add_argument("--out", default=None)
    for name in ("validate", "isom"):
        p = csub.add_parser(name)
        p.add_argument("algebra")
    ps = csub.add_parser("spencer")
    ps.add_argument("algebra")
    ps.add_argument("--degree", type=int, default=1)
    pb = csub.add_parser("bch")
    pb.add_argument("algebra")
    pb.add_argument("--a", required=True, help="comma-separated rational coefficients")
    pb.add_argument("--b", required=True, help="comma-separated rational coefficients")

    args = parser.parse_args(argv)
    config = SampleConfig(samples=args.samples, tol=args.tol, seed=args.seed)
    try:
        report = _dispatch(args, config)
    except (SpecError, ExprError, GeometryError, SubRiemannError, FlatnessError, CarnotError, OSError, ValueError) as exc:
        err = {"command": args.command, "error": f"{type(exc).__name__}: {exc}"}
        if getattr(args, "format", "text") == "structured":
            print(json.dumps(err, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "structured":
        print(json.dumps(report.to_dict(include_transcript=args.transcript), sort_keys=True, default=str))
    else:
        print(report.render_text(include_transcript=args.transcript))
    return report.exit_code


def _dispatch(args, config) -> Report:
    cmd = args.command
    if cmd == "carnot":
        return _dispatch_carnot(args, config)
    data, digest = load_manifold_spec(args.spec)
    report = Report(cmd, digest, config)
    if cmd == "riem-flat":
        g = build_metric(data)
        rep = riemannian_flatness(g, config)
        _flatness_body(report, rep)
    elif cmd == "gauss":
        g = build_metric(data)
        k = gaussian_curvature(g)
        report.body["curvature"] = str(k)
        origin = tuple(Fraction(0) for _ in range(g.space.dim))
        try:
            report.body["value_at_origin"] = k.eval(origin)
        except Exception:
            pass
    elif cmd == "growth":
        s = build_structure(data)
        pts = s.sample_points(min(10, config.samples), seed=config.seed)
        vectors = []
        generating = True
        for p in pts:
            gv, gen = growth_vector(s, p)
            generating = generating and gen
            vectors.append(list(gv))
        uniq = sorted({tuple(v) for v in vectors})
        report.body["growth_vectors"] = [list(u) for u in uniq]
        report.body["bracket_generating"] = generating
        report.body["points_checked"] = len(pts)
        report.exit_code = 0 if generating else 1
    elif cmd == "equiregular":
        s = build_structure(data)
        pts = s.sample_points(min(10, config.samples), seed=config.seed)
        rep = equiregular_check(s, pts)
        report.body["verdict"] = "pass" if rep.ok else "fail"
        report.body["classes"] = {
            str(list(gv)): len(points) for gv, points in rep.classes.items()
        }
        report.exit_code = 0 if rep.ok else 1
    elif cmd == "symbol":
        s = build_structure(data)
        p = s.sample_points(1, seed=config.seed)[0]
        sym = symbol_at_point(s, p)
        report.body["symbol"] = sym.to_dict()
        report.body["point"] = [str(x) for x in p]
    elif cmd == "constant-symbol":
        s = build_structure(data)
        pts = s.sample_points(min(10, config.samples), seed=config.seed)
        rep = constant_symbol_check(s, pts, config)
        report.body["verdict"] = rep.verdict
        report.body["growth"] = list(rep.growth) if rep.growth else None
        report.body["reason"] = rep.reason
        if rep.spectra:
            report.body["spectra"] = [[float(x) for x in sp] for sp in rep.spectra]
        report.exit_code = VERDICT_EXIT[rep.verdict]
    elif cmd == "engel-flat":
        rep = engel_flatness(build_structure(data), config)
        _flatness_body(report, rep)
    elif cmd == "contact-flat":
        rep = contact_flatness(build_structure(data), config)
        _flatness_body(report, rep)
    elif cmd == "g235-flat":
        rep = g235_flatness(build_structure(data), config)
        _flatness_body(report, rep)
    else:
        raise SpecError(f"unknown command {cmd!r}")
    return report


def _dispatch_carnot(args, config) -> Report:
    sub = args.carnot_command
    if sub == "free":
        alg = free_nilpotent(args.generators, args.step)
        report = Report("carnot free", "", config)
        report.body["strata"] = list(alg.strata)
        report.body["dim"] = alg.dim
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(alg.to_dict(), fh, indent=1, sort_keys=True)
            report.body["written"] = args.out
        else:
            report.body["algebra"] = alg.to_dict()
        return report
    alg, digest = load_algebra(args.algebra)
    report = Report(f"carnot {sub}", digest, config)
    if sub == "validate":
        rep = validate(alg)
        report.body["verdict"] = "pass" if rep.ok else "fail"
        report.body["issues"] = [f"{i.rule}: {i.detail}" for i in rep.issues]
        report.exit_code = 0 if rep.ok else 1
    elif sub == "isom":
        basis = isometry_algebra(alg)
        report.body["dimension"] = basis.dim
        report.body["basis"] = [
            [[str(x) for x in row] for row in m] for m in basis.matrices
        ]
    elif sub == "spencer":
        sc = SpencerComplex(alg)
        k = args.degree
        d_k = sc.differential(k)
        d_k1 = sc.differential(k + 1)
        from . import linalg

        comp = linalg.mat_mul(d_k1, d_k)
        dd_zero = all(all(x == 0 for x in row) for row in comp)
        adj = sc.adjoint(k)
        gk = sc.gram_forms(k)
        gk1 = sc.gram_forms(k + 1)
        lhs = linalg.mat_mul([list(c) for c in zip(*d_k)], gk1)
        rhs = linalg.mat_mul(gk, adj)
        adjoint_ok = lhs == rhs
        report.body["degree"] = k
        report.body["dim_forms_k"] = len(d_k[0]) if d_k else 0
        report.body["dim_forms_k1"] = len(d_k)
        report.body["rank_differential"] = linalg.bareiss_rank(d_k) if d_k else 0
        report.body["dd_zero"] = dd_zero
        report.body["adjoint_identity"] = adjoint_ok
        report.exit_code = 0 if (dd_zero and adjoint_ok) else 1
    elif sub == "bch":
        a = [Fraction(x) for x in args.a.split(",")]
        b = [Fraction(x) for x in args.b.split(",")]
        if len(a) != alg.dim or len(b) != alg.dim:
            raise SpecError("element length does not match algebra dimension")
        out = bch_truncated(alg, a, b)
        report.body["product"] = [str(x) for x in out]
    else:
        raise SpecError(f"unknown carnot subcommand {sub!r}")
    return report


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
