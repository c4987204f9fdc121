"""``flopcat`` command line: run verification suites and print Ext tables."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path

from .errors import FlopcatError
from .reports import FAIL, PASS, UNDETERMINED, CheckReport, bundle, status_of

SUITES = ("node", "kronecker", "general-nodal", "all")
EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_UNDETERMINED = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str = "node"
    cutoff_internal: int = 12
    homological_window: int = 6
    kronecker_d: int = 0
    nodal_points: tuple = (Fraction(1), Fraction(-1))
    report_path: str | None = None
    format: str = "json"

    def validate(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if not isinstance(self.cutoff_internal, int) or self.cutoff_internal < 4:
            raise ConfigError("cutoff_internal must be an integer >= 4")
        if not isinstance(self.homological_window, int) or self.homological_window < 4:
            raise ConfigError("homological_window must be an integer >= 4")
        if not isinstance(self.kronecker_d, int):
            raise ConfigError("kronecker_d must be an integer")
        if self.format not in ("json", "markdown"):
            raise ConfigError("format must be json or markdown")
        try:
            pts = tuple(Fraction(p) for p in self.nodal_points)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"nodal_points must be two rationals: {exc}") from None
        if len(pts) != 2:
            raise ConfigError("nodal_points must have exactly two entries")
        if pts[0] == pts[1]:
            raise ConfigError("nodal_points must be distinct")
        self.nodal_points = pts
        return self

    def as_json(self):
        out = asdict(self)
        out["nodal_points"] = [str(p) for p in self.nodal_points]
        out.pop("report_path")
        return out


def parse_points(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"--points expects a,b; got {text!r}")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"--points expects rationals; got {text!r}") from None


def load_config(path):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    known = {f.name for f in fields(SuiteConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {', '.join(sorted(unknown))}")
    if "nodal_points" in data:
        pts = data["nodal_points"]
        data["nodal_points"] = parse_points(pts) if isinstance(pts, str) else tuple(pts)
    return data


# ---------------------------------------------------------------------------
# suites


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    ms = (time.perf_counter() - start) * 1000
    reports = out if isinstance(out, list) else [out]
    for r in reports:
        r.ms = ms
    return out


def _simple(name, holds, window, tables=(), witness=None, detail="", expected=PASS):
    return CheckReport(
        name,
        status_of(holds),
        window=window,
        tables=list(tables),
        witness=witness if holds is False else None,
        detail=detail,
        expected=expected,
    )


def node_checks(cfg):
    from .algebra_tables import minimal_projective_resolution
    from .complexes import ext_table
    from .serre_crepancy import DualityData, crepancy_classify, serre_dual_check, serre_square_check, shifted
    from .sod_twist import (
        cotwist_table,
        dual_twist,
        flop_flop_check,
        is_exceptional,
        left_orthogonal_member,
        projection_agreement_check,
        round_trip_check,
        standard_objects,
    )

    H = cfg.homological_window
    o = standard_objects(cfg.cutoff_internal)
    window = {"internal": cfg.cutoff_internal, "homological": H}
    checks = []

    def exceptional():
        reps = []
        for E in (o.E_x, o.E_y):
            c = is_exceptional(E)
            reps.append(_simple(f"exceptional[{E.name}]", c.holds, window, [c.certificate], witness=c.certificate.nonzero()))
        return bundle("node.exceptionality", reps, window)

    def cotwist():
        grid = cotwist_table(o)
        reps = []
        names = ("E_x", "E_y")
        for i, row in enumerate(grid):
            for j, et in enumerate(row):
                want = {} if i == j else {2: 1}
                got = et.totals()
                reps.append(_simple(f"cotwist[{names[i]},{names[j]}]", et.certified and got == want, window, [et], witness=got))
        return bundle("node.cotwist", reps, window)

    def resolutions():
        reps = []
        for v in ("X", "x", "y"):
            R = minimal_projective_resolution(v, 4, o.table)
            length = R.positions()[-1] - R.positions()[0]
            reps.append(_simple(f"resolution[S_{v}]", length <= 2, window, witness={"length": length}, detail=repr(R)))
        R = minimal_projective_resolution("x", 4, o.table)
        literal = R.terms == o.E_x.terms and R.diff == o.E_x.diff
        reps.append(_simple("resolution[S_x] literal", literal, window, witness=repr(R)))
        return bundle("node.resolutions", reps, window)

    def spherical():
        et = ext_table(o.F_x, o.F_x)
        ex = is_exceptional(o.F_x)
        reps = [
            _simple("spherical[F_x]", et.certified and et.totals() == {0: 1, 3: 1}, window, [et], witness=et.totals()),
            _simple("not_exceptional[F_x]", not ex.holds, window, witness="F_x is exceptional"),
        ]
        return bundle("node.sphericality", reps, window)

    def round_trips():
        reps = []
        for G in (o.P_X, o.P_x, o.P_y, o.E_x):
            reps.extend(round_trip_check(G, o))
        return bundle("node.twist_round_trips", reps, window)

    def flops():
        reps = []
        for G in (o.P_X, o.P_x, o.F_x):
            image = dual_twist(G, o)
            m = left_orthogonal_member(image, o.E_x)
            reps.append(_simple(f"dual_twist_in_perp[{G.name}]", m.holds, window, [m.certificate], witness=m.certificate.nonzero()))
            reps.append(projection_agreement_check(G, o))
            reps.append(flop_flop_check(G, o))
        return bundle("node.flop_structure", reps, window)

    def serre():
        dd = DualityData.node()
        T = [o.E_x, o.E_y, o.F_x, o.F_y]
        reps = [
            serre_dual_check(o.E_x, shifted(o.E_y, 1), dd, T, H),
            serre_dual_check(o.E_y, shifted(o.E_x, 1), dd, T, H),
            serre_dual_check(o.F_x, shifted(o.F_y, 1), dd, T, H),
        ]
        for N in (shifted(o.E_x, 1), o.E_x):
            r = serre_dual_check(o.E_x, N, dd, T, H)
            r.expected = FAIL
            reps.append(r)
        reps.append(serre_square_check(o.F_x, shifted(o.F_y, 1), shifted(o.F_x, 2), dd, T, H))
        for M in (o.E_x, o.E_y, o.F_x):
            reps.append(serre_dual_check(M, dual_twist(M, o), dd, T, H, name=f"serre[{M.name} -> Phi({M.name})]"))
        return bundle("node.serre", reps, window)

    def crepancy():
        big = crepancy_classify("big-node", cutoff=cfg.cutoff_internal, hwindow=H)
        small = crepancy_classify("small-node", cutoff=cfg.cutoff_internal, hwindow=H)
        reps = [
            _simple("crepancy[big-node] weak", big.weak, window, [big]),
            _simple("crepancy[big-node] fair", big.fair, window, [big], witness="no single shift", expected=FAIL),
            _simple("crepancy[small-node] fair index 2", small.fair and small.index == 2, window, [small], witness=small.as_json()),
            _simple("crepancy[small-node] strong", small.strong, window, [small], witness="strong fails", expected=FAIL),
        ]
        return bundle("node.crepancy", reps, window)

    for fn in (exceptional, cotwist, resolutions, spherical, round_trips, flops, serre, crepancy):
        checks.append(_timed(fn))
    return checks


def kronecker_checks(cfg):
    from .serre_crepancy import crepancy_classify, kronecker_suite

    d = cfg.kronecker_d
    H = cfg.homological_window
    window = {"internal": cfg.cutoff_internal, "homological": H}
    suite = _timed(kronecker_suite, d, cfg.cutoff_internal, H)

    def classify():
        v = crepancy_classify("kronecker", cutoff=cfg.cutoff_internal, d=d, hwindow=H)
        reps = [
            _simple(f"crepancy[kronecker] fair index {2 - d}", v.fair and v.index == 2 - d, window, [v], witness=v.as_json()),
            _simple("crepancy[kronecker] strong", v.strong, window, [v], witness="strong fails", expected=FAIL),
        ]
        return bundle(f"kronecker.crepancy(d={d})", reps, window, detail=f"index {v.index}")

    return [suite, _timed(classify)]


def nodal_checks(cfg):
    from .algebra_tables import CurveData
    from .nodal_general import split_node_crosscheck, verify_general_node

    q1, q2 = cfg.nodal_points
    curve = CurveData(q1, q2, max(cfg.cutoff_internal, 14))
    return [
        _timed(verify_general_node, curve, cfg.homological_window),
        _timed(split_node_crosscheck, curve.cutoff),
    ]


def run_checks(cfg):
    checks = []
    if cfg.suite in ("node", "all"):
        checks += node_checks(cfg)
    if cfg.suite in ("kronecker", "all"):
        checks += kronecker_checks(cfg)
    if cfg.suite in ("general-nodal", "all"):
        checks += nodal_checks(cfg)
    return checks


def build_report(cfg, checks, timing=False):
    summary = {"pass": 0, "fail": 0, "undetermined": 0, "expected_fail": 0}
    for c in checks:
        if c.status == UNDETERMINED:
            summary["undetermined"] += 1
        elif c.ok:
            summary["pass"] += 1
        else:
            summary["fail"] += 1
        summary["expected_fail"] += sum(1 for x in c.flatten() if x.expected == FAIL and x.status == FAIL)
    return {
        "suite": cfg.suite,
        "config": cfg.as_json(),
        "checks": [c.as_json(timing=timing) for c in checks],
        "summary": summary,
    }


def timing_payload(checks):
    return {c.name: round(c.ms, 3) for c in checks}


def render_markdown(report):
    lines = [f"# flopcat report: {report['suite']}", ""]
    lines.append("| check | status | expected |")
    lines.append("|---|---|---|")

    def walk(c, depth):
        lines.append(f"| {'&nbsp;' * 4 * depth}{c['name']} | {c['status']} | {c['expected']} |")
        for child in c.get("checks", ()):
            walk(child, depth + 1)

    for c in report["checks"]:
        walk(c, 0)
    s = report["summary"]
    lines += ["", f"pass {s['pass']}, fail {s['fail']}, undetermined {s['undetermined']} (expected failures {s['expected_fail']})", ""]
    return "\n".join(lines)


def serialize(report, fmt):
    if fmt == "markdown":
        return render_markdown(report)
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def exit_code(report, allow_undetermined=False):
    s = report["summary"]
    if s["fail"]:
        return EXIT_FAIL
    if s["undetermined"] and not allow_undetermined:
        return EXIT_UNDETERMINED
    return EXIT_OK


def run_suite(cfg, allow_undetermined=False, timing=False):
    """Run the configured suite; returns ``(exit code, report dict)`` and writes the report file."""
    cfg.validate()
    checks = run_checks(cfg)
    report = build_report(cfg, checks, timing=timing)
    text = serialize(report, cfg.format)
    if cfg.report_path:
        path = Path(cfg.report_path)
        path.write_text(text)
        if not timing:
            Path(str(path) + ".timing.json").write_text(json.dumps(timing_payload(checks), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    return exit_code(report, allow_undetermined), report


# ---------------------------------------------------------------------------
# ext subcommand


def suite_objects(cfg):
    if cfg.suite in ("node", "all"):
        from .sod_twist import standard_objects

        return standard_objects(cfg.cutoff_internal).named()
    if cfg.suite == "kronecker":
        from .serre_crepancy import kronecker_objects

        k = kronecker_objects(cfg.kronecker_d, cfg.cutoff_internal)
        return {n: k[n] for n in ("P_0", "P_1", "G", "K")}
    from .algebra_tables import CurveData
    from .nodal_general import nodal_objects

    o = nodal_objects(CurveData(*cfg.nodal_points, max(cfg.cutoff_internal, 14)))
    return {n: o[n] for n in ("P_X", "P_Xt", "E_1", "E_2", "F_1", "F_2")}


def ext_table_cli(source, target, cfg, out=None):
    from .complexes import ext_table

    out = out or sys.stdout
    cfg.validate()
    objs = suite_objects(cfg)
    for n in (source, target):
        if n not in objs:
            raise ConfigError(f"unknown object {n!r}; known: {', '.join(objs)}")
    et = ext_table(objs[source], objs[target])
    for (k, j), dim in sorted(et.nonzero().items()):
        out.write(f"k={k} j={j} dim={dim}\n")
    if not et.certified:
        out.write(f"# not certified: {et.note}\n")
        return EXIT_UNDETERMINED
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _parser():
    p = argparse.ArgumentParser(prog="flopcat", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON file with SuiteConfig fields")
        sp.add_argument("--suite", choices=SUITES)
        sp.add_argument("--cutoff", type=int, dest="cutoff_internal")
        sp.add_argument("--hwindow", type=int, dest="homological_window")
        sp.add_argument("--kronecker-d", type=int, dest="kronecker_d")
        sp.add_argument("--points", dest="nodal_points", help="node preimages a,b")

    v = sub.add_parser("verify", help="run a verification suite")
    common(v)
    v.add_argument("--report", dest="report_path")
    v.add_argument("--format", choices=("json", "markdown"))
    v.add_argument("--allow-undetermined", action="store_true")
    v.add_argument("--timing", action="store_true", help="embed per-check milliseconds in the report")

    e = sub.add_parser("ext", help="print an Ext table between named objects")
    common(e)
    e.add_argument("--from", dest="source", required=True)
    e.add_argument("--to", dest="target", required=True)
    return p


def config_from_args(args):
    values = load_config(args.config) if args.config else {}
    for f in fields(SuiteConfig):
        val = getattr(args, f.name, None)
        if val is not None:
            values[f.name] = val
    if isinstance(values.get("nodal_points"), str):
        values["nodal_points"] = parse_points(values["nodal_points"])
    cfg = SuiteConfig(**values)
    return cfg.validate()


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        print(f"flopcat: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "ext":
            return ext_table_cli(args.source, args.target, cfg)
        code, _ = run_suite(cfg, allow_undetermined=args.allow_undetermined, timing=args.timing)
        return code
    except ConfigError as exc:
        print(f"flopcat: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FlopcatError as exc:
        print(f"flopcat: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED


if __name__ == "__main__":
    sys.exit(main())
