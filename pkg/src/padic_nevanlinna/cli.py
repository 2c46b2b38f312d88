"""Command-line front end.

    padic-nev fmt-check  SCENARIO [--out DIR] [--grid S,...] [--M k]
    padic-nev smt-report SCENARIO ...
    padic-nev defect     SCENARIO ...
    padic-nev polygon    SCENARIO ...
    padic-nev sharpness  [SCENARIO] [-n N -d D -p P] ...

Each run writes ``report.txt``, ``functions.json`` (every PL function in
canonical exact form) and ``table.tsv`` (functions sampled on the s-grid)
into the output directory, and prints the report.

Exit status: 0 all checks passed, 1 a mathematical check failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import (FMTResidualError, GeometryError, ImageContainedError,
                     NevanlinnaError, ScenarioError)
from .geometry import sharpness_family, transversality_check
from .nevanlinna import (NevanlinnaReport, defect, pullback, smt_report,
                         sorted_proximity_boundedness, verify_image_in_variety)
from .plf import PLFunction, plf_eventual_slope, plf_is_constant_on
from .scenario import Scenario, dump_scenario, load_scenario, scenario_from_sharpness
from .series import counting_plf, gauss_norm, newton_polygon, zero_count
from .valuation import log_abs

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


class _Run:
    """Collects the three artifacts of one subcommand."""

    def __init__(self, title: str):
        self.lines = [title, "=" * len(title)]
        self.functions: dict[str, PLFunction] = {}
        self.ok = True

    def say(self, line: str = ""):
        self.lines.append(line)

    def check(self, ok: bool, label: str):
        self.say(f"[{'PASS' if ok else 'FAIL'}] {label}")
        self.ok = self.ok and ok

    def table(self, grid: Sequence[Fraction], extra: dict[str, list[str]] | None = None) -> str:
        cols = list(self.functions)
        rows = ["\t".join(["s", *cols, *(extra or {})])]
        for k, s in enumerate(grid):
            vals = [str(f(s)) if f.contains(s) else "NA" for f in self.functions.values()]
            vals += [v[k] for v in (extra or {}).values()]
            rows.append("\t".join([str(s), *vals]))
        return "\n".join(rows) + "\n"


def _slope(f: PLFunction) -> str:
    return str(plf_eventual_slope(f)) if f.hi is None else f"{f.slopes[-1]} (window ends at {f.hi})"


def _witness_preconditions(sc: Scenario, run: _Run) -> dict:
    if not sc.witness_points:
        return {"general_position": "asserted"}
    failures = []
    for P in sc.witness_points:
        through = [D for D in sc.hypersurfaces if D.poly(P.coords) == 0]
        on_x = all(q(P.coords) == 0 for q in sc.variety.equations)
        label = f"witness {P.to_literal()} on {[D.name for D in through]}"
        if not through or not on_x:
            run.say(f"  {label}: not a common point of X and any D_i, skipped")
            continue
        ok = transversality_check(through, sc.variety, P)
        run.check(ok, f"transverse at {label}")
        if not ok:
            failures.append(P.to_literal())
    if failures:
        return {"general_position": f"witness failed at {failures}"}
    return {"general_position": f"witnessed at {len(sc.witness_points)} point(s)"}


def _report_body(run: _Run, rep: NevanlinnaReport):
    run.say(f"n = {rep.n}, M = {rep.M}, degrees = {list(rep.degrees)}")
    run.say(f"bound coefficient n - 1 + max M/deg = {rep.coefficient}")
    for key, val in rep.preconditions.items():
        run.say(f"precondition {key}: {val}")
    run.say(f"T: {rep.T}")
    run.say(f"  eventual slope {_slope(rep.T)}")
    for name, d, m, N in zip(rep.names, rep.degrees, rep.m, rep.N):
        run.say(f"{name} (degree {d}): m slope {_slope(m)}, N slope {_slope(N)}")
    run.say(f"sum m_i/deg: slope {_slope(rep.weighted_sum)}")
    run.say(f"bound:       slope {_slope(rep.bound)}")
    run.say(f"margin:      {rep.margin}")
    inf = "-inf" if rep.margin_infimum is None else str(rep.margin_infimum)
    run.say(f"margin infimum over s >= 0: {inf}")
    run.functions.update(rep.functions())


def _smt(sc: Scenario, run: _Run) -> NevanlinnaReport:
    pre = _witness_preconditions(sc, run)
    if "failed" in pre["general_position"]:
        run.ok = False
    return smt_report(sc.map, sc.hypersurfaces, sc.variety, sc.M, sc.cfg, pre)


def cmd_fmt_check(sc: Scenario, run: _Run):
    rep = smt_report(sc.map, sc.hypersurfaces, sc.variety, sc.M, sc.cfg)
    for D, res in zip(sc.hypersurfaces, rep.residuals):
        g = pullback(D, sc.map, sc.cfg)
        expected = -log_abs(g.lowest_coefficient, sc.cfg).value
        run.say(f"{D.name}: residual = {res} (constant)")
        run.check(res == expected, f"{D.name}: residual equals -log|a_k| = {expected}")
    run.functions["T"] = rep.T
    for name, m, N, D in zip(rep.names, rep.m, rep.N, sc.hypersurfaces):
        run.functions[f"m_{name}"] = m
        run.functions[f"N_{name}"] = N
        run.functions[f"residual_{name}"] = m + N - D.degree * rep.T


def cmd_smt_report(sc: Scenario, run: _Run):
    rep = _smt(sc, run)
    _report_body(run, rep)
    if rep.window_restricted:
        run.say("window-restricted: certified series, verdict covers the certified window only")
    else:
        run.check(rep.verdict, f"margin eventual slope {rep.margin_eventual_slope} >= 0 "
                               "and margin bounded below on s >= 0")
    if len(sc.hypersurfaces) > rep.n and sc.map.polynomial_mode:
        b = sorted_proximity_boundedness(sc.map, sc.hypersurfaces, sc.variety, sc.cfg)
        names = [sc.hypersurfaces[i].name for i in b.order]
        run.say(f"sorted proximity slopes: {dict(zip(names, map(str, b.slopes)))}")
        run.say(f"all but the top n = {b.n} bounded: {b.bounded}")


def cmd_defect(sc: Scenario, run: _Run):
    if not sc.map.polynomial_mode:
        raise ScenarioError("defects need polynomial mode (exact eventual slopes)", "map")
    rep = _smt(sc, run)
    total = Fraction(0)
    for D in sc.hypersurfaces:
        dl = defect(sc.map, D, sc.cfg)
        total += dl
        run.check(0 <= dl <= 1, f"defect {D.name} = {dl} in [0, 1]")
    run.say(f"defect sum = {total}")
    run.check(total <= rep.coefficient, f"defect sum {total} <= {rep.coefficient}")
    run.functions.update(rep.functions())


def cmd_polygon(sc: Scenario, run: _Run):
    cfg = sc.cfg
    targets = [(f"f{j}", c) for j, c in enumerate(sc.map.coords) if not c.is_zero()]
    targets += [(f"{D.name}_pullback", pullback(D, sc.map, cfg)) for D in sc.hypersurfaces]
    counts: dict[str, list[str]] = {}
    for name, g in targets:
        poly = newton_polygon(g, cfg)
        G, N = gauss_norm(g, cfg), counting_plf(g, cfg)
        run.say(f"{name}: vertices {poly.to_literal()}")
        run.say("  roots by log-radius: " + ", ".join(
            f"{w} at {sl}" for w, sl in poly.segments()) + (f"; {g.order} at 0" if g.order else ""))
        jensen = G - N
        ok, const = plf_is_constant_on(jensen, jensen.lo, jensen.hi)
        expected = log_abs(g.lowest_coefficient, cfg).value
        run.check(ok and const == expected, f"{name}: log|g| - N = log|a_k| = {expected}")
        run.functions[f"gauss_{name}"] = G
        run.functions[f"N_{name}"] = N
        col = []
        for s in sc.s_grid:
            try:
                col.append(str(zero_count(g, s, cfg)))
            except NevanlinnaError:
                col.append("NA")
        counts[f"n_{name}"] = col
    return counts


def cmd_sharpness(sc: Scenario, run: _Run, out: Path):
    n, d = sc.sharpness
    expected = n - 1 + Fraction(1, d)
    generated = out / "scenario.yaml"
    out.mkdir(parents=True, exist_ok=True)
    generated.write_text(dump_scenario(sc), encoding="utf-8")
    run.say(f"family n = {n}, d = {d}, p = {sc.p}; scenario written to {generated.name}")
    for D in sc.hypersurfaces:
        run.say(f"  {D.name}: {D.poly}")
    rep = _smt(sc, run)
    _report_body(run, rep)
    ok, const = plf_is_constant_on(rep.margin, 0, None)
    run.check(ok, f"sum m_i/d - (n-1+1/d)*T constant on s >= 0"
                  + (f" (= {const})" if ok else ""))
    total = sum(defect(sc.map, D, sc.cfg) for D in sc.hypersurfaces)
    run.check(total == expected, f"defect sum {total} == n - 1 + 1/d = {expected}")


def _parse_grid(text: str) -> tuple[Fraction, ...]:
    parts = [t for t in text.replace(",", " ").split() if t]
    grid = []
    for t in parts:
        if "." in t or "e" in t.lower():
            raise ScenarioError(f"grid value {t!r} is not an exact fraction", "--grid")
        grid.append(Fraction(t))
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ScenarioError("grid must be strictly increasing", "--grid")
    return tuple(grid)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="padic-nev", description=__doc__.split("\n\n")[0])
    ap.add_argument("subcommand", choices=["fmt-check", "smt-report", "defect", "sharpness", "polygon"])
    ap.add_argument("scenario", nargs="?", help="scenario YAML file")
    ap.add_argument("--out", help="output directory (default: scenario's output_dir or ./nev-out)")
    ap.add_argument("--grid", help="override the s-grid, e.g. '0,1/2,1,2'")
    ap.add_argument("--M", type=int, help="override the multiplier M")
    ap.add_argument("-n", type=int, help="sharpness: dimension n")
    ap.add_argument("-d", type=int, help="sharpness: degree d")
    ap.add_argument("-p", type=int, default=None, help="sharpness: prime p (default 3)")
    return ap


def _resolve_scenario(args) -> Scenario:
    if args.subcommand == "sharpness" and args.scenario is None:
        if args.n is None or args.d is None:
            raise ScenarioError("sharpness needs -n and -d, or a scenario with a sharpness block")
        p = 3 if args.p is None else args.p
        from .valuation import PrimeConfig
        try:
            PrimeConfig(p)
        except ValueError:
            raise ScenarioError("p must be prime", "-p") from None
        return scenario_from_sharpness(sharpness_family(args.n, args.d, p))
    if args.scenario is None:
        raise ScenarioError(f"{args.subcommand} needs a scenario file")
    sc = load_scenario(args.scenario)
    if args.subcommand == "sharpness":
        if sc.sharpness is None:
            raise ScenarioError("scenario has no 'sharpness' block", "sharpness")
        sc = replace(scenario_from_sharpness(sharpness_family(*sc.sharpness, sc.p), sc.s_grid),
                     output_dir=sc.output_dir)
    return sc


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        sc = _resolve_scenario(args)
        if args.grid is not None:
            sc = replace(sc, s_grid=_parse_grid(args.grid))
        if args.M is not None:
            if args.M < 1:
                raise ScenarioError("M must be a positive integer", "--M")
            sc = replace(sc, M=args.M)
        if not verify_image_in_variety(sc.map, sc.variety, sc.cfg):
            raise ScenarioError("the map's image is not contained in the variety X", "map")
    except (ScenarioError, GeometryError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = Path(args.out or sc.output_dir or "nev-out")

    run = _Run(f"{args.subcommand} (p = {sc.p}, N = {sc.N})")
    extra = None
    try:
        if args.subcommand == "fmt-check":
            cmd_fmt_check(sc, run)
        elif args.subcommand == "smt-report":
            cmd_smt_report(sc, run)
        elif args.subcommand == "defect":
            cmd_defect(sc, run)
        elif args.subcommand == "polygon":
            extra = cmd_polygon(sc, run)
        else:
            cmd_sharpness(sc, run, out)
    except ImageContainedError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FMTResidualError as exc:
        run.check(False, f"exact identity failed: {exc}")
    except (ScenarioError, GeometryError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    run.say()
    run.say(f"overall: {'PASS' if run.ok else 'FAIL'}")
    report = "\n".join(run.lines) + "\n"
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.txt").write_text(report, encoding="utf-8")
    dump = {name: f.to_dict() for name, f in run.functions.items()}
    (out / "functions.json").write_text(json.dumps(dump, indent=2) + "\n", encoding="utf-8")
    (out / "table.tsv").write_text(run.table(sc.s_grid, extra), encoding="utf-8")
    sys.stdout.write(report)
    return EXIT_OK if run.ok else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
