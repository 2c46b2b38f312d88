"""Scenario documents: a whole problem instance as one YAML file.

Every number is an exact rational: YAML integers, or strings such as
``"3/4"``.  Floats are refused.  Diagnostics name the offending field by
dotted path and point at its line and column.

Example::

    p: 3
    N: 2
    map:                         # coefficient lists, lowest degree first
      - ["0", "1"]               # z
      - ["1"]                    # 1
      - []                       # 0
    hypersurfaces:
      - name: D1
        degree: 2
        poly: [["1", [0, 2, 0]], ["1", [1, 0, 1]]]   # x1^2 + x0*x2
    M: 1
    s_grid: ["0", "1", "2", "3"]

A coordinate may also be ``{coefficients: [...], certificate: [c, b]}`` for
a truncated series whose tail satisfies ``v_p(a_i) >= c*i + b``.  Optional
keys: ``variety`` (``{dim: n, equations: [poly, ...]}``), ``witness_points``,
``no_common_zero: asserted`` (series-mode maps), ``sharpness: {n:, d:}``
(generates the map and hypersurfaces when they are omitted) and
``output_dir``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import yaml

from .errors import ScenarioError
from .geometry import ProjectivePoint, SharpnessConfig, sharpness_family
from .nevanlinna import Hypersurface, ProjectiveMap, VarietySpec
from .poly import Poly
from .series import EntireSeries
from .valuation import PrimeConfig

__all__ = [
    "Scenario",
    "parse_scenario",
    "load_scenario",
    "scenario_to_dict",
    "dump_scenario",
    "scenario_from_sharpness",
]

_FRACTION_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_KNOWN_KEYS = {"p", "N", "variety", "map", "hypersurfaces", "M", "witness_points",
               "s_grid", "sharpness", "output_dir", "no_common_zero"}


@dataclass(frozen=True)
class Scenario:
    p: int
    N: int
    map: ProjectiveMap
    hypersurfaces: tuple[Hypersurface, ...]
    variety: VarietySpec = field(default_factory=VarietySpec)
    M: int = 1
    witness_points: tuple[ProjectivePoint, ...] = ()
    s_grid: tuple[Fraction, ...] = ()
    sharpness: tuple[int, int] | None = None
    output_dir: str | None = None

    @property
    def cfg(self) -> PrimeConfig:
        return PrimeConfig(self.p)


class _Float:
    """Marker for a YAML float, so it can be rejected with a good message."""

    def __init__(self, text: str):
        self.text = text


class _Reader:
    def __init__(self, text: str):
        self.marks: dict[str, tuple[int, int]] = {}
        try:
            node = yaml.compose(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            raise ScenarioError(f"malformed document: {getattr(exc, 'problem', exc)}", "",
                                mark.line + 1 if mark else None,
                                mark.column + 1 if mark else None) from None
        if node is None:
            raise ScenarioError("empty document")
        self.data = self._convert(node, "")

    def _convert(self, node, path: str) -> Any:
        self.marks[path] = (node.start_mark.line + 1, node.start_mark.column + 1)
        if isinstance(node, yaml.MappingNode):
            out = {}
            for k, v in node.value:
                key = str(self._convert(k, path + ".<key>"))
                out[key] = self._convert(v, f"{path}.{key}" if path else key)
            return out
        if isinstance(node, yaml.SequenceNode):
            return [self._convert(v, f"{path}[{i}]") for i, v in enumerate(node.value)]
        tag, value = node.tag, node.value
        if tag.endswith(":int"):
            return int(yaml.safe_load(value))
        if tag.endswith(":float"):
            return _Float(value)
        if tag.endswith(":null"):
            return None
        if tag.endswith(":bool"):
            return yaml.safe_load(value)
        return value

    def fail(self, path: str, message: str):
        probe = path
        while probe and probe not in self.marks:
            probe = probe.rsplit(".", 1)[0] if "." in probe else probe.rsplit("[", 1)[0]
        line, col = self.marks.get(probe, (None, None))
        raise ScenarioError(message, path, line, col)

    # typed accessors ------------------------------------------------------------

    def fraction(self, value, path: str) -> Fraction:
        if isinstance(value, bool):
            self.fail(path, "expected an exact fraction, got a boolean")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, _Float):
            self.fail(path, f"floating-point literal {value.text!r} not accepted; "
                            "write an exact fraction such as \"3/4\"")
        if isinstance(value, str) and _FRACTION_RE.match(value):
            try:
                return Fraction(value.replace(" ", ""))
            except ZeroDivisionError:
                self.fail(path, f"zero denominator in {value!r}")
        self.fail(path, f"expected an exact fraction (e.g. \"3/4\"), got {value!r}")

    def integer(self, value, path: str, minimum: int | None = None) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(path, f"expected an integer, got {_show(value)}")
        if minimum is not None and value < minimum:
            self.fail(path, f"must be >= {minimum}, got {value}")
        return value

    def seq(self, value, path: str) -> list:
        if not isinstance(value, list):
            self.fail(path, f"expected a sequence, got {_show(value)}")
        return value

    def mapping(self, value, path: str) -> dict:
        if not isinstance(value, dict):
            self.fail(path, f"expected a mapping, got {_show(value)}")
        return value


def _show(value) -> str:
    return repr(value.text) if isinstance(value, _Float) else repr(value)


def _parse_poly(r: _Reader, value, path: str, nvars: int) -> Poly:
    terms = []
    for i, term in enumerate(r.seq(value, path)):
        tpath = f"{path}[{i}]"
        term = r.seq(term, tpath)
        if len(term) != 2:
            r.fail(tpath, "a monomial is [coefficient, [exponents...]]")
        coef = r.fraction(term[0], f"{tpath}[0]")
        exps = r.seq(term[1], f"{tpath}[1]")
        if len(exps) != nvars:
            r.fail(f"{tpath}[1]", f"expected {nvars} exponents, got {len(exps)}")
        exps = [r.integer(e, f"{tpath}[1][{j}]", 0) for j, e in enumerate(exps)]
        terms.append((tuple(exps), coef))
    poly = Poly.from_dict(nvars, terms)
    if poly.is_zero():
        r.fail(path, "polynomial is zero")
    if not poly.is_homogeneous():
        r.fail(path, f"inhomogeneous polynomial {poly}: total degrees {sorted(poly.degrees)}")
    return poly


def _parse_series(r: _Reader, value, path: str) -> EntireSeries:
    cert = None
    if isinstance(value, dict):
        coeffs = value.get("coefficients")
        if coeffs is None:
            r.fail(path, "missing 'coefficients'")
        if "certificate" in value:
            c = r.seq(value["certificate"], f"{path}.certificate")
            if len(c) != 2:
                r.fail(f"{path}.certificate", "certificate is [c, b]")
            cert = tuple(r.fraction(x, f"{path}.certificate[{i}]") for i, x in enumerate(c))
        cpath = f"{path}.coefficients"
    else:
        coeffs, cpath = value, path
    nums = [r.fraction(a, f"{cpath}[{i}]") for i, a in enumerate(r.seq(coeffs, cpath))]
    try:
        return EntireSeries(tuple(nums), cert)
    except ValueError as exc:
        r.fail(path, str(exc))


def parse_scenario(text: str) -> Scenario:
    """Parse and fully validate a scenario document."""
    r = _Reader(text)
    doc = r.mapping(r.data, "")
    for key in doc:
        if key not in _KNOWN_KEYS:
            r.fail(key, f"unknown key {key!r}")
    if "p" not in doc:
        r.fail("p", "missing required field 'p'")
    p = r.integer(doc["p"], "p")
    try:
        PrimeConfig(p)
    except ValueError:
        r.fail("p", "p must be prime")

    sharp = None
    if "sharpness" in doc:
        sd = r.mapping(doc["sharpness"], "sharpness")
        for k in ("n", "d"):
            if k not in sd:
                r.fail(f"sharpness.{k}", f"missing '{k}'")
        sharp = (r.integer(sd["n"], "sharpness.n", 1), r.integer(sd["d"], "sharpness.d", 1))

    generated: SharpnessConfig | None = None
    if sharp is not None and "map" not in doc and "hypersurfaces" not in doc:
        generated = sharpness_family(sharp[0], sharp[1], p)

    if "N" in doc:
        N = r.integer(doc["N"], "N", 1)
    elif generated is not None:
        N = generated.n
    else:
        r.fail("N", "missing required field 'N'")
    if generated is not None and N != generated.n:
        r.fail("N", f"sharpness family lives in P^{generated.n}, but N = {N}")

    variety = VarietySpec()
    if doc.get("variety") is not None:
        vd = r.mapping(doc["variety"], "variety")
        eqs = tuple(_parse_poly(r, q, f"variety.equations[{i}]", N + 1)
                    for i, q in enumerate(r.seq(vd.get("equations", []), "variety.equations")))
        dim = r.integer(vd["dim"], "variety.dim", 1) if "dim" in vd else None
        if dim is not None and dim > N:
            r.fail("variety.dim", f"dimension {dim} exceeds N = {N}")
        try:
            variety = VarietySpec(eqs, dim)
        except ValueError as exc:
            r.fail("variety", str(exc))

    if generated is not None:
        fmap, Ds = generated.map, generated.hypersurfaces
    else:
        if "map" not in doc:
            r.fail("map", "missing required field 'map'")
        coords = r.seq(doc["map"], "map")
        if len(coords) != N + 1:
            r.fail("map", f"expected {N + 1} coordinates for P^{N}, got {len(coords)}")
        series = tuple(_parse_series(r, c, f"map[{i}]") for i, c in enumerate(coords))
        asserted = False
        if "no_common_zero" in doc:
            if doc["no_common_zero"] != "asserted":
                r.fail("no_common_zero", "the only accepted value is 'asserted'")
            asserted = True
        try:
            fmap = ProjectiveMap(series, asserted)
        except ValueError as exc:
            r.fail("map", str(exc))

        if "hypersurfaces" not in doc:
            r.fail("hypersurfaces", "missing required field 'hypersurfaces'")
        Ds = []
        for i, hd in enumerate(r.seq(doc["hypersurfaces"], "hypersurfaces")):
            hpath = f"hypersurfaces[{i}]"
            hd = r.mapping(hd, hpath)
            if "poly" not in hd:
                r.fail(f"{hpath}.poly", "missing 'poly'")
            poly = _parse_poly(r, hd["poly"], f"{hpath}.poly", N + 1)
            actual = poly.total_degree
            declared = r.integer(hd["degree"], f"{hpath}.degree", 1) if "degree" in hd else actual
            if declared != actual:
                r.fail(f"{hpath}.degree", f"degree mismatch: declared {declared}, actual {actual}")
            name = str(hd.get("name") or f"D{i + 1}")
            Ds.append(Hypersurface(poly, declared, name))
        if not Ds:
            r.fail("hypersurfaces", "need at least one hypersurface")
        names = [D.name for D in Ds]
        if len(set(names)) != len(names):
            r.fail("hypersurfaces", f"duplicate hypersurface names {names}")
        Ds = tuple(Ds)

    M = r.integer(doc.get("M", 1), "M", 1)

    points = []
    for i, pt in enumerate(r.seq(doc.get("witness_points", []), "witness_points")):
        ppath = f"witness_points[{i}]"
        coords = [r.fraction(x, f"{ppath}[{j}]") for j, x in enumerate(r.seq(pt, ppath))]
        if len(coords) != N + 1:
            r.fail(ppath, f"expected {N + 1} homogeneous coordinates, got {len(coords)}")
        try:
            points.append(ProjectivePoint(tuple(coords)))
        except ValueError as exc:
            r.fail(ppath, str(exc))

    grid = [r.fraction(x, f"s_grid[{i}]") for i, x in enumerate(r.seq(doc.get("s_grid", []), "s_grid"))]
    for i in range(1, len(grid)):
        if not grid[i - 1] < grid[i]:
            r.fail(f"s_grid[{i}]", "s_grid must be strictly increasing")

    out = doc.get("output_dir")
    if out is not None and not isinstance(out, str):
        r.fail("output_dir", "expected a path string")

    return Scenario(p, N, fmap, Ds, variety, M, tuple(points), tuple(grid), sharp, out)


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def scenario_to_dict(sc: Scenario) -> dict:
    """Exact, explicit document for ``sc`` (generated parts written out in full)."""
    doc: dict[str, Any] = {"p": sc.p, "N": sc.N}
    if sc.variety.equations or sc.variety.dim is not None:
        doc["variety"] = {"dim": sc.variety.dimension(sc.N),
                          "equations": [q.to_terms() for q in sc.variety.equations]}
    doc["map"] = sc.map.to_literal()
    if sc.map.no_common_zero_asserted:
        doc["no_common_zero"] = "asserted"
    doc["hypersurfaces"] = [{"name": D.name, "degree": D.degree, "poly": D.poly.to_terms()}
                            for D in sc.hypersurfaces]
    doc["M"] = sc.M
    if sc.witness_points:
        doc["witness_points"] = [P.to_literal() for P in sc.witness_points]
    doc["s_grid"] = [str(s) for s in sc.s_grid]
    if sc.sharpness is not None:
        doc["sharpness"] = {"n": sc.sharpness[0], "d": sc.sharpness[1]}
    if sc.output_dir is not None:
        doc["output_dir"] = sc.output_dir
    return doc


def dump_scenario(sc: Scenario) -> str:
    return yaml.safe_dump(scenario_to_dict(sc), sort_keys=False, default_flow_style=None)


def scenario_from_sharpness(cfg: SharpnessConfig, s_grid=()) -> Scenario:
    return Scenario(cfg.p, cfg.n, cfg.map, cfg.hypersurfaces, VarietySpec(), 1,
                    (cfg.point,), tuple(Fraction(s) for s in s_grid), (cfg.n, cfg.d))
