import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_nevanlinna import ScenarioError, dump_scenario, parse_scenario, sharpness_family
from padic_nevanlinna.scenario import scenario_from_sharpness

MINIMAL = """\
p: 3
N: 1
map:
  - ["0", "1"]
  - ["1"]
hypersurfaces:
  - name: D1
    degree: 1
    poly: [["1", [1, 0]]]
"""


def test_minimal_document():
    sc = parse_scenario(MINIMAL)
    assert sc.p == 3 and sc.N == 1 and sc.M == 1
    assert sc.variety.equations == () and sc.variety.dimension(1) == 1
    assert sc.hypersurfaces[0].name == "D1"


def test_composite_prime():
    with pytest.raises(ScenarioError, match="p must be prime") as info:
        parse_scenario(MINIMAL.replace("p: 3", "p: 4"))
    assert info.value.line == 1


def test_degree_mismatch_points_at_field():
    text = MINIMAL.replace("degree: 1", "degree: 2")
    with pytest.raises(ScenarioError, match="degree mismatch: declared 2, actual 1") as info:
        parse_scenario(text)
    assert info.value.path == "hypersurfaces[0].degree"
    assert info.value.line == 8
    assert "line 8" in str(info.value)


def test_floats_rejected():
    with pytest.raises(ScenarioError, match="map\\[1\\]\\[0\\]"):
        parse_scenario(MINIMAL.replace('["1"]\n', '[0.5]\n', 1))


def test_fraction_strings():
    sc = parse_scenario(MINIMAL.replace('["1"]\n', '["-3/4"]\n', 1) + 's_grid: ["-1/2", 0, "5/3"]\n')
    assert str(sc.map.coords[1].coeffs[0]) == "-3/4"
    assert [str(s) for s in sc.s_grid] == ["-1/2", "0", "5/3"]


@pytest.mark.parametrize("extra, needle", [
    ('s_grid: [1, 0]\n', "strictly increasing"),
    ('M: 0\n', "M"),
    ('colour: red\n', "unknown key"),
])
def test_invalid_fields(extra, needle):
    with pytest.raises(ScenarioError, match=needle):
        parse_scenario(MINIMAL + extra)


def test_inhomogeneous_polynomial():
    text = MINIMAL.replace('poly: [["1", [1, 0]]]', 'poly: [["1", [1, 0]], ["1", [1, 1]]]')
    text = text.replace("    degree: 1\n", "")
    with pytest.raises(ScenarioError, match="homogeneous"):
        parse_scenario(text)


def test_malformed_yaml():
    with pytest.raises(ScenarioError, match="malformed"):
        parse_scenario("p: [3\n")


def test_certified_coordinate():
    text = MINIMAL.replace('- ["0", "1"]', '- {coefficients: ["1", "3", "81"], certificate: ["3", "0"]}')
    sc = parse_scenario(text + "no_common_zero: asserted\n")
    assert sc.map.coords[0].certificate == (3, 0)
    assert sc.map.no_common_zero_asserted


def test_sharpness_block_generates_family():
    sc = parse_scenario("p: 5\nsharpness: {n: 3, d: 2}\n")
    assert sc.N == 3 and len(sc.hypersurfaces) == 3


@settings(max_examples=16, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.sampled_from([2, 3, 5]))
def test_round_trip(n, d, p):
    sc = scenario_from_sharpness(sharpness_family(n, d, p), ["0", "1/2", "3"])
    text = dump_scenario(sc)
    again = parse_scenario(text)
    assert again == sc
    assert dump_scenario(again) == text
