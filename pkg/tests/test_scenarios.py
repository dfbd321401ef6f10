"""Scenario documents and CSV emission."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nearband.scenarios import (
    CutSpec,
    GridSpec,
    Scenario,
    ScenarioError,
    SweepSpec,
    SweepTable,
    emit_csv,
    parse_scenario,
    serialize_scenario,
)

MINIMAL = """
[scenario]
schema_version = 1
preset = n260
n_antennas = 64
tau_db = -1
"""


def test_minimal_document_defaults():
    s = parse_scenario(MINIMAL)
    assert s.carrier_hz == 39e9
    assert s.band_preset == "n260"
    assert s.dbar == 0.5
    assert s.theta_worst_deg == 60.0
    assert s.tau_db == -1.0
    assert s.taus_db == (-1.0,)
    assert s.sweep is None


def test_n261_preset_carrier():
    s = parse_scenario(MINIMAL.replace("n260", "n261"))
    assert s.carrier_hz == 28e9


@pytest.mark.parametrize("mutation, fragment", [
    (lambda d: d.replace("preset = n260", "preset = n261\ncarrier_hz = 30e9"), "conflicts"),
    (lambda d: d.replace("preset = n260", "preset = custom"), "required for preset"),
    (lambda d: d.replace("preset = n260", "preset = ka_band"), "unknown preset"),
    (lambda d: d + "mystery = 1\n", "unknown key"),
    (lambda d: d + "\n[extras]\nx = 1\n", "unknown section"),
    (lambda d: d.replace("schema_version = 1", "schema_version = 7"), "unsupported version"),
    (lambda d: d.replace("tau_db = -1", "tau_db = 0.3"), "negative"),
    (lambda d: d.replace("tau_db = -1", "tau_db = lots"), "expected a number"),
    (lambda d: d.replace("n_antennas = 64", "n_antennas = 0"), ">= 1"),
    (lambda d: d.replace("n_antennas = 64", ""), "required key is missing"),
    (lambda d: d + "theta_deg = 95\n", "|theta| < 90"),
    (lambda d: d + "dbar = -0.5\n", "positive"),
    (lambda d: d + "\n[sweep]\naxis = q\nmin = 0\nmax = 1\npoints = 4\n", "unknown axis"),
    (lambda d: d + "\n[sweep]\naxis = f_hz\nmin = 5\nmax = 1\npoints = 4\n", "strictly less"),
    (lambda d: d + "\n[sweep]\naxis = f_hz\nmin = 0\nmax = 1\npoints = 1\n", ">= 2"),
    (lambda d: d + "\n[sweep]\naxis = f_hz\nmin = 0\nmax = 1\npoints = 4\nscale = cubic\n",
     "linear|log"),
    (lambda d: d + "\n[sweep]\naxis = f_hz\nmin = -1\nmax = 1\npoints = 4\nscale = log\n",
     "log scale requires positive"),
], ids=lambda v: v if isinstance(v, str) else "")
def test_rejections(mutation, fragment):
    with pytest.raises(ScenarioError, match=fragment.replace("|", r"\|")):
        parse_scenario(mutation(MINIMAL))


def test_custom_preset_roundtrip():
    doc = MINIMAL.replace("preset = n260", "preset = custom\ncarrier_hz = 72.5e9")
    s = parse_scenario(doc)
    assert s.carrier_hz == 72.5e9
    assert parse_scenario(serialize_scenario(s)) == s


def test_linear_tau_interpretation():
    s = parse_scenario(MINIMAL.replace("tau_db = -1", "tau_db = 0.95"),
                       taus_are_linear=True)
    assert s.tau_db == pytest.approx(10 * math.log10(0.95), rel=1e-14)
    with pytest.raises(ScenarioError, match="linear threshold"):
        parse_scenario(MINIMAL.replace("tau_db = -1", "tau_db = 1.5"),
                       taus_are_linear=True)


def test_override_paths():
    s = parse_scenario(MINIMAL, overrides={
        "tau_db": "-2.5",
        "scenario.theta_deg": "30",
        "sweep.axis": "tau_db", "sweep.min": "-3", "sweep.max": "-0.5",
        "sweep.points": "7", "sweep.scale": "linear",
    })
    assert s.tau_db == -2.5
    assert s.theta_deg == 30.0
    assert s.sweep == SweepSpec("tau_db", -3.0, -0.5, 7, "linear")
    with pytest.raises(ScenarioError, match="unknown override"):
        parse_scenario(MINIMAL, overrides={"sweep.banana": "1"})


scenario_strategy = st.builds(
    Scenario,
    carrier_hz=st.sampled_from([28e9, 39e9]),
    n_antennas=st.integers(min_value=1, max_value=4096),
    tau_db=st.floats(min_value=-30.0, max_value=-0.01),
    band_preset=st.just("custom"),
    dbar=st.floats(min_value=0.1, max_value=1.0),
    theta_deg=st.floats(min_value=-89.0, max_value=89.0),
    theta_worst_deg=st.floats(min_value=1.0, max_value=89.0),
    tau_list_db=st.lists(st.floats(min_value=-30.0, max_value=-0.01),
                         min_size=0, max_size=4).map(tuple),
    sweep=st.one_of(
        st.none(),
        st.builds(SweepSpec, axis=st.sampled_from(["f_hz", "tau_db", "gamma2"]),
                  lo=st.just(1.0), hi=st.just(2.0),
                  points=st.integers(min_value=2, max_value=64),
                  scale=st.sampled_from(["linear", "log"])),
    ),
    grid=st.builds(GridSpec,
                   gamma1_max=st.floats(min_value=0.5, max_value=8.0),
                   gamma2_max=st.floats(min_value=0.5, max_value=8.0),
                   gamma1_points=st.integers(min_value=2, max_value=300),
                   gamma2_points=st.integers(min_value=2, max_value=300)),
    cuts=st.builds(CutSpec,
                   gamma1_values=st.lists(st.floats(min_value=0.0, max_value=4.0),
                                          min_size=1, max_size=4).map(tuple),
                   gamma2_values=st.lists(st.floats(min_value=0.1, max_value=4.0),
                                          min_size=1, max_size=4).map(tuple),
                   points=st.integers(min_value=2, max_value=500)),
)


@settings(max_examples=100)
@given(scenario_strategy)
def test_serialize_parse_roundtrip(scenario):
    assert parse_scenario(serialize_scenario(scenario)) == scenario


def test_emit_csv_shapes():
    empty = SweepTable(("x", "y"), (), (("tool", "t"),))
    assert emit_csv(empty) == b"# tool = t\nx,y\n"
    one = SweepTable(("v",), ((0.5,),), ())
    assert emit_csv(one) == b"v\n0.5\n"


def test_emit_csv_deterministic_and_lf_only():
    table = SweepTable(("a", "b"), ((1.5, math.inf), (0.1, 3)), (("k", "v"),))
    blob = emit_csv(table)
    assert blob == emit_csv(table)
    assert b"\r" not in blob
    assert b"inf" in blob
    assert blob.decode().splitlines()[2] == "1.5,inf"


def test_table_rejects_bad_values():
    with pytest.raises(ValueError):
        SweepTable(("a",), ((math.nan,),), ())
    with pytest.raises(ValueError):
        SweepTable(("a",), ((-math.inf,),), ())
    with pytest.raises(ValueError):
        SweepTable(("a", "b"), ((1.0,),), ())


def test_csv_floats_roundtrip():
    values = (0.1, 1 / 3, 7.25e-9, 39e9)
    table = SweepTable(("x",), tuple((v,) for v in values), ())
    lines = emit_csv(table).decode().splitlines()[1:]
    assert tuple(float(s) for s in lines) == values
