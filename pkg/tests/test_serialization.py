import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symsep import serialization as ser
from symsep import states
from symsep.exceptions import NonHermitian, ParseError, ValidationError
from symsep.witness import Witness

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=9, max_size=9))
def test_matrix_round_trip_exact(entries):
    m = np.array([complex(a, b) for a, b in entries]).reshape(3, 3)
    back = ser.matrix_from_json(json.loads(ser.dumps(ser.matrix_to_json(m))))
    assert back.tobytes() == m.tobytes()


@pytest.mark.parametrize("seed", range(5))
def test_state_file_round_trip(tmp_path, seed):
    s = states.random_mixed_symmetric_state(3, seed)
    path = tmp_path / "s.json"
    ser.save_state(s, path)
    back = ser.load_state(path)
    assert back.d == 3
    assert back.rho.tobytes() == s.rho.tobytes()


def test_multiqubit_round_trip(tmp_path):
    s = states.smolin_state(2)
    ser.save_state(s, tmp_path / "m.json")
    back = ser.load_state(tmp_path / "m.json")
    assert back.n == 4
    assert np.array_equal(back.rho, s.rho)


def test_file_layout(tmp_path):
    ser.save_state(states.triplet_state(), tmp_path / "t.json")
    obj = json.loads((tmp_path / "t.json").read_text())
    assert obj["kind"] == "bipartite" and obj["d"] == 2
    assert len(obj["matrix"]) == 4 and len(obj["matrix"][1]) == 4
    assert obj["matrix"][1][2] == [pytest.approx(0.5), 0.0]


@pytest.mark.parametrize(
    "obj",
    [
        [],
        {"kind": "bipartite", "d": 2},
        {"kind": "tripartite", "d": 2, "matrix": [[[1, 0]]]},
        {"kind": "bipartite", "d": "2", "matrix": [[[1, 0]]]},
        {"kind": "bipartite", "d": 1, "matrix": []},
        {"kind": "bipartite", "d": 1, "matrix": [[1]]},
        {"kind": "bipartite", "d": 1, "matrix": [[[1, 0, 0]]]},
        {"kind": "bipartite", "d": 1, "matrix": [[["1", 0]]]},
        {"kind": "bipartite", "d": 1, "matrix": [[[True, 0]]]},
        {"kind": "bipartite", "d": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0]]]},
    ],
)
def test_parse_errors(obj):
    with pytest.raises(ParseError):
        ser.state_from_dict(obj)


def test_garbage_and_missing_files(tmp_path):
    p = tmp_path / "garbage.json"
    p.write_text("this is not json {")
    with pytest.raises(ParseError):
        ser.load_state(p)
    with pytest.raises(ParseError):
        ser.load_state(tmp_path / "absent.json")


def test_infinite_entries_rejected():
    with pytest.raises(ParseError):
        ser.matrix_from_json([[[float("inf"), 0.0]]])


def test_validation_applies_on_load():
    rows = ser.matrix_to_json(np.diag([0.7, 0.2, 0.2, -0.1]))
    with pytest.raises(ValidationError):
        ser.state_from_dict({"kind": "bipartite", "d": 2, "matrix": rows})


def test_witness_round_trip(tmp_path):
    m = states.symmetric_projector(2) / 3
    w = Witness(m, 0.1 + 0.2)
    ser.save_witness(w, tmp_path / "w.json")
    back = ser.load_witness(tmp_path / "w.json")
    assert back.constant == w.constant
    assert back.kind == "symmetric"
    assert back.operator.tobytes() == w.operator.tobytes()


def test_witness_parse_errors():
    with pytest.raises(ParseError):
        ser.witness_from_dict({"kind": "symmetric", "matrix": [[[1, 0]]]})
    with pytest.raises(ParseError):
        ser.witness_from_dict({"kind": "symmetric", "constant": "x", "matrix": [[[1, 0]]]})
    with pytest.raises(ValidationError):
        ser.witness_from_dict({"kind": "odd", "constant": 1, "matrix": [[[1, 0]]]})
    bad = ser.matrix_to_json(np.triu(np.ones((4, 4))))
    with pytest.raises((ValidationError, NonHermitian)):
        ser.witness_from_dict({"kind": "symmetric", "constant": 1, "matrix": bad})


def test_dumps_handles_numpy_and_rejects_nan():
    text = ser.dumps({"a": np.float64(0.1), "b": np.arange(2), "c": np.bool_(True)})
    assert json.loads(text) == {"a": 0.1, "b": [0, 1], "c": True}
    with pytest.raises(ValueError):
        ser.dumps({"x": float("nan")})
