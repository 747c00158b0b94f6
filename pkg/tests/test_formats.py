import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kaehler import formats
from kaehler.core import COMPLEX, PARA, Structure
from kaehler.csc import solve_csc
from kaehler.errors import FormatError, SymmetryConflict
from kaehler.fixtures import rotating_structure_jet, surface_theta
from kaehler.identities import random_model
from kaehler.realization import metric_from_theta, random_theta


def through_text(doc):
    return json.loads(formats.dumps(doc))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([COMPLEX, PARA]), st.booleans())
def test_model_round_trip(seed, kind, kaehler):
    M = random_model(Structure(4, kind), seed, kaehler_only=kaehler)
    assert formats.model_from_json(through_text(formats.model_to_json(M))) == M


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([COMPLEX, PARA]))
def test_theta_and_metric_round_trip(seed, kind):
    th = random_theta(Structure(4, kind), seed)
    assert formats.theta_from_json(through_text(formats.theta_to_json(th))) == th
    g = metric_from_theta(th)
    assert formats.metric_from_json(through_text(formats.metric_to_json(g))) == g


def test_potential_round_trip():
    P = solve_csc(surface_theta(), None, 6)
    assert formats.potential_from_json(through_text(formats.potential_to_json(P))) == P


def test_jet_round_trip():
    J0, dJ = rotating_structure_jet()
    doc = through_text(formats.jet_to_json(J0, dJ, ["x1", "y1", "x2", "y2", "x3", "y3"]))
    J0b, dJb = formats.jet_from_json(doc)
    assert np.all(J0 == J0b) and np.all(dJ == dJb)


def test_model_file_layout():
    doc = formats.model_to_json(random_model(Structure(4, COMPLEX), 0, kaehler_only=True))
    assert set(doc) == {"m", "kind", "A"}
    assert all(isinstance(e["v"], str) for e in doc["A"])


def test_emit_is_byte_stable():
    M = random_model(Structure(4, PARA), 9)
    assert formats.dumps(formats.model_to_json(M)) == formats.dumps(formats.model_to_json(M))


@pytest.mark.parametrize(
    "doc",
    [
        {"kind": "complex", "A": []},
        {"m": 4, "kind": "hyper", "A": []},
        {"m": 4, "kind": "complex"},
        {"m": 4, "kind": "complex", "A": [{"i": 1, "j": 2, "k": 2, "l": 1, "v": 1}]},
        {"m": 4, "kind": "complex", "A": [{"i": 1, "j": 2, "k": 2, "l": 5, "v": "1"}]},
        {"m": 4, "kind": "complex", "A": [{"i": 1, "j": 2, "k": 2, "v": "1"}]},
        {"m": 4, "kind": "complex", "A": [{"i": 1, "j": 2, "k": 2, "l": 1, "v": "0.5"}]},
    ],
)
def test_bad_model_files(doc):
    with pytest.raises(FormatError):
        formats.model_from_json(doc)


def test_conflicting_entries():
    doc = {
        "m": 4,
        "kind": "complex",
        "A": [{"i": 1, "j": 2, "k": 2, "l": 1, "v": "1"}, {"i": 2, "j": 1, "k": 2, "l": 1, "v": "1"}],
    }
    with pytest.raises(SymmetryConflict):
        formats.model_from_json(doc)


def test_bad_metric_files():
    with pytest.raises(FormatError):
        formats.metric_from_json({"m": 4, "kind": "complex", "entries": [{"i": 1, "j": 1, "monomials": [{"exp": [1], "c": "1"}]}]})
    with pytest.raises(FormatError):
        formats.metric_from_json({"m": 4, "kind": "complex", "entries": [{"i": 9, "j": 1, "monomials": []}]})


def test_read_errors(tmp_path):
    with pytest.raises(FormatError):
        formats.read(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        formats.read(bad)
