import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from vspan import (
    Diagram,
    DiagramValidationError,
    GaussCodeError,
    Passage,
    Role,
    connected_components,
    is_alternating,
    parse_gauss,
    random_diagram,
    writhe,
)
from conftest import HOPF, TREFOIL, VTREFOIL


def test_free_loop_parses():
    d = parse_gauss("()")
    assert d.crossing_count == 0
    assert d.free_loops == 1


def test_trefoil_parses():
    d = parse_gauss(TREFOIL)
    assert d.crossing_count == 3
    assert len(d.components) == 1


def test_missing_sign_reports_token_and_position():
    with pytest.raises(GaussCodeError) as err:
        parse_gauss("O1+U2+ ; U1+O2")
    assert "sign missing on token 'O2'" in str(err.value)
    assert err.value.position == 12


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("O1+U1+O1+", "occurs 3 times"),
        ("O1+O1+", "two OVER passages"),
        ("O1+U1-", "inconsistent signs"),
    ],
)
def test_validation_errors(text, fragment):
    with pytest.raises(DiagramValidationError, match=fragment):
        parse_gauss(text)


@pytest.mark.parametrize("text", ["", "O1+ ;", "X1+", "() O1+U1+", "O1+U1+ ; ; ()"])
def test_syntax_errors(text):
    with pytest.raises(GaussCodeError):
        parse_gauss(text)


def test_labels_are_renumbered_but_remembered():
    d = parse_gauss("O7+U3+ ; U7+O3+")
    assert d.to_gauss() == "O1+U2+ ; U1+O2+"
    assert d.labels == (7, 3)
    assert d.crossing_from_label(3) == 1
    with pytest.raises(KeyError):
        d.crossing_from_label(5)


def test_unicode_minus_and_whitespace():
    assert parse_gauss("O1−  U1−").signs == (-1,)
    assert parse_gauss(" O1+ U2+ O3+\tU1+ O2+ U3+ ") == parse_gauss(TREFOIL)


@pytest.mark.parametrize("text, w", [("()", 0), (TREFOIL, 3), ("O1+U2-O3+U1+O2-U3+", 1)])
def test_writhe(text, w):
    assert writhe(parse_gauss(text)) == w


@pytest.mark.parametrize("text, m", [(HOPF, 1), ("O1+U1+ ; O2+U2+", 2), ("() ; ()", 2), ("O1+U1+ ; ()", 2)])
def test_connected_components(text, m):
    assert connected_components(parse_gauss(text)).m == m


def test_component_blocks_partition():
    d = parse_gauss("O1+U2+ ; O3+U3+ ; U1+O2+ ; ()")
    blocks = connected_components(d).blocks
    assert sorted(sorted(b) for b in blocks) == [[0, 2], [1], [3]]


@pytest.mark.parametrize(
    "text, alt",
    [(TREFOIL, True), (VTREFOIL, False), ("()", True), ("O1+ ; U1+", False), (HOPF, True)],
)
def test_is_alternating(text, alt):
    assert is_alternating(parse_gauss(text)) is alt


def test_json_round_trip(trefoil):
    blob = json.dumps(trefoil.to_json())
    assert Diagram.from_json(json.loads(blob)) == trefoil


def test_json_rejects_garbage():
    with pytest.raises(DiagramValidationError):
        Diagram.from_json({"components": [[{"id": 1}]]})


def test_passage_validation():
    with pytest.raises(ValueError):
        Passage(0, Role.OVER, 2)


def test_alpha_is_fixed_point_free_involution(trefoil):
    a = trefoil.alpha()
    assert all(a[a[x]] == x and a[x] != x for x in range(len(a)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 9), st.integers(0, 10**6))
def test_emit_parse_identity(c, seed):
    d = random_diagram(c, seed)
    assert parse_gauss(d.to_gauss()) == d
    assert d.crossing_count * 2 == sum(len(comp) for comp in d.components)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 10**6))
def test_writhe_and_components_ignore_rotation_and_order(c, seed):
    d = random_diagram(c, seed)
    rng = random.Random(seed)
    comps = [list(comp) for comp in d.components]
    for comp in comps:
        if comp:
            s = rng.randrange(len(comp))
            comp[:] = comp[s:] + comp[:s]
    rng.shuffle(comps)
    e = Diagram.from_components(comps)
    assert writhe(e) == writhe(d)
    assert connected_components(e).m == connected_components(d).m
    assert e.canonical_key() == d.canonical_key()
