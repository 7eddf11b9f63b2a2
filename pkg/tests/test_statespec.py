import pytest

from multihom.states import (
    Ensemble,
    antisymmetric_state,
    barred_eigenstate,
    basis_state,
    cyclic_eigenstate,
    rho_representative,
    symmetric_state,
    to_json,
)
from multihom.statespec import StateSpecError, parse_state


@pytest.mark.parametrize("text,expected", [
    ("alpha", cyclic_eigenstate(3, 0)),
    ("beta", cyclic_eigenstate(3, 1)),
    ("gamma-bar", barred_eigenstate(3, 2)),
    ("lambda:n=5,k=2", cyclic_eigenstate(5, 2)),
    ("lambda-bar:k=1,n=4", barred_eigenstate(4, 1)),
    ("sym:n=3", symmetric_state(3)),
    ("antisym:n=4", antisymmetric_state(4)),
    ("basis:123", basis_state((1, 2, 3))),
    ("basis:15", basis_state((1, 5))),
])
def test_pure_forms(text, expected):
    state = parse_state(text)
    assert state.allclose(expected, 1e-15) and state.d == expected.d


def test_rho_form():
    rho = parse_state("rho:n=3,k=1")
    assert isinstance(rho, Ensemble)
    assert [w for w, _ in rho.members] == [w for w, _ in rho_representative(3, 1).members]


def test_mix_form():
    rho = parse_state("mix:0.5*rho:n=3,k=1+0.5*rho:n=3,k=2")
    assert len(rho) == 4 and all(w == 0.25 for w, _ in rho.members)
    rho = parse_state("mix:0.25*alpha+0.75*beta")
    assert [w for w, _ in rho.members] == [0.25, 0.75]


def test_json_path(tmp_path):
    path = tmp_path / "psi.json"
    path.write_text(to_json(cyclic_eigenstate(4, 3)))
    assert parse_state(str(path)).allclose(cyclic_eigenstate(4, 3), 1e-15)


@pytest.mark.parametrize("text,position", [
    ("delta", 0),
    ("lambda:n=3", 7),
    ("lambda:n=3,k=x", 11),
    ("lambda:n=3,k=3", 0),
    ("alpha:n=3", 6),
    ("basis:1a3", 6),
    ("mix:0.5*alpha+0.5*mix:1*beta", 18),
    ("", 0),
])
def test_errors_carry_position(text, position):
    with pytest.raises(StateSpecError) as info:
        parse_state(text)
    assert info.value.position == position
    lines = info.value.diagnostic().splitlines()
    assert lines[2].index("^") - 2 == position


def test_missing_file():
    with pytest.raises(StateSpecError, match="cannot read"):
        parse_state("/nonexistent/state.json")


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\"n\": 2}")
    with pytest.raises(StateSpecError, match="malformed"):
        parse_state(str(path))


def test_mix_weights_must_sum_to_one():
    with pytest.raises(StateSpecError):
        parse_state("mix:1*alpha+3*beta")
