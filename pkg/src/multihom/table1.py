"""Reference count statistics for three particles on the tritter."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F

from .errors import DomainError
from .multiport import count_distribution, evolve, qft_unitary
from .states import (
    State,
    antisymmetric_state,
    basis_state,
    rho_representative,
    symmetric_state,
)
from .suppression import class_probabilities

ROWS = [(1, 1, 1), (3, 0, 0), (0, 3, 0), (0, 0, 3), (2, 1, 0),
        (0, 2, 1), (1, 0, 2), (1, 2, 0), (0, 1, 2), (2, 0, 1)]

_z, _n, _b = F(1, 27), F(1, 9), F(2, 9)
REFERENCE: dict[str, list[F]] = {
    "rho_alpha": [F(2, 3), _n, _n, _n, 0, 0, 0, 0, 0, 0],
    "rho_beta": [0, 0, 0, 0, F(1, 3), F(1, 3), F(1, 3), 0, 0, 0],
    "rho_gamma": [0, 0, 0, 0, 0, 0, 0, F(1, 3), F(1, 3), F(1, 3)],
    "plus": [F(1, 3), _b, _b, _b, 0, 0, 0, 0, 0, 0],
    "minus": [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    "basis_123": [_b, _z, _z, _z, _n, _n, _n, _n, _n, _n],
}


def reference_states() -> dict[str, State]:
    return {
        "rho_alpha": rho_representative(3, 0),
        "rho_beta": rho_representative(3, 1),
        "rho_gamma": rho_representative(3, 2),
        "plus": symmetric_state(3),
        "minus": antisymmetric_state(3),
        "basis_123": basis_state((1, 2, 3)),
    }


def tritter_column(state: State) -> list[float]:
    """Table-ordered count probabilities of ``state`` after the tritter."""
    dist = count_distribution(evolve(state, qft_unitary(3)))
    return [dist[r] for r in ROWS]


def four_parameter_column(state: State) -> tuple[list[float], tuple[float, float, float]]:
    """Predicted column from ``p_111`` and the class weights, and those class weights.

    The rows read ``p_111``, ``(p_0 - p_111)/3`` three times, ``p_1/3`` three
    times and ``p_2/3`` three times.
    """
    dist = count_distribution(evolve(state, qft_unitary(3)))
    p0, p1, p2 = class_probabilities(dist).p
    p111 = dist[(1, 1, 1)]
    return [p111] + [(p0 - p111) / 3] * 3 + [p1 / 3] * 3 + [p2 / 3] * 3, (p0, p1, p2)


@dataclass
class Table1Report:
    columns: dict[str, list[float]]
    errors: dict[str, list[float]]
    tolerance: float
    extra: dict | None = field(default=None)

    @property
    def max_error(self) -> float:
        return max(max(col) for col in self.errors.values())

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance


def reproduce(tolerance: float = 1e-9, extra: State | None = None, extra_name: str = "rho") -> Table1Report:
    columns, errors = {}, {}
    for name, state in reference_states().items():
        col = tritter_column(state)
        columns[name] = col
        errors[name] = [abs(c - float(r)) for c, r in zip(col, REFERENCE[name])]
    report = Table1Report(columns, errors, tolerance)
    if extra is not None:
        if extra.n != 3 or extra.d != 3:
            raise DomainError(f"the tritter table needs n = d = 3, got n={extra.n}, d={extra.d}")
        col = tritter_column(extra)
        predicted, p = four_parameter_column(extra)
        report.extra = {
            "name": extra_name,
            "computed": col,
            "class_probabilities": list(p),
            "four_parameter_form": predicted,
            "relation_error": max(abs(a - b) for a, b in zip(col, predicted)),
        }
    return report
