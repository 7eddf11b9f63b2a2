"""Suppression classes on the Fourier multiport and the operational n-partite measure.

For n particles on the n-port Fourier multiport, a count configuration
``(a_0, ..., a_{n-1})`` belongs to class ``k = sum_i i * a_i mod n``.  An input
``cyclic_eigenstate(n, k)`` only ever populates class ``k``.  The class weights
``p_k`` give the operational measure ``|sum_k p_k lambda^k|^2``.
"""

from __future__ import annotations

import json
import math
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import DomainError
from .multiport import (
    SUM_TOL,
    CountConfiguration,
    OutcomeDistribution,
    configurations,
    output_distribution,
    qft_unitary,
)
from .states import State, members, root_of_unity

PURITY_TOL = 1e-9


@dataclass(frozen=True)
class ClassProbabilities:
    n: int
    p: tuple[float, ...]

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        if len(p) != self.n:
            raise DomainError(f"expected {self.n} class probabilities, got {len(p)}")
        if any(x < -SUM_TOL or x > 1 + SUM_TOL for x in p):
            raise DomainError(f"class probabilities {p} are not in [0, 1]")
        if abs(math.fsum(p) - 1.0) > SUM_TOL:
            raise DomainError(f"class probabilities {p} do not sum to 1")
        object.__setattr__(self, "p", tuple(min(max(x, 0.0), 1.0) for x in p))

    def __getitem__(self, k: int) -> float:
        return self.p[k]

    def to_dict(self, digits: int | None = None) -> dict:
        p = self.p if digits is None else [float(f"{x:.{digits}g}") + 0.0 for x in self.p]
        return {"n": self.n, "p": list(p)}

    def to_json(self, digits: int | None = None, **kwargs) -> str:
        return json.dumps(self.to_dict(digits), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> ClassProbabilities:
        doc = json.loads(text)
        return cls(int(doc["n"]), tuple(doc["p"]))


def suppression_class(config: Sequence[int]) -> int:
    """``sum_i i * a_i mod n`` for a configuration of n particles on n ports."""
    config = tuple(int(a) for a in config)
    n = sum(config)
    if any(a < 0 for a in config):
        raise DomainError(f"negative particle count in {config}")
    if len(config) != n or n < 2:
        raise DomainError(f"suppression classes need n = d >= 2, got n={n}, d={len(config)}")
    return sum(i * a for i, a in enumerate(config)) % n


def class_sets(n: int) -> list[list[CountConfiguration]]:
    """Partition of all configurations of n particles on n ports into ``A_0 .. A_{n-1}``."""
    if int(n) != n or n < 2:
        raise DomainError(f"class_sets needs n >= 2, got {n!r}")
    classes: list[list[CountConfiguration]] = [[] for _ in range(n)]
    for c in configurations(n, n):
        classes[suppression_class(c)].append(c)
    return classes


def class_sets_json(n: int) -> str:
    """Canonical JSON form of :func:`class_sets`, stable for golden files."""
    return json.dumps({"n": n, "classes": [[list(c) for c in cls] for cls in class_sets(n)]})


def class_probabilities(dist: OutcomeDistribution) -> ClassProbabilities:
    if dist.n != dist.d:
        raise DomainError(f"class probabilities need n = d, got n={dist.n}, d={dist.d}")
    p = [0.0] * dist.n
    for c, prob in dist.items():
        p[suppression_class(c)] += prob
    return ClassProbabilities(dist.n, tuple(p))


def operational_measure(cp: ClassProbabilities) -> float:
    """``|sum_k p_k lambda^k|^2`` with ``lambda = exp(2 pi i / n)``."""
    z = sum(p * root_of_unity(cp.n, k) for k, p in enumerate(cp.p))
    return min(max(abs(z) ** 2, 0.0), 1.0)


def _check_pipeline_input(state: State) -> None:
    if state.n != state.d:
        raise DomainError(f"the Fourier pipeline needs n = d, got n={state.n}, d={state.d}")
    if not all(s.in_sector() for _, s in members(state)):
        raise DomainError("the Fourier pipeline needs one particle per input port")


def multiport_class_probabilities(state: State, method: str = "auto") -> ClassProbabilities:
    _check_pipeline_input(state)
    return class_probabilities(output_distribution(state, qft_unitary(state.n), method))


def measure_via_multiport(state: State, method: str = "auto") -> float:
    """Operational measure read off the Fourier multiport count statistics."""
    return operational_measure(multiport_class_probabilities(state, method))


def mode_shift_expectation(state: State) -> complex:
    """``<X>`` for the global mode shift ``X|k_1 ... k_n> = |k_1+1 ... k_n+1>`` (mod d).

    ``X`` commutes with every particle permutation.  On the Fourier multiport its
    eigenspace with eigenvalue ``lambda^k`` feeds exactly class ``A_k``, so
    ``|<X>|^2`` is what :func:`measure_via_multiport` measures.
    """
    d = state.d
    total = 0j
    for w, s in members(state):
        amps = s.amplitudes
        acc = 0j
        for a, v in amps.items():
            u = amps.get(tuple(k % d + 1 for k in a))
            if u is not None:
                acc += u.conjugate() * v
        total += w * acc
    return total


@dataclass(frozen=True)
class Classification:
    """Outcome of :func:`classify_state`: a single class ``label`` or ``None`` if mixed."""

    label: int | None
    probabilities: ClassProbabilities

    @property
    def is_pure(self) -> bool:
        return self.label is not None


def classify_state(dist: OutcomeDistribution, tol: float = PURITY_TOL) -> Classification:
    cp = class_probabilities(dist)
    for k, p in enumerate(cp.p):
        if 1.0 - p < tol:
            return Classification(k, cp)
    return Classification(None, cp)
