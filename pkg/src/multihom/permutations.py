"""Particle-label permutations and the indistinguishability measures built on them.

A :class:`Permutation` is stored as its image tuple ``(s_1, ..., s_n)`` and acts
on a ket by ``|k_1 ... k_n> -> |k_{s_1} ... k_{s_n}>``.  With this convention the
image tuple reads like the name of the operator: ``Permutation((3, 1, 2))``
sends |123> to |312>.

Products compose the label maps, ``(p * q)(i) = p(q(i))``, so
``transposition(3, 2, 3) * transposition(3, 1, 2) == cycle(3)``.  On states this
is an anti-homomorphism: ``apply(p * q, psi) == apply(q, apply(p, psi))``.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .states import Ensemble, PureState, State, members, sector_basis


@dataclass(frozen=True)
class Permutation:
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(i) for i in self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise DomainError(f"{self.image!r} is not a bijection on 1..{len(image)}")
        object.__setattr__(self, "image", image)

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, label: int) -> int:
        return self.image[label - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if other.n != self.n:
            raise DomainError(f"cannot compose permutations of size {self.n} and {other.n}")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def __pow__(self, power: int) -> Permutation:
        base = self if power >= 0 else self.inverse()
        result = identity(self.n)
        for _ in range(abs(power)):
            result = result * base
        return result

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, s in enumerate(self.image, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def act(self, assignment: Sequence[int]) -> tuple[int, ...]:
        """Relabel one mode assignment."""
        return tuple(assignment[s - 1] for s in self.image)

    def to_json(self) -> str:
        return json.dumps(list(self.image))

    @classmethod
    def from_json(cls, text: str) -> Permutation:
        return cls(tuple(json.loads(text)))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def transposition(n: int, i: int, j: int) -> Permutation:
    """Swap labels ``i`` and ``j`` (1-based), fixing everything else."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise DomainError(f"transposition needs distinct labels in 1..{n}, got ({i}, {j})")
    image = list(range(1, n + 1))
    image[i - 1], image[j - 1] = j, i
    return Permutation(tuple(image))


def cycle(n: int, m: int | None = None) -> Permutation:
    """The cyclic relabeling ``(m, 1, 2, ..., m-1)`` on labels ``1..m`` (``m = n`` by default).

    Labels above ``m`` are fixed.  ``cycle(3)`` maps |123> to |312>.
    """
    m = n if m is None else m
    if n < 2 or not 2 <= m <= n:
        raise DomainError(f"cycle needs 2 <= m <= n, got n={n}, m={m}")
    return Permutation((m,) + tuple(range(1, m)) + tuple(range(m + 1, n + 1)))


def apply(perm: Permutation, state: State) -> State:
    """Relabel every basis ket of ``state``; ensembles are relabeled member by member."""
    if perm.n != state.n:
        raise DomainError(f"permutation on {perm.n} labels cannot act on {state.n} particles")
    if isinstance(state, PureState):
        return PureState(state.n, state.d, {perm.act(a): v for a, v in state.amplitudes.items()})
    return Ensemble(tuple((w, apply(perm, s)) for w, s in state.members))


def expectation(perm: Permutation, state: State) -> complex:
    """``<psi|P|psi>``, or ``Tr(P rho) = sum_m w_m <psi_m|P|psi_m>`` for an ensemble."""
    if perm.n != state.n:
        raise DomainError(f"permutation on {perm.n} labels cannot act on {state.n} particles")
    total = 0j
    for w, s in members(state):
        acc = 0j
        amps = s.amplitudes
        # <psi|P psi> = sum_a conj(psi(P a)) psi(a), since P|a> = |P a>
        for a, v in amps.items():
            u = amps.get(perm.act(a))
            if u is not None:
                acc += u.conjugate() * v
        total += w * acc
    return total


def _clip_unit(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def pairwise_measure(state: State, i: int, j: int) -> float:
    """Bipartite indistinguishability ``|<P_ij>|^2`` of particles ``i`` and ``j``."""
    t = transposition(state.n, i, j)
    return _clip_unit(abs(expectation(t, state)) ** 2)


def cyclic_measure(state: State, m: int | None = None) -> float:
    """``|<cycle>|^2`` on the first ``m`` labels; the full n-partite measure by default."""
    c = cycle(state.n, m)
    return _clip_unit(abs(expectation(c, state)) ** 2)


def sector_matrix(perm: Permutation) -> np.ndarray:
    """Matrix of ``perm`` on the n!-dimensional one-particle-per-mode sector.

    Rows and columns follow :func:`multihom.states.sector_basis`.
    """
    basis = sector_basis(perm.n)
    index = {a: i for i, a in enumerate(basis)}
    mat = np.zeros((len(basis), len(basis)))
    for col, a in enumerate(basis):
        mat[index[perm.act(a)], col] = 1.0
    return mat
