"""First-quantized multiparticle states.

A basis ket is a *mode assignment*: a tuple ``(k_1, ..., k_n)`` saying that
particle ``i`` sits in mode ``k_i``.  Mode indices are 1-based, so ``(1, 2, 3)``
is the ket |123>.  (Output *count* configurations, in :mod:`multihom.multiport`,
are indexed from 0.)

A :class:`PureState` is a sparse map from assignments to complex amplitudes and
an :class:`Ensemble` is a convex mixture of pure states standing in for a
density operator.  Both are immutable.
"""

from __future__ import annotations

import itertools
import json
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from types import MappingProxyType
from typing import Union

import numpy as np

from .errors import DomainError, NormalizationError

ModeAssignment = tuple[int, ...]

PRUNE = 1e-14
NORM_TOL = 1e-12


def check_assignment(assignment: Sequence[int], n: int, d: int) -> ModeAssignment:
    """Validate ``assignment`` against ``(n, d)`` and return it as a tuple of ints."""
    try:
        a = tuple(int(k) for k in assignment)
    except (TypeError, ValueError):
        raise DomainError(f"mode assignment {assignment!r} is not a sequence of integers") from None
    if any(int(k) != k for k in assignment):
        raise DomainError(f"mode assignment {assignment!r} has non-integer entries")
    if len(a) != n:
        raise DomainError(f"mode assignment {a} has {len(a)} entries, expected n={n}")
    for k in a:
        if not 1 <= k <= d:
            raise DomainError(f"mode {k} in {a} is outside 1..{d}")
    return a


def _check_sizes(n: int, d: int) -> None:
    if int(n) != n or n < 1:
        raise DomainError(f"particle number must be a positive integer, got {n!r}")
    if int(d) != d or d < 1:
        raise DomainError(f"mode number must be a positive integer, got {d!r}")


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized superposition of mode assignments.

    Use :func:`make_pure` to build one from raw terms; the constructor itself
    only validates and does not normalize.
    """

    n: int
    d: int
    amplitudes: Mapping[ModeAssignment, complex]

    def __post_init__(self):
        _check_sizes(self.n, self.d)
        amps = {}
        for a, v in self.amplitudes.items():
            a = check_assignment(a, self.n, self.d)
            v = complex(v)
            if abs(v) >= PRUNE:
                amps[a] = v
        if not amps:
            raise NormalizationError("state has no amplitude above the prune threshold")
        object.__setattr__(self, "amplitudes", MappingProxyType(dict(sorted(amps.items()))))

    def __getitem__(self, assignment) -> complex:
        return self.amplitudes.get(tuple(assignment), 0j)

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __iter__(self):
        return iter(self.amplitudes.items())

    def __repr__(self) -> str:
        terms = ", ".join(f"{''.join(map(str, a)) if self.d < 10 else a}: {v:.6g}"
                          for a, v in list(self.amplitudes.items())[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"PureState(n={self.n}, d={self.d}, {{{terms}{more}}})"

    def norm(self) -> float:
        return math.sqrt(sum(abs(v) ** 2 for v in self.amplitudes.values()))

    def inner(self, other: PureState) -> complex:
        """Return <self|other>."""
        if (self.n, self.d) != (other.n, other.d):
            raise DomainError(f"cannot pair states of shape {(self.n, self.d)} and {(other.n, other.d)}")
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        total = 0j
        for a, v in small.amplitudes.items():
            w = big.amplitudes.get(a)
            if w is not None:
                total += v.conjugate() * w if small is self else w.conjugate() * v
        return total

    def scaled(self, factor: complex) -> PureState:
        return PureState(self.n, self.d, {a: factor * v for a, v in self.amplitudes.items()})

    def distance(self, other: PureState) -> float:
        """Euclidean distance between amplitude vectors (phase-sensitive)."""
        keys = set(self.amplitudes) | set(other.amplitudes)
        return math.sqrt(sum(abs(self[a] - other[a]) ** 2 for a in keys))

    def allclose(self, other: PureState, atol: float = 1e-12) -> bool:
        return (self.n, self.d) == (other.n, other.d) and self.distance(other) < atol

    def in_sector(self) -> bool:
        """True if every term puts exactly one particle in each of n = d modes."""
        return self.n == self.d and all(len(set(a)) == self.n for a in self.amplitudes)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "terms": [{"assignment": list(a), "re": v.real, "im": v.imag}
                      for a, v in self.amplitudes.items()],
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> PureState:
        n, d = int(doc["n"]), int(doc["d"])
        amps: dict[ModeAssignment, complex] = {}
        for term in doc["terms"]:
            a = check_assignment(term["assignment"], n, d)
            amps[a] = amps.get(a, 0j) + complex(float(term["re"]), float(term["im"]))
        return cls(n, d, amps)


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Convex mixture ``sum_m w_m |psi_m><psi_m|`` of pure states."""

    members: tuple[tuple[float, PureState], ...]

    def __post_init__(self):
        members = tuple((float(w), s) for w, s in self.members)
        if not members:
            raise DomainError("an ensemble needs at least one member")
        shape = (members[0][1].n, members[0][1].d)
        for w, s in members:
            if not isinstance(s, PureState):
                raise DomainError(f"ensemble member {s!r} is not a PureState")
            if (s.n, s.d) != shape:
                raise DomainError("all ensemble members must share (n, d)")
            if not 0.0 < w <= 1.0:
                raise DomainError(f"ensemble weight {w} is outside (0, 1]")
        total = sum(w for w, _ in members)
        if abs(total - 1.0) > NORM_TOL:
            raise DomainError(f"ensemble weights sum to {total}, not 1")
        object.__setattr__(self, "members", members)

    @property
    def n(self) -> int:
        return self.members[0][1].n

    @property
    def d(self) -> int:
        return self.members[0][1].d

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __repr__(self) -> str:
        return f"Ensemble(n={self.n}, d={self.d}, weights={[round(w, 6) for w, _ in self.members]})"

    def in_sector(self) -> bool:
        return all(s.in_sector() for _, s in self.members)

    def to_dict(self) -> dict:
        return {"members": [{"weight": w, "state": s.to_dict()} for w, s in self.members]}

    @classmethod
    def from_dict(cls, doc: Mapping) -> Ensemble:
        return cls(tuple((float(m["weight"]), PureState.from_dict(m["state"])) for m in doc["members"]))


State = Union[PureState, Ensemble]


def members(state: State) -> tuple[tuple[float, PureState], ...]:
    """View any state as a weighted member list (a pure state has one member)."""
    if isinstance(state, PureState):
        return ((1.0, state),)
    if isinstance(state, Ensemble):
        return state.members
    raise TypeError(f"expected PureState or Ensemble, got {type(state).__name__}")


def to_json(state: State, **kwargs) -> str:
    return json.dumps(state.to_dict(), **kwargs)


def from_json(text: str) -> State:
    """Parse either JSON layout; ``members`` marks an ensemble."""
    doc = json.loads(text)
    if "members" in doc:
        return Ensemble.from_dict(doc)
    return PureState.from_dict(doc)


def make_pure(n: int, d: int, terms: Iterable[tuple[Sequence[int], complex]]) -> PureState:
    """Sum duplicate terms, normalize, and return the resulting pure state.

    >>> make_pure(2, 2, [((1, 2), 1), ((2, 1), 1)])[(1, 2)]
    (0.7071067811865475+0j)
    """
    _check_sizes(n, d)
    amps: dict[ModeAssignment, complex] = {}
    scale = 0.0
    for assignment, amp in terms:
        a = check_assignment(assignment, n, d)
        amps[a] = amps.get(a, 0j) + complex(amp)
        scale = max(scale, abs(complex(amp)))
    if not amps:
        raise DomainError("make_pure needs at least one term")
    norm = math.sqrt(sum(abs(v) ** 2 for v in amps.values()))
    if norm == 0.0 or norm <= PRUNE * scale:
        raise NormalizationError("all amplitudes cancel; the superposition has zero norm")
    return PureState(n, d, {a: v / norm for a, v in amps.items()})


def basis_state(assignment: Sequence[int], d: int | None = None) -> PureState:
    a = tuple(int(k) for k in assignment)
    if d is None:
        d = max(len(a), max(a)) if a else 1
    return make_pure(len(a), d, [(a, 1.0)])


def root_of_unity(n: int, power: int) -> complex:
    """exp(2 pi i power / n), reduced mod n first so large powers stay exact."""
    p = power % n
    if p == 0:
        return 1 + 0j
    if 2 * p == n:
        return -1 + 0j
    if 4 * p == n:
        return 1j
    if 4 * p == 3 * n:
        return -1j
    return complex(np.exp(2j * np.pi * p / n))


def _rotate(a: ModeAssignment) -> ModeAssignment:
    # |k_1 k_2 ... k_n> -> |k_n k_1 ... k_{n-1}>
    return a[-1:] + a[:-1]


def _check_cyclic_args(n: int, k: int) -> None:
    if int(n) != n or n < 2:
        raise DomainError(f"cyclic eigenstates need n >= 2, got {n!r}")
    if int(k) != k or not 0 <= k < n:
        raise DomainError(f"k must be a residue in 0..{n - 1}, got {k!r}")


def cyclic_eigenstate(n: int, k: int) -> PureState:
    """Return ``|lambda^k> = n^{-1/2} sum_m lambda^{mk} C^m |1 2 ... n>``.

    ``C`` sends |k_1 ... k_n> to |k_n k_1 ... k_{n-1}> and ``lambda = exp(2 pi i/n)``.
    ``k`` is a residue in ``0..n-1``; ``k = 0`` is the fully cyclic-symmetric state.
    Under :func:`multihom.permutations.cycle` the state picks up ``lambda^(-k)``.
    """
    _check_cyclic_args(n, k)
    terms = []
    a = tuple(range(1, n + 1))
    for m in range(n):
        terms.append((a, root_of_unity(n, m * k)))
        a = _rotate(a)
    return make_pure(n, n, terms)


def barred_eigenstate(n: int, k: int) -> PureState:
    """Partner of :func:`cyclic_eigenstate`: the same state with particles 1 and 2 swapped.

    For ``n = 3`` this gives |abar>, |bbar>, |gbar> term for term, e.g.
    ``barred_eigenstate(3, 1)`` is ``(|213> + w|132> + w^2|321>)/sqrt(3)``.
    """
    _check_cyclic_args(n, k)
    base = cyclic_eigenstate(n, k)
    return PureState(n, n, {(a[1], a[0]) + a[2:]: v for a, v in base.amplitudes.items()})


def rho_representative(n: int, k: int) -> Ensemble:
    """Equal mixture of ``cyclic_eigenstate(n, k)`` and ``barred_eigenstate(n, k)``."""
    return Ensemble(((0.5, cyclic_eigenstate(n, k)), (0.5, barred_eigenstate(n, k))))


def permutation_sign(p: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct comparable items."""
    rank = {v: i for i, v in enumerate(sorted(p))}
    perm = [rank[v] for v in p]
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        length = 0
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length and length % 2 == 0:
            sign = -sign
    return sign


def sector_basis(n: int) -> list[ModeAssignment]:
    """All n! one-particle-per-mode assignments, in lexicographic order."""
    return list(itertools.permutations(range(1, n + 1)))


def symmetric_state(n: int) -> PureState:
    if int(n) != n or n < 2:
        raise DomainError(f"symmetric_state needs n >= 2, got {n!r}")
    return make_pure(n, n, [(a, 1.0) for a in sector_basis(n)])


def antisymmetric_state(n: int) -> PureState:
    if int(n) != n or n < 2:
        raise DomainError(f"antisymmetric_state needs n >= 2, got {n!r}")
    return make_pure(n, n, [(a, permutation_sign(a)) for a in sector_basis(n)])


def mix(pairs: Iterable[tuple[float, State]], tol: float = 1e-9) -> Ensemble:
    """Mix states (pure or ensembles) with the given weights.

    Nested ensembles are flattened.  Weights must sum to 1 within ``tol``;
    the flattened weights are then rescaled to sum to 1 exactly.
    """
    flat: list[tuple[float, PureState]] = []
    for w, s in pairs:
        if w <= 0:
            raise DomainError(f"mixture weight {w} must be positive")
        for v, member in members(s):
            flat.append((w * v, member))
    if not flat:
        raise DomainError("mix needs at least one component")
    total = math.fsum(w for w, _ in flat)
    if abs(total - 1.0) > tol:
        raise DomainError(f"mixture weights sum to {total}, not 1")
    return Ensemble(tuple((w / total, s) for w, s in flat))


def sector_vector(state: PureState) -> np.ndarray:
    """Amplitudes of a one-particle-per-mode state on :func:`sector_basis` order."""
    if not state.in_sector():
        raise DomainError("state is not confined to the one-particle-per-mode sector")
    index = {a: i for i, a in enumerate(sector_basis(state.n))}
    vec = np.zeros(len(index), dtype=complex)
    for a, v in state.amplitudes.items():
        vec[index[a]] = v
    return vec


def sector_density(state: State) -> np.ndarray:
    """Dense n! x n! density matrix of a state in the one-particle-per-mode sector."""
    rho = None
    for w, s in members(state):
        v = sector_vector(s)
        term = w * np.outer(v, v.conj())
        rho = term if rho is None else rho + term
    return rho


def random_state(n: int, d: int, rng: np.random.Generator, terms: int | None = None) -> PureState:
    """Gaussian random superposition over ``terms`` distinct assignments (all d^n if None)."""
    space = list(itertools.product(range(1, d + 1), repeat=n))
    if terms is not None and terms < len(space):
        idx = rng.choice(len(space), size=terms, replace=False)
        space = [space[i] for i in sorted(idx)]
    amps = rng.normal(size=len(space)) + 1j * rng.normal(size=len(space))
    return make_pure(n, d, zip(space, amps))


def random_sector_state(n: int, rng: np.random.Generator) -> PureState:
    """Gaussian random superposition of all n! one-particle-per-mode assignments."""
    basis = sector_basis(n)
    amps = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    return make_pure(n, n, zip(basis, amps))


def random_sector_ensemble(n: int, rng: np.random.Generator, size: int = 3) -> Ensemble:
    weights = rng.dirichlet(np.ones(size))
    return mix([(float(w), random_sector_state(n, rng)) for w in weights])
