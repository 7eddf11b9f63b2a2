"""Passive multiports acting identically on every particle, and output count statistics.

Two evolution routes produce the same count distribution:

* :func:`evolve` is the brute-force reference.  It materializes every output
  amplitude ``sum_in alpha_in prod_i U[j_i, k_i]`` as a dense d^n tensor.
* :func:`evolve_grouped` works one count configuration at a time.  It walks the
  distinct orderings of that configuration slot by slot, contracting the input
  state from the front, so intermediate rows are shared between orderings that
  agree on a prefix.

Count configurations ``(a_0, ..., a_{d-1})`` are indexed from 0: ``a_i`` is the
number of particles leaving output port ``i + 1``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import warnings
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import reduce
from types import MappingProxyType

import numpy as np
import scipy.sparse as sp

from .errors import ConsistencyError, DomainError, ResourceLimitError
from .permutations import expectation, transposition
from .states import PRUNE, Ensemble, PureState, State, members, root_of_unity

CountConfiguration = tuple[int, ...]

UNITARY_TOL = 1e-12
PROB_TOL = 1e-12
SUM_TOL = 1e-9

# brute-force budget: dense output tensor size and (terms x outputs) products
MAX_ORACLE_OUTPUTS = 1_000_000
MAX_ORACLE_WORK = 200_000_000


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise DomainError(f"a unitary must be a non-empty square matrix, got shape {m.shape}")
        err = np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0])))
        if err > UNITARY_TOL:
            raise DomainError(f"matrix is not unitary: max |U^dag U - I| = {err:.3g}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def dagger(self) -> UnitaryMatrix:
        return UnitaryMatrix(self.entries.conj().T)

    def __matmul__(self, other: UnitaryMatrix) -> UnitaryMatrix:
        return UnitaryMatrix(self.entries @ other.entries)

    def to_dict(self) -> dict:
        return {"dim": self.dim,
                "entries": [[[z.real, z.imag] for z in row] for row in self.entries.tolist()]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, doc) -> UnitaryMatrix:
        rows = doc["entries"] if isinstance(doc, Mapping) else doc
        mat = np.array([[complex(re, im) for re, im in row] for row in rows])
        if isinstance(doc, Mapping) and "dim" in doc and mat.shape[0] != int(doc["dim"]):
            raise DomainError(f"declared dim {doc['dim']} does not match {mat.shape[0]} rows")
        return cls(mat)

    @classmethod
    def from_json(cls, text: str) -> UnitaryMatrix:
        return cls.from_dict(json.loads(text))


def qft_unitary(d: int) -> UnitaryMatrix:
    """Fourier multiport: ``U|j> = d^{-1/2} sum_k exp(2 pi i (j-1)(k-1)/d) |k>``.

    ``qft_unitary(2)`` is the balanced beam splitter and ``qft_unitary(3)`` the tritter.
    """
    if int(d) != d or d < 2:
        raise DomainError(f"qft_unitary needs d >= 2, got {d!r}")
    m = np.array([[root_of_unity(d, j * k) for j in range(d)] for k in range(d)]) / math.sqrt(d)
    return UnitaryMatrix(m)


def identity_unitary(d: int) -> UnitaryMatrix:
    return UnitaryMatrix(np.eye(d, dtype=complex))


def configurations(n: int, d: int) -> list[CountConfiguration]:
    """All ways to spread n particles over d ports, in lexicographic order."""
    out = []
    for bars in itertools.combinations(range(n + d - 1), d - 1):
        edges = (-1,) + bars + (n + d - 1,)
        out.append(tuple(edges[i + 1] - edges[i] - 1 for i in range(d)))
    return sorted(out)


def counts_of(assignment: Sequence[int], d: int) -> CountConfiguration:
    """Count configuration of a 1-based mode assignment."""
    counts = [0] * d
    for k in assignment:
        counts[k - 1] += 1
    return tuple(counts)


def orderings(config: Sequence[int]) -> int:
    """Number of distinct assignments sharing this count configuration."""
    out = math.factorial(sum(config))
    for a in config:
        out //= math.factorial(a)
    return out


def _fmt(x: float, digits: int | None) -> float:
    if digits is None:
        return float(x)
    y = float(f"{x:.{digits}g}")
    return 0.0 if y == 0 else y


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """Probability of every count configuration of n particles over d ports.

    Every configuration is present (zeros included) and iteration follows the
    lexicographic order of :func:`configurations`.
    """

    n: int
    d: int
    probs: Mapping[CountConfiguration, float]

    def __post_init__(self):
        full = {c: 0.0 for c in configurations(self.n, self.d)}
        for c, p in self.probs.items():
            c = tuple(int(a) for a in c)
            if c not in full:
                raise DomainError(f"{c} is not a configuration of {self.n} particles on {self.d} ports")
            full[c] = _clamp(float(p))
        total = math.fsum(full.values())
        if abs(total - 1.0) > SUM_TOL:
            raise ConsistencyError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", MappingProxyType(full))

    def __getitem__(self, config: Sequence[int]) -> float:
        return self.probs[tuple(config)]

    def __iter__(self):
        return iter(self.probs.items())

    def __len__(self) -> int:
        return len(self.probs)

    def items(self):
        return self.probs.items()

    def max_abs_diff(self, other: OutcomeDistribution) -> float:
        if (self.n, self.d) != (other.n, other.d):
            raise DomainError("distributions are over different configuration sets")
        return max(abs(p - other[c]) for c, p in self.probs.items())

    def support(self, tol: float = 0.0) -> list[CountConfiguration]:
        return [c for c, p in self.probs.items() if p > tol]

    def to_list(self, digits: int | None = None) -> list[dict]:
        return [{"counts": list(c), "p": _fmt(p, digits)} for c, p in self.probs.items()]

    def to_json(self, digits: int | None = None, **kwargs) -> str:
        return json.dumps(self.to_list(digits), **kwargs)

    def to_csv(self, digits: int | None = 15) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"a{i}" for i in range(self.d)] + ["p"])
        for c, p in self.probs.items():
            writer.writerow(list(c) + [repr(_fmt(p, digits))])
        return buf.getvalue()

    @classmethod
    def from_list(cls, rows: Iterable[Mapping]) -> OutcomeDistribution:
        rows = list(rows)
        if not rows:
            raise DomainError("empty distribution")
        d = len(rows[0]["counts"])
        n = sum(rows[0]["counts"])
        return cls(n, d, {tuple(r["counts"]): float(r["p"]) for r in rows})


def _clamp(p: float) -> float:
    if p < -PROB_TOL or p > 1.0 + PROB_TOL:
        raise ConsistencyError(f"probability {p!r} lies outside [0, 1] beyond rounding")
    return min(max(p, 0.0), 1.0)


def _check_dims(state: State, U: UnitaryMatrix) -> None:
    if U.dim != state.d:
        raise DomainError(f"unitary acts on {U.dim} modes but the state has d={state.d}")


def _evolve_pure(state: PureState, U: UnitaryMatrix, max_outputs: int, max_work: int) -> PureState:
    n, d = state.n, state.d
    outputs = d ** n
    if outputs > max_outputs or outputs * len(state) > max_work:
        raise ResourceLimitError(
            f"brute-force evolution of {len(state)} terms over {outputs} outputs exceeds the budget")
    cols = U.entries.T  # cols[k] is U[:, k]
    out = np.zeros((d,) * n, dtype=complex)
    for a, alpha in state.amplitudes.items():
        out += alpha * reduce(np.multiply.outer, [cols[k - 1] for k in a])
    norm = math.sqrt(float(np.sum(np.abs(out) ** 2)))
    if abs(norm - 1.0) > SUM_TOL:
        raise ConsistencyError(f"evolved state has norm {norm!r}")
    idx = np.argwhere(np.abs(out) >= PRUNE)
    amps = {tuple(int(i) + 1 for i in j): complex(out[tuple(j)]) for j in idx}
    return PureState(n, d, amps)


def evolve(state: State, U: UnitaryMatrix, *, max_outputs: int = MAX_ORACLE_OUTPUTS,
           max_work: int = MAX_ORACLE_WORK) -> State:
    """Apply ``U`` to every particle, returning the full output state.

    Raises :class:`~multihom.errors.ResourceLimitError` when the dense output
    tensor would exceed ``max_outputs`` entries or ``max_work`` products.
    """
    _check_dims(state, U)
    if isinstance(state, PureState):
        return _evolve_pure(state, U, max_outputs, max_work)
    return Ensemble(tuple((w, _evolve_pure(s, U, max_outputs, max_work)) for w, s in state.members))


def count_distribution(state: State) -> OutcomeDistribution:
    """Marginalize ``|amplitude|^2`` onto particle counts per port."""
    raw: dict[CountConfiguration, float] = {}
    for w, s in members(state):
        for a, v in s.amplitudes.items():
            c = counts_of(a, s.d)
            raw[c] = raw.get(c, 0.0) + w * (v.real * v.real + v.imag * v.imag)
    return OutcomeDistribution(state.n, state.d, raw)


class _SuffixTables:
    """Front-to-back contraction plan for one pure state.

    Layer ``m`` lists the distinct suffixes ``(k_{m+1}, ..., k_n)`` of the input
    assignments.  ``heads[m]`` holds each suffix's first mode (0-based) and
    ``merge[m]`` is the 0/1 matrix sending a layer-``m`` suffix to its tail in
    layer ``m + 1``.
    """

    def __init__(self, state: PureState):
        keys = [tuple(k - 1 for k in a) for a in state.amplitudes]
        self.start = np.array(list(state.amplitudes.values()), dtype=complex)
        self.heads: list[np.ndarray] = []
        self.merge: list[sp.csr_matrix] = []
        layer = keys
        for _ in range(state.n):
            tails = [s[1:] for s in layer]
            tail_ids: dict[tuple, int] = {}
            cols = [tail_ids.setdefault(t, len(tail_ids)) for t in tails]
            self.heads.append(np.array([s[0] for s in layer], dtype=np.intp))
            self.merge.append(sp.csr_matrix(
                (np.ones(len(layer)), (np.arange(len(layer)), cols)), shape=(len(layer), len(tail_ids))))
            layer = list(tail_ids)

    def probability(self, config: CountConfiguration, U: np.ndarray) -> float:
        remaining = np.array([config], dtype=np.intp)
        rows = self.start[None, :]
        for heads, merge in zip(self.heads, self.merge):
            next_rows, next_remaining = [], []
            for port in range(U.shape[0]):
                mask = remaining[:, port] > 0
                if not mask.any():
                    continue
                weighted = rows[mask] * U[port, heads][None, :]
                next_rows.append(np.asarray((merge.T @ weighted.T).T))
                r = remaining[mask].copy()
                r[:, port] -= 1
                next_remaining.append(r)
            rows = np.vstack(next_rows)
            remaining = np.vstack(next_remaining)
        return float(np.sum(rows.real ** 2 + rows.imag ** 2))


def evolve_grouped(state: State, U: UnitaryMatrix, *, workers: int | None = None) -> OutcomeDistribution:
    """Count distribution after ``U`` without building the full output state.

    Each configuration is computed independently from read-only data, so with
    ``workers > 1`` the sweep is spread over a thread pool.
    """
    _check_dims(state, U)
    configs = configurations(state.n, state.d)
    mat = U.entries
    raw = dict.fromkeys(configs, 0.0)
    for w, s in members(state):
        tables = _SuffixTables(s)
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                values = list(pool.map(lambda c: tables.probability(c, mat), configs))
        else:
            values = [tables.probability(c, mat) for c in configs]
        for c, p in zip(configs, values):
            raw[c] += w * p
    return OutcomeDistribution(state.n, state.d, raw)


def resolve_method(n: int, method: str) -> str:
    if method == "auto":
        return "grouped" if n >= 5 else "oracle"
    return method


def output_distribution(state: State, U: UnitaryMatrix, method: str = "auto") -> OutcomeDistribution:
    """Count distribution by ``"oracle"``, ``"grouped"``, or ``"auto"`` (grouped from n = 5)."""
    method = resolve_method(state.n, method)
    if method == "oracle":
        return count_distribution(evolve(state, U))
    if method == "grouped":
        return evolve_grouped(state, U)
    raise DomainError(f"unknown evolution method {method!r}")


def hom_probabilities(state: State) -> tuple[float, float]:
    """Bunching and antibunching probabilities ``(p_B, p_A)`` on a balanced beam splitter."""
    if state.n != 2 or state.d != 2:
        raise DomainError(f"HOM needs two particles in two modes, got n={state.n}, d={state.d}")
    if not all(s.in_sector() for _, s in members(state)):
        raise DomainError("HOM input must put one particle in each input port")
    swap = expectation(transposition(2, 1, 2), state)
    if abs(swap.imag) > 1e-12:
        warnings.warn(f"<P_12> = {swap} is not real; |p_B - p_A|^2 will not equal |<P_12>|^2",
                      stacklevel=2)
    dist = count_distribution(evolve(state, qft_unitary(2)))
    return dist[(2, 0)] + dist[(0, 2)], dist[(1, 1)]
