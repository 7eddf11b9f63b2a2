"""Tiny textual language for naming states on the command line.

Accepted forms::

    alpha  beta  gamma  alpha-bar  beta-bar  gamma-bar     (three particles)
    lambda:n=5,k=2      lambda-bar:n=5,k=2
    rho:n=3,k=1
    sym:n=4             antisym:n=3
    basis:123           (one digit per particle; d = max(n, largest mode))
    mix:0.5*rho:n=3,k=1+0.5*rho:n=3,k=2
    path/to/state.json

Nested ``mix`` is not allowed.
"""

from __future__ import annotations

import os
import re

from .errors import DomainError
from .states import (
    State,
    antisymmetric_state,
    barred_eigenstate,
    basis_state,
    cyclic_eigenstate,
    from_json,
    mix,
    rho_representative,
    symmetric_state,
)


class StateSpecError(DomainError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def diagnostic(self) -> str:
        return f"{self.args[0]}\n  {self.text}\n  {' ' * self.position}^"


_GREEK = {"alpha": 0, "beta": 1, "gamma": 2}
_NUMBER = r"[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?"
_TERM = re.compile(rf"\s*({_NUMBER})\s*\*\s*")
_SPLIT = re.compile(rf"\+(?=\s*{_NUMBER}\s*\*)")
_ARG = re.compile(r"([a-z]+)=(-?[0-9]+)$")


def _parse_args(body: str, text: str, offset: int, required: tuple[str, ...]) -> dict[str, int]:
    args: dict[str, int] = {}
    pos = offset
    for part in body.split(","):
        m = _ARG.match(part.strip())
        if not m:
            raise StateSpecError(f"expected key=integer, got {part!r}", text, pos)
        key, value = m.group(1), int(m.group(2))
        if key not in required:
            raise StateSpecError(f"unexpected argument {key!r}", text, pos)
        if key in args:
            raise StateSpecError(f"duplicate argument {key!r}", text, pos)
        args[key] = value
        pos += len(part) + 1
    missing = [k for k in required if k not in args]
    if missing:
        raise StateSpecError(f"missing argument(s) {', '.join(missing)}", text, offset)
    return args


def _parse_atom(atom: str, text: str, offset: int) -> State:
    stripped = atom.strip()
    offset += len(atom) - len(atom.lstrip())
    name, sep, body = stripped.partition(":")
    body_at = offset + len(name) + len(sep)
    try:
        if name in _GREEK or (name.endswith("-bar") and name[:-4] in _GREEK):
            if sep:
                raise StateSpecError(f"{name!r} takes no arguments", text, body_at)
            if name.endswith("-bar"):
                return barred_eigenstate(3, _GREEK[name[:-4]])
            return cyclic_eigenstate(3, _GREEK[name])
        if name in ("lambda", "lambda-bar", "rho"):
            args = _parse_args(body, text, body_at, ("n", "k"))
            build = {"lambda": cyclic_eigenstate, "lambda-bar": barred_eigenstate,
                     "rho": rho_representative}[name]
            return build(args["n"], args["k"])
        if name in ("sym", "antisym"):
            args = _parse_args(body, text, body_at, ("n",))
            return (symmetric_state if name == "sym" else antisymmetric_state)(args["n"])
        if name == "basis":
            if not re.fullmatch(r"[1-9]+", body):
                raise StateSpecError("basis expects one digit 1-9 per particle, e.g. basis:123",
                                     text, body_at)
            return basis_state([int(ch) for ch in body])
    except StateSpecError:
        raise
    except DomainError as exc:
        raise StateSpecError(str(exc), text, offset) from None
    raise StateSpecError(f"unknown state name {name!r}", text, offset)


def parse_state(text: str) -> State:
    """Turn a spec string into a PureState or Ensemble."""
    if text.endswith(".json") or (os.path.sep in text and os.path.exists(text)):
        try:
            with open(text) as fh:
                return from_json(fh.read())
        except OSError as exc:
            raise StateSpecError(f"cannot read state file: {exc.strerror}", text, 0) from None
        except (ValueError, KeyError, TypeError) as exc:
            raise StateSpecError(f"malformed state file: {exc}", text, 0) from None
    if not text.strip():
        raise StateSpecError("empty state spec", text, 0)
    if not text.startswith("mix:"):
        return _parse_atom(text, text, 0)

    pos = len("mix:")
    pieces = _SPLIT.split(text[pos:])
    pairs = []
    for piece in pieces:
        m = _TERM.match(piece)
        if not m:
            raise StateSpecError("expected weight*spec", text, pos)
        atom = piece[m.end():]
        if atom.strip().startswith("mix:"):
            raise StateSpecError("nested mix is not supported", text, pos + m.end())
        weight = float(m.group(1))
        if weight <= 0:
            raise StateSpecError("mixture weights must be positive", text, pos)
        pairs.append((weight, _parse_atom(atom, text, pos + m.end())))
        pos += len(piece) + 1
    try:
        return mix(pairs)
    except DomainError as exc:
        raise StateSpecError(str(exc), text, len("mix:")) from None
