"""State-dependent MAC models, the example channels, and channel spec files.

Composite letters are flattened to single indices: the Example-1 state
``(w0, w1)`` is ``w = 2*w0 + w1`` and the output ``(y1, y2)`` is
``y = 2*y1 + y2``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NegativeProbability, NormalizationError, ParseError, SchemaError
from .prob import SUM_TOL, Alphabet, ConditionalPmf, JointPmf, inverse_binary_entropy

__all__ = [
    "SingleStateChannel",
    "DoubleStateChannel",
    "build_example_single",
    "build_example_double",
    "build_useless_channel",
    "build_x1_disconnected_channel",
    "example_state_pmf",
    "example_law",
    "load_channel",
    "save_channel",
    "channel_to_dict",
    "channel_from_dict",
    "FILE_TOL",
]

FILE_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class SingleStateChannel:
    """MAC P(y | w, x1, x2) driven by one IID state W known to both encoders."""

    state_pmf: JointPmf
    law: ConditionalPmf

    def __post_init__(self):
        (w,) = self.state_pmf.variables
        if tuple(a.name for a in self.law.givens) != ("W", "X1", "X2") or self.law.targets[0].name != "Y":
            raise SchemaError("law must be P(Y | W, X1, X2)")
        if w.name != "W" or self.law.givens[0].size != w.size:
            raise SchemaError("state PMF must be over W and match the law's state axis")

    @classmethod
    def from_arrays(cls, state_pmf, law) -> "SingleStateChannel":
        law = np.asarray(law, dtype=float)
        nw, n1, n2, ny = law.shape
        W, X1, X2, Y = (Alphabet("W", nw), Alphabet("X1", n1), Alphabet("X2", n2), Alphabet("Y", ny))
        return cls(JointPmf([W], state_pmf), ConditionalPmf([Y], [W, X1, X2], law))

    @property
    def W(self) -> Alphabet:
        return self.law.givens[0]

    @property
    def X1(self) -> Alphabet:
        return self.law.givens[1]

    @property
    def X2(self) -> Alphabet:
        return self.law.givens[2]

    @property
    def Y(self) -> Alphabet:
        return self.law.targets[0]

    @property
    def p_w(self) -> np.ndarray:
        return self.state_pmf.probs

    @property
    def kind(self) -> str:
        return "single"


@dataclass(frozen=True, eq=False)
class DoubleStateChannel:
    """MAC P(y | s1, s2, x1, x2) with independent states; encoder k sees S_k."""

    state_pmf1: JointPmf
    state_pmf2: JointPmf
    law: ConditionalPmf

    def __post_init__(self):
        if tuple(a.name for a in self.law.givens) != ("S1", "S2", "X1", "X2") or self.law.targets[0].name != "Y":
            raise SchemaError("law must be P(Y | S1, S2, X1, X2)")
        (s1,), (s2,) = self.state_pmf1.variables, self.state_pmf2.variables
        if (s1.name, s2.name) != ("S1", "S2"):
            raise SchemaError("state PMFs must be over S1 and S2")
        if (s1.size, s2.size) != (self.law.givens[0].size, self.law.givens[1].size):
            raise SchemaError("state PMFs do not match the law's state axes")

    @classmethod
    def from_arrays(cls, state_pmf1, state_pmf2, law) -> "DoubleStateChannel":
        law = np.asarray(law, dtype=float)
        n_s1, n_s2, n1, n2, ny = law.shape
        S1, S2 = Alphabet("S1", n_s1), Alphabet("S2", n_s2)
        X1, X2, Y = Alphabet("X1", n1), Alphabet("X2", n2), Alphabet("Y", ny)
        return cls(JointPmf([S1], state_pmf1), JointPmf([S2], state_pmf2), ConditionalPmf([Y], [S1, S2, X1, X2], law))

    @property
    def S1(self) -> Alphabet:
        return self.law.givens[0]

    @property
    def S2(self) -> Alphabet:
        return self.law.givens[1]

    @property
    def X1(self) -> Alphabet:
        return self.law.givens[2]

    @property
    def X2(self) -> Alphabet:
        return self.law.givens[3]

    @property
    def Y(self) -> Alphabet:
        return self.law.targets[0]

    @property
    def kind(self) -> str:
        return "double"


def example_state_pmf(p: float | None = None) -> np.ndarray:
    """P(W) for W = (W0, W1) with W0, W1 IID Bernoulli(p), index 2*w0 + w1."""
    if p is None:
        p = inverse_binary_entropy(0.5)
    bit = np.array([1.0 - p, p])
    return np.outer(bit, bit).ravel()


def example_law() -> np.ndarray:
    """Deterministic law Y1 = X1 xor W_{X2}, Y2 = X2 as a (4, 2, 2, 4) tensor."""
    law = np.zeros((4, 2, 2, 4))
    for w in range(4):
        w_bits = (w >> 1, w & 1)
        for x1 in range(2):
            for x2 in range(2):
                y1 = x1 ^ w_bits[x2]
                law[w, x1, x2, 2 * y1 + x2] = 1.0
    return law


def build_example_single(p: float | None = None) -> SingleStateChannel:
    return SingleStateChannel.from_arrays(example_state_pmf(p), example_law())


def build_example_double(p: float | None = None) -> DoubleStateChannel:
    """Example-1 channel with a null S1 and S2 = (W0, W1)."""
    law = example_law()[np.newaxis]
    return DoubleStateChannel.from_arrays([1.0], example_state_pmf(p), law)


def build_useless_channel() -> SingleStateChannel:
    """Binary channel whose output is a fair coin independent of everything."""
    return SingleStateChannel.from_arrays([0.5, 0.5], np.full((2, 2, 2, 2), 0.5))


def build_x1_disconnected_channel() -> SingleStateChannel:
    """Binary channel with Y = X2; user 1 and the state never reach the output."""
    law = np.zeros((2, 2, 2, 2))
    for x2 in range(2):
        law[:, :, x2, x2] = 1.0
    return SingleStateChannel.from_arrays([0.5, 0.5], law)


# -- spec files ------------------------------------------------------------

_SINGLE_AXES = ("W", "X1", "X2", "Y")
_DOUBLE_AXES = ("S1", "S2", "X1", "X2", "Y")


def channel_to_dict(ch) -> dict:
    d = {"kind": ch.kind, "alphabets": {a.name: a.size for a in ch.law.givens + ch.law.targets}}
    if ch.kind == "single":
        d["state_pmf"] = ch.state_pmf.probs.ravel().tolist()
    else:
        d["state_pmf"] = ch.state_pmf1.probs.ravel().tolist()
        d["state_pmf2"] = ch.state_pmf2.probs.ravel().tolist()
    d["law"] = ch.law.probs.ravel().tolist()
    return d


def save_channel(ch, path) -> None:
    Path(path).write_text(json.dumps(channel_to_dict(ch), indent=1) + "\n", encoding="utf-8")


def _vector(d, key, n):
    raw = d.get(key)
    if not isinstance(raw, list):
        raise SchemaError(f"{key!r} must be a list of numbers")
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError):
        raise SchemaError(f"{key!r} must contain only numbers") from None
    if arr.ndim != 1 or arr.size != n:
        raise SchemaError(f"{key!r} must have {n} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{key!r} contains non-finite values")
    if np.any(arr < 0):
        raise NegativeProbability(f"{key!r} contains negative probabilities")
    return arr


def _renormalize(arr, key):
    sums = arr.sum(axis=-1, keepdims=True)
    dev = np.abs(sums - 1.0)
    worst = int(np.argmax(dev))
    if dev.flat[worst] > FILE_TOL:
        raise NormalizationError(f"{key!r} has a slice summing to {sums.flat[worst]:.9g}")
    # leave already-normalized slices bit-identical
    return np.where(dev > SUM_TOL, arr / sums, arr)


def channel_from_dict(d) -> SingleStateChannel | DoubleStateChannel:
    if not isinstance(d, dict):
        raise SchemaError("channel spec must be a JSON object")
    kind = d.get("kind")
    if kind not in ("single", "double"):
        raise SchemaError("'kind' must be 'single' or 'double'")
    axes = _SINGLE_AXES if kind == "single" else _DOUBLE_AXES
    alph = d.get("alphabets")
    if not isinstance(alph, dict) or set(alph) != set(axes):
        raise SchemaError(f"'alphabets' must map exactly {list(axes)} to sizes")
    sizes = []
    for name in axes:
        n = alph[name]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise SchemaError(f"alphabet size for {name!r} must be a positive integer")
        sizes.append(n)
    law = _vector(d, "law", int(np.prod(sizes))).reshape(sizes)
    law = _renormalize(law, "law")
    if kind == "single":
        pw = _renormalize(_vector(d, "state_pmf", sizes[0]), "state_pmf")
        return SingleStateChannel.from_arrays(pw, law)
    p1 = _renormalize(_vector(d, "state_pmf", sizes[0]), "state_pmf")
    p2 = _renormalize(_vector(d, "state_pmf2", sizes[1]), "state_pmf2")
    return DoubleStateChannel.from_arrays(p1, p2, law)


def load_channel(path) -> SingleStateChannel | DoubleStateChannel:
    """Read and validate a channel spec file (see README for the schema)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
        d = json.loads(text)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read channel spec {str(path)!r}: {exc}") from exc
    return channel_from_dict(d)
