"""Exact finite probability: joint PMF tensors, factor products, entropies.

All information quantities are in bits, with the convention 0 log 0 = 0.
Distributions are dense numpy tensors with one axis per named variable.
"""
from __future__ import annotations

import string
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .errors import (
    AlphabetMismatch,
    ConflictingFactor,
    ConsistencyError,
    CyclicFactors,
    InvalidDistribution,
    OutOfRange,
    OverlappingSets,
    UndeterminedVariable,
    UnknownVariable,
)

__all__ = [
    "Alphabet",
    "JointPmf",
    "ConditionalPmf",
    "compose",
    "marginalize",
    "entropy",
    "mutual_information",
    "binary_entropy",
    "inverse_binary_entropy",
    "SUM_TOL",
    "MI_CLAMP_TOL",
]

SUM_TOL = 1e-9
MI_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class Alphabet:
    """A named finite alphabet whose letters are 0..size-1."""

    name: str
    size: int

    def __post_init__(self):
        if not isinstance(self.size, (int, np.integer)) or self.size < 1:
            raise InvalidDistribution(f"alphabet {self.name!r} needs size >= 1, got {self.size!r}")


def _names(x) -> tuple[str, ...]:
    if x is None:
        return ()
    if isinstance(x, str):
        return (x,)
    return tuple(x)


def _check_unique(variables):
    seen = set()
    for a in variables:
        if a.name in seen:
            raise AlphabetMismatch(f"variable {a.name!r} appears twice")
        seen.add(a.name)


def _plogp_sum(p: np.ndarray) -> float:
    p = p.ravel()
    p = p[p > 0]
    return float(-np.dot(p, np.log2(p)))


class JointPmf:
    """Joint distribution of named finite variables.

    ``probs[i0, i1, ...]`` is the probability that ``variables[k]`` takes letter
    ``ik`` for every k. Instances are treated as immutable; entropies of
    marginals are memoised internally.
    """

    def __init__(self, variables: Iterable[Alphabet], probs, *, validate: bool = True):
        self.variables = tuple(variables)
        probs = np.asarray(probs, dtype=float)
        if validate:
            _check_unique(self.variables)
            shape = tuple(a.size for a in self.variables)
            if probs.shape != shape:
                raise AlphabetMismatch(f"tensor shape {probs.shape} does not match alphabets {shape}")
            if np.any(probs < 0) or not np.all(np.isfinite(probs)):
                raise InvalidDistribution("probabilities must be finite and nonnegative")
            total = probs.sum()
            if abs(total - 1.0) > SUM_TOL:
                raise InvalidDistribution(f"probabilities sum to {total!r}, not 1")
        probs.setflags(write=False)
        self.probs = probs
        self._index = {a.name: k for k, a in enumerate(self.variables)}
        self._marginals = {frozenset(self._index): probs}
        self._entropies: dict[frozenset, float] = {}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.variables)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __repr__(self):
        dims = ", ".join(f"{a.name}:{a.size}" for a in self.variables)
        return f"JointPmf({dims})"

    def alphabet(self, name: str) -> Alphabet:
        try:
            return self.variables[self._index[name]]
        except KeyError:
            raise UnknownVariable(f"unknown variable {name!r}; have {self.names}") from None

    def _resolve(self, names) -> frozenset:
        names = _names(names)
        for n in names:
            if n not in self._index:
                raise UnknownVariable(f"unknown variable {n!r}; have {self.names}")
        return frozenset(names)

    def _marginal(self, key: frozenset) -> np.ndarray:
        """Marginal over ``key`` with axes in this joint's variable order."""
        m = self._marginals.get(key)
        if m is not None:
            return m
        # sum down from the smallest cached superset
        best = None
        for have, arr in self._marginals.items():
            if key <= have and (best is None or arr.size < best[1].size):
                best = (have, arr)
        have, arr = best
        have_order = [n for n in self.names if n in have]
        drop = tuple(k for k, n in enumerate(have_order) if n not in key)
        m = arr.sum(axis=drop) if drop else arr
        self._marginals[key] = m
        return m

    def joint_entropy(self, names) -> float:
        key = self._resolve(names)
        if not key:
            return 0.0
        h = self._entropies.get(key)
        if h is None:
            h = _plogp_sum(self._marginal(key))
            self._entropies[key] = h
        return h


class ConditionalPmf:
    """Conditional distribution P(targets | givens).

    ``probs`` is indexed by the givens' letters followed by the targets'
    letters; for each fixed givens index the remaining slice sums to one.
    """

    def __init__(self, targets: Iterable[Alphabet], givens: Iterable[Alphabet], probs, *, validate: bool = True):
        self.targets = tuple(targets)
        self.givens = tuple(givens)
        probs = np.asarray(probs, dtype=float)
        if validate:
            if not self.targets:
                raise InvalidDistribution("a conditional needs at least one target")
            _check_unique(self.targets + self.givens)
            shape = tuple(a.size for a in self.givens + self.targets)
            if probs.shape != shape:
                raise AlphabetMismatch(f"tensor shape {probs.shape} does not match alphabets {shape}")
            if np.any(probs < 0) or not np.all(np.isfinite(probs)):
                raise InvalidDistribution("probabilities must be finite and nonnegative")
            nt = len(self.targets)
            sums = probs.reshape(probs.shape[: probs.ndim - nt] + (-1,)).sum(axis=-1)
            bad = np.abs(sums - 1.0) > SUM_TOL
            if np.any(bad):
                raise InvalidDistribution(
                    f"conditional slice sums deviate from 1 (worst {sums[bad].ravel()[0]!r})"
                )
        probs.setflags(write=False)
        self.probs = probs

    def __repr__(self):
        t = ",".join(a.name for a in self.targets)
        g = ",".join(a.name for a in self.givens)
        return f"ConditionalPmf({t} | {g})"

    @classmethod
    def deterministic(cls, target: Alphabet, givens: Iterable[Alphabet], fn):
        """Conditional putting all mass on ``fn(*given_letters)``."""
        givens = tuple(givens)
        shape = tuple(a.size for a in givens)
        probs = np.zeros(shape + (target.size,))
        for idx in np.ndindex(*shape):
            probs[idx + (fn(*idx),)] = 1.0
        return cls((target,), givens, probs)


def _factor_parts(f):
    if isinstance(f, JointPmf):
        return f.variables, ()
    if isinstance(f, ConditionalPmf):
        return f.targets, f.givens
    raise TypeError(f"not a factor: {f!r}")


def compose(factors, order=None) -> JointPmf:
    """Multiply conditional factors into a joint distribution.

    Every variable must be the target of exactly one factor, and the
    "depends on" graph between factors must be acyclic. ``order`` fixes the
    axis order of the result; by default variables appear in the order the
    factors determine them.
    """
    factors = list(factors)
    alphabets: dict[str, Alphabet] = {}
    owner: dict[str, int] = {}
    determined: list[str] = []
    for k, f in enumerate(factors):
        targets, givens = _factor_parts(f)
        for a in targets + givens:
            prev = alphabets.setdefault(a.name, a)
            if prev.size != a.size:
                raise AlphabetMismatch(f"variable {a.name!r} has sizes {prev.size} and {a.size}")
        for a in targets:
            if a.name in owner:
                raise ConflictingFactor(f"variable {a.name!r} is determined by two factors")
            owner[a.name] = k
            determined.append(a.name)

    for f in factors:
        for a in _factor_parts(f)[1]:
            if a.name not in owner:
                raise UndeterminedVariable(f"no factor determines {a.name!r}")
    order = determined if order is None else list(_names(order))
    for n in order:
        if n not in owner:
            raise UndeterminedVariable(f"no factor determines {n!r}")
    if sorted(order) != sorted(determined):
        missing = set(determined) - set(order)
        raise UnknownVariable(f"order must list every variable; missing {sorted(missing)}")

    # acyclicity by Kahn's algorithm over factors
    deps = [{owner[a.name] for a in _factor_parts(f)[1]} for f in factors]
    done: set[int] = set()
    while len(done) < len(factors):
        ready = [k for k in range(len(factors)) if k not in done and deps[k] <= done]
        if not ready:
            raise CyclicFactors("factor dependency graph has a cycle")
        done.update(ready)

    letters = {n: string.ascii_letters[i] for i, n in enumerate(alphabets)}
    operands, subs = [], []
    for f in factors:
        targets, givens = _factor_parts(f)
        operands.append(f.probs)
        subs.append("".join(letters[a.name] for a in givens + targets))
    expr = ",".join(subs) + "->" + "".join(letters[n] for n in order)
    probs = np.einsum(expr, *operands)
    return JointPmf([alphabets[n] for n in order], probs)


def marginalize(j: JointPmf, keep) -> JointPmf:
    """Marginal of ``j`` over the variables in ``keep`` (kept in j's order)."""
    key = j._resolve(keep)
    if not key:
        raise UnknownVariable("keep must name at least one variable")
    variables = [a for a in j.variables if a.name in key]
    return JointPmf(variables, np.array(j._marginal(key)), validate=False)


def _disjoint(*sets):
    seen = set()
    for s in sets:
        if seen & s:
            raise OverlappingSets(f"variable sets overlap on {sorted(seen & s)}")
        seen |= s


def entropy(j: JointPmf, A, C=()) -> float:
    """H(A | C) in bits."""
    a, c = j._resolve(A), j._resolve(C)
    if not a:
        raise UnknownVariable("A must name at least one variable")
    _disjoint(a, c)
    h = j.joint_entropy(a | c) - j.joint_entropy(c)
    return max(h, 0.0) if h > -MI_CLAMP_TOL else _negative("H", h)


def mutual_information(j: JointPmf, A, B, C=()) -> float:
    """I(A; B | C) in bits. ``C`` may be empty."""
    a, b, c = j._resolve(A), j._resolve(B), j._resolve(C)
    if not a or not b:
        raise UnknownVariable("A and B must each name at least one variable")
    _disjoint(a, b, c)
    H = j.joint_entropy
    mi = H(a | c) + H(b | c) - H(a | b | c) - H(c)
    if mi < 0:
        return 0.0 if mi > -MI_CLAMP_TOL else _negative("I", mi)
    return mi


def _negative(what, value):
    raise ConsistencyError(f"{what} evaluated to {value!r} < 0")


def binary_entropy(p: float) -> float:
    """h2(p) = -p log2 p - (1-p) log2 (1-p)."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p))


def inverse_binary_entropy(h: float) -> float:
    """The p in [0, 1/2] with binary_entropy(p) == h, by bisection."""
    if not 0.0 <= h <= 1.0:
        raise OutOfRange(f"binary entropy must lie in [0, 1], got {h!r}")
    if h == 0.0:
        return 0.0
    if h == 1.0:
        return 0.5
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if binary_entropy(mid) < h:
            lo = mid
        else:
            hi = mid
    return lo if abs(binary_entropy(lo) - h) <= abs(binary_entropy(hi) - h) else hi
