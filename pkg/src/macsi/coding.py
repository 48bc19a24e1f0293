"""Binary arithmetic coding under an IID Bernoulli(p) model.

Integer range coder with 62-bit registers and underflow ("pending") bits.
The model probability is quantized to 30 bits, so every product fits in
92 bits of Python integer arithmetic. The decoder is told the message
length and reads zeros past the end of the codeword, which makes the code
usable inside a fixed-size, zero-padded field.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, Overflow

__all__ = ["Codec", "arithmetic_encode", "arithmetic_decode", "ideal_codelength"]

_PREC = 62
_FULL = 1 << _PREC
_HALF = _FULL >> 1
_QUARTER = _FULL >> 2
_TOP = _FULL - 1
_PBITS = 30
_PONE = 1 << _PBITS


def _zero_weight(p: float) -> int:
    """Quantized P(bit = 0) in units of 2**-30, kept strictly inside (0, 1)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"model probability must lie in [0, 1], got {p!r}")
    q1 = min(max(int(round(p * _PONE)), 1), _PONE - 1)
    return _PONE - q1


def ideal_codelength(bits, p: float) -> float:
    """-log2 of the probability of ``bits`` under the quantized model."""
    c0 = _zero_weight(p)
    bits = np.asarray(bits)
    ones = int(np.count_nonzero(bits))
    zeros = bits.size - ones
    return -(zeros * np.log2(c0 / _PONE) + ones * np.log2(1 - c0 / _PONE))


def arithmetic_encode(bits, p: float, budget: int | None = None) -> np.ndarray:
    """Codeword for ``bits`` as a uint8 array of 0/1 values.

    Raises Overflow when the codeword is longer than ``budget`` bits
    (``None`` means unlimited).
    """
    seq = [int(b) for b in np.asarray(bits).ravel()]
    if not seq:
        raise ValueError("cannot encode an empty sequence")
    if any(b not in (0, 1) for b in seq):
        raise ValueError("bits must be 0 or 1")
    c0 = _zero_weight(p)
    low, high, pending = 0, _TOP, 0
    out: list[int] = []
    emit = out.append
    for b in seq:
        mid = low + (((high - low + 1) * c0) >> _PBITS) - 1
        if b:
            low = mid + 1
        else:
            high = mid
        while True:
            if high < _HALF:
                emit(0)
                out.extend([1] * pending)
                pending = 0
            elif low >= _HALF:
                emit(1)
                out.extend([0] * pending)
                pending = 0
                low -= _HALF
                high -= _HALF
            elif low >= _QUARTER and high < _HALF + _QUARTER:
                pending += 1
                low -= _QUARTER
                high -= _QUARTER
            else:
                break
            low <<= 1
            high = (high << 1) | 1
    # two more bits pin a point inside [low, high] whatever zeros follow
    pending += 1
    if low < _QUARTER:
        emit(0)
        out.extend([1] * pending)
    else:
        emit(1)
        out.extend([0] * pending)
    if budget is not None and len(out) > budget:
        raise Overflow(len(out), budget)
    return np.array(out, dtype=np.uint8)


def arithmetic_decode(code, p: float, n: int) -> np.ndarray:
    """Inverse of :func:`arithmetic_encode` for a message of ``n`` bits."""
    if n < 1:
        raise ValueError("message length must be positive")
    code = [int(b) for b in np.asarray(code).ravel()]
    c0 = _zero_weight(p)
    code.extend([0] * _PREC)
    value = 0
    for k in range(_PREC):
        value = (value << 1) | code[k]
    nxt = _PREC
    low, high = 0, _TOP
    out = np.empty(n, dtype=np.uint8)
    for i in range(n):
        mid = low + (((high - low + 1) * c0) >> _PBITS) - 1
        if value <= mid:
            out[i] = 0
            high = mid
        else:
            out[i] = 1
            low = mid + 1
        while True:
            if high < _HALF:
                pass
            elif low >= _HALF:
                low -= _HALF
                high -= _HALF
                value -= _HALF
            elif low >= _QUARTER and high < _HALF + _QUARTER:
                low -= _QUARTER
                high -= _QUARTER
                value -= _QUARTER
            else:
                break
            low <<= 1
            high = (high << 1) | 1
            if nxt >= len(code):
                code.extend([0] * _PREC)
            value = (value << 1) | code[nxt]
            nxt += 1
    return out


@dataclass(frozen=True)
class Codec:
    """Arithmetic codec with a fixed model probability and bit budget."""

    p: float
    budget: int

    def __post_init__(self):
        if isinstance(self.budget, bool) or int(self.budget) != self.budget or self.budget < 1:
            raise ConfigError(f"bit budget must be an integer >= 1, got {self.budget!r}")
        if not 0.0 <= self.p <= 1.0:
            raise ConfigError(f"model probability must lie in [0, 1], got {self.p!r}")

    def encode(self, bits) -> np.ndarray:
        return arithmetic_encode(bits, self.p, self.budget)

    def decode(self, code, n: int) -> np.ndarray:
        return arithmetic_decode(code, self.p, n)
