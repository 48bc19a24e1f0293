import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from macsi.coding import Codec, arithmetic_decode, arithmetic_encode, ideal_codelength
from macsi.errors import ConfigError, Overflow
from macsi.prob import binary_entropy

P = 0.11


def test_all_zero_sequence_is_short():
    bits = np.zeros(1000, dtype=np.uint8)
    code = arithmetic_encode(bits, P, budget=550)
    ideal = 1000 * np.log2(1 / 0.89)
    assert ideal == pytest.approx(168.1, abs=0.1)
    assert ideal <= code.size <= ideal + 3
    np.testing.assert_array_equal(arithmetic_decode(code, P, 1000), bits)


def test_alternating_sequence_overflows():
    bits = np.arange(1000) % 2
    with pytest.raises(Overflow) as exc:
        arithmetic_encode(bits, P, budget=550)
    assert exc.value.length == pytest.approx(ideal_codelength(bits, P), abs=3)
    assert exc.value.budget == 550


def test_round_trip_many_sequences():
    rng = np.random.default_rng(0)
    n, budget = 200, 130
    seen = 0
    for _ in range(10_000):
        bits = (rng.random(n) < P).astype(np.uint8)
        try:
            code = arithmetic_encode(bits, P, budget)
        except Overflow:
            continue
        seen += 1
        # the decoder sees the codeword zero-padded to the full field
        field = np.zeros(budget, dtype=np.uint8)
        field[: code.size] = code
        np.testing.assert_array_equal(arithmetic_decode(field, P, n), bits)
    assert seen > 9000


def test_codelength_near_entropy():
    rng = np.random.default_rng(1)
    bits = (rng.random(20_000) < P).astype(np.uint8)
    code = arithmetic_encode(bits, P)
    assert code.size - ideal_codelength(bits, P) < 3
    assert code.size / bits.size == pytest.approx(binary_entropy(P), abs=0.02)


def test_zero_field_decodes_to_zeros():
    out = arithmetic_decode(np.zeros(10, dtype=np.uint8), P, 500)
    assert not out.any()


def test_codec_wrapper_and_errors():
    c = Codec(P, 64)
    bits = np.array([0, 1, 0, 0, 0, 0, 0, 1] * 4)
    np.testing.assert_array_equal(c.decode(c.encode(bits), bits.size), bits)
    with pytest.raises(ConfigError):
        Codec(P, 0)
    with pytest.raises(ConfigError):
        Codec(1.5, 10)
    with pytest.raises(ValueError):
        arithmetic_encode([], P)
    with pytest.raises(ValueError):
        arithmetic_encode([0, 2], P)
    with pytest.raises(ValueError):
        arithmetic_decode([0], P, 0)


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.integers(0, 1), min_size=1, max_size=300),
    st.floats(min_value=0.0, max_value=1.0),
)
def test_fuzz_round_trip_any_model(bits, p):
    code = arithmetic_encode(bits, p)
    np.testing.assert_array_equal(arithmetic_decode(code, p, len(bits)), bits)
