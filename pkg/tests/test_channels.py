import json

import numpy as np
import pytest

from macsi.channels import (
    DoubleStateChannel,
    SingleStateChannel,
    build_example_double,
    build_example_single,
    build_useless_channel,
    build_x1_disconnected_channel,
    channel_to_dict,
    load_channel,
    save_channel,
)
from macsi.errors import NegativeProbability, NormalizationError, ParseError, SchemaError
from macsi.prob import Alphabet, JointPmf, compose, entropy, inverse_binary_entropy, mutual_information


def with_inputs(ch, p1=(0.5, 0.5), p2=(0.5, 0.5)) -> JointPmf:
    x1 = JointPmf([Alphabet("X1", ch.X1.size)], p1)
    x2 = JointPmf([Alphabet("X2", ch.X2.size)], p2)
    return compose([ch.state_pmf, x1, x2, ch.law])


def test_example_state_marginal():
    ch = build_example_single()
    pw = ch.p_w.reshape(2, 2)  # (w0, w1)
    assert pw.sum(axis=1)[1] == pytest.approx(0.110028, abs=1e-6)
    assert pw.sum(axis=1)[1] == inverse_binary_entropy(0.5)
    assert entropy(ch.state_pmf, "W") == pytest.approx(1.0, abs=1e-9)


def test_example_law_entry():
    law = build_example_single().law.probs
    # (x1, x2) = (0, 0), (w0, w1) = (1, 0): y1 = 0 xor w0 = 1, y2 = 0
    w, y = 2 * 1 + 0, 2 * 1 + 0
    assert law[w, 0, 0, y] == 1.0


def test_example_information_components():
    j = with_inputs(build_example_single())
    assert mutual_information(j, "X2", "Y") == pytest.approx(1.0, abs=1e-9)
    assert mutual_information(j, "X1", "Y", "X2") == pytest.approx(0.5, abs=1e-9)
    assert entropy(j, "Y", ["W", "X1", "X2"]) == 0.0


def test_example_double_shares_law():
    s, d = build_example_single(), build_example_double()
    assert isinstance(d, DoubleStateChannel)
    assert d.S1.size == 1
    assert entropy(d.state_pmf2, "S2") == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_array_equal(d.law.probs[0], s.law.probs)


def test_useless_channel():
    ch = build_useless_channel()
    assert entropy(ch.state_pmf, "W") == pytest.approx(1.0)
    for p1 in ((1, 0), (0.3, 0.7)):
        j = with_inputs(ch, p1, (0.2, 0.8))
        assert mutual_information(j, ["X1", "X2"], "Y") == pytest.approx(0.0, abs=1e-12)
        assert mutual_information(j, "X1", ["Y", "W"], "X2") == pytest.approx(0.0, abs=1e-12)


def test_x1_disconnected_channel():
    j = with_inputs(build_x1_disconnected_channel())
    assert mutual_information(j, "X2", "Y") == pytest.approx(1.0, abs=1e-12)
    assert mutual_information(j, "X1", "Y", "X2") == 0.0
    assert mutual_information(j, "X1", ["Y", "W"], "X2") == 0.0


@pytest.mark.parametrize(
    "build", [build_example_single, build_example_double, build_useless_channel, build_x1_disconnected_channel]
)
def test_file_round_trip_bit_exact(build, tmp_path):
    ch = build()
    path = tmp_path / "ch.json"
    save_channel(ch, path)
    back = load_channel(path)
    assert type(back) is type(ch)
    assert back.law.probs.tobytes() == ch.law.probs.tobytes()
    if isinstance(ch, SingleStateChannel):
        assert back.p_w.tobytes() == ch.p_w.tobytes()
    else:
        assert back.state_pmf2.probs.tobytes() == ch.state_pmf2.probs.tobytes()


def _write(tmp_path, d, name="c.json"):
    p = tmp_path / name
    p.write_text(json.dumps(d))
    return p


def test_small_deviation_renormalized(tmp_path):
    d = channel_to_dict(build_x1_disconnected_channel())
    d["state_pmf"] = [0.5 + 4e-7, 0.5]
    ch = load_channel(_write(tmp_path, d))
    assert ch.p_w.sum() == pytest.approx(1.0, abs=1e-15)


def test_bad_slice_rejected(tmp_path):
    d = channel_to_dict(build_x1_disconnected_channel())
    law = np.array(d["law"]).reshape(2, 2, 2, 2)
    law[0, 0, 0] = [0.98, 0.0]
    d["law"] = law.ravel().tolist()
    with pytest.raises(NormalizationError):
        load_channel(_write(tmp_path, d))


def test_file_errors(tmp_path):
    with pytest.raises(ParseError):
        load_channel(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        load_channel(bad)
    good = channel_to_dict(build_useless_channel())
    for mutate in (
        lambda d: d.update(kind="triple"),
        lambda d: d["alphabets"].pop("Y"),
        lambda d: d["alphabets"].update(X1=0),
        lambda d: d.update(law=d["law"][:-1]),
        lambda d: d.update(state_pmf="half"),
    ):
        d = json.loads(json.dumps(good))
        mutate(d)
        with pytest.raises(SchemaError):
            load_channel(_write(tmp_path, d))
    d = json.loads(json.dumps(good))
    d["state_pmf"] = [1.5, -0.5]
    with pytest.raises(NegativeProbability):
        load_channel(_write(tmp_path, d))


def test_double_file_with_trivial_s1(tmp_path):
    d = {
        "kind": "double",
        "alphabets": {"S1": 1, "S2": 2, "X1": 2, "X2": 2, "Y": 2},
        "state_pmf": [1.0],
        "state_pmf2": [0.5, 0.5],
        "law": np.full((1, 2, 2, 2, 2), 0.5).ravel().tolist(),
    }
    ch = load_channel(_write(tmp_path, d))
    assert isinstance(ch, DoubleStateChannel) and ch.S1.size == 1
