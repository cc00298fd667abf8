import math

import numpy as np
import pytest

from dtqw.equivalence import (
    NonZeroOddAmplitude,
    certify,
    compress_even,
    translate,
    verify_dqw_sqw,
    verify_ssqw_dqw,
    verify_ssqw_sqw,
)
from dtqw.walk import (
    CoinConvention,
    InitialState,
    Variant,
    WalkSpec,
    WalkState,
    distribution,
    evolve,
    max_deviation,
    step_dqw,
)


def test_compress_even_relabels():
    s = WalkState(2, -2, np.array([0.5, 0, 0.5, 0, 0.5]), np.zeros(5))
    c = compress_even(s)
    assert c.offset == -1 and list(c.positions) == [-1, 0, 1]
    assert np.allclose(c.amps_up, [0.5, 0.5, 0.5])
    assert c.t == 1


def test_compress_even_rejects_odd_amplitude():
    s = WalkState(0, 0, np.array([0.9, 0.1]), np.zeros(2))
    with pytest.raises(NonZeroOddAmplitude):
        compress_even(s)


def test_compress_even_preserves_norm():
    s = evolve(WalkSpec(Variant.SQW, 0.6, 10, initial=InitialState(0.3, 0.9)))
    assert compress_even(s).norm() == pytest.approx(1, abs=1e-12)


def test_two_sqw_steps_equal_one_split_step():
    sq = evolve(WalkSpec(Variant.SQW, math.pi / 4, 2))
    ss = evolve(WalkSpec(Variant.SSQW, math.pi / 4, 1))
    assert max_deviation(compress_even(sq), ss) < 1e-15


def test_translate_group_and_identity():
    s = evolve(WalkSpec(Variant.DQW, 0.5, 4))
    assert max_deviation(translate(s, 0), s) == 0
    assert max_deviation(translate(translate(s, -1), -1), translate(s, -2)) == 0


def test_translated_dqw_matches_compressed_sqw():
    dq = evolve(WalkSpec(Variant.DQW, math.pi / 4, 2))
    sq = evolve(WalkSpec(Variant.SQW, math.pi / 4, 2))
    assert max_deviation(translate(dq, -1), compress_even(sq)) < 1e-15


@pytest.mark.parametrize("k", [-3, 2])
def test_translate_commutes_with_dqw_step(k):
    s = evolve(WalkSpec(Variant.DQW, 0.8, 5, initial=InitialState(1.0, 0.3)))
    a = translate(step_dqw(s, 0.8), k)
    b = step_dqw(translate(s, k), 0.8)
    assert max_deviation(a, b) == 0


@pytest.mark.parametrize("fn", [verify_ssqw_sqw, verify_dqw_sqw, verify_ssqw_dqw])
def test_zero_steps_is_exact(fn):
    assert fn(0.9, 0) == 0


@pytest.mark.parametrize(
    "fn, theta, t, init",
    [
        (verify_ssqw_sqw, math.pi / 4, 50, InitialState(math.pi / 4, 0)),
        (verify_ssqw_sqw, math.pi / 3, 25, InitialState()),
        (verify_dqw_sqw, math.pi / 4, 50, InitialState()),
        (verify_dqw_sqw, math.pi / 5, 7, InitialState(math.pi / 3, 1.0)),
        (verify_ssqw_dqw, math.pi / 4, 50, InitialState()),
        (verify_ssqw_dqw, math.pi / 6, 13, InitialState(0.2, 2.0)),
    ],
)
def test_equivalence_examples(fn, theta, t, init):
    assert fn(theta, t, init) < 1e-10


@pytest.mark.parametrize("theta", [0.0, math.pi / 7, math.pi / 4, math.pi / 3, math.pi / 2])
def test_certify_grid(theta):
    rng = np.random.default_rng(11)
    for delta, eta in rng.uniform(0, 2 * math.pi, size=(10, 2)):
        report = certify(theta, 50, InitialState(delta, eta))
        assert report.passed(1e-10)
        assert len(report.ssqw_sqw) == 51


def test_certify_agrees_with_single_verifiers():
    init = InitialState(0.7, 0.2)
    report = certify(0.9, 6, init)
    for t in range(7):
        assert report.ssqw_sqw[t] == pytest.approx(verify_ssqw_sqw(0.9, t, init), abs=1e-15)
        assert report.dqw_sqw[t] == pytest.approx(verify_dqw_sqw(0.9, t, init), abs=1e-15)
        assert report.ssqw_dqw[t] == pytest.approx(verify_ssqw_dqw(0.9, t, init), abs=1e-15)


def test_real_coin_equivalences_hold():
    report = certify(0.7, 20, InitialState(0.4, 0.0), CoinConvention.REAL)
    assert report.passed(1e-10)


def test_probability_equality_at_100_steps():
    init = InitialState(math.pi / 4, 0)
    ss = distribution(evolve(WalkSpec(Variant.SSQW, math.pi / 4, 50, initial=init)))
    sq = distribution(evolve(WalkSpec(Variant.SQW, math.pi / 4, 100, initial=init)))
    dq = distribution(evolve(WalkSpec(Variant.DQW, math.pi / 4, 100, initial=init)))
    for y in range(-50, 51):
        assert abs(ss.prob(y) - sq.prob(2 * y)) < 1e-10
        assert abs(ss.prob(y) - dq.prob(y + 50)) < 1e-10
