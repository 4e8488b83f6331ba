import numpy as np
import pytest

from vanetsl.attackers import FixedOffset, RandomOffset, RandomPosition, apply, parse_strategy


def test_fixed_offset_examples():
    assert apply(FixedOffset(300, 300), (0.0, 0.0)) == (300.0, 300.0)
    assert apply(FixedOffset(50, 50), (10.0, 10.0)) == (60.0, 60.0)
    assert apply(FixedOffset(300, 300), (100.0, 200.0)) == (400.0, 500.0)


def test_fixed_offset_ignores_rng():
    s = FixedOffset(3, -4)
    a = s.apply((1.0, 1.0), np.random.default_rng(1))
    b = s.apply((1.0, 1.0), np.random.default_rng(2))
    assert a == b == (4.0, -3.0)


def test_random_offset_stays_in_square():
    rng = np.random.default_rng(11)
    s = RandomOffset(300)
    x, y = 1200.0, 800.0
    pts = np.array([s.apply((x, y), rng) for _ in range(10_000)])
    assert (np.abs(pts[:, 0] - x) <= 300).all() and (np.abs(pts[:, 1] - y) <= 300).all()
    # the square is actually covered, not just a corner of it
    assert pts[:, 0].min() < x - 290 and pts[:, 0].max() > x + 290


def test_random_position_is_uniform():
    from scipy.stats import chisquare

    rng = np.random.default_rng(5)
    s = RandomPosition((0.0, 0.0, 4000.0, 4000.0))
    pts = np.array([s.apply((0.0, 0.0), rng) for _ in range(100_000)])
    hist, _, _ = np.histogram2d(pts[:, 0], pts[:, 1], bins=10, range=[[0, 4000], [0, 4000]])
    assert chisquare(hist.ravel()).pvalue > 0.01


def test_apply_does_not_mutate_input():
    pos = [5.0, 6.0]
    for s in (FixedOffset(), RandomOffset(10), RandomPosition((0, 0, 10, 10))):
        s.apply(pos, np.random.default_rng(0))
    assert pos == [5.0, 6.0]


def test_random_position_must_fit_world():
    with pytest.raises(ValueError):
        RandomPosition((0, 0, 5000, 100)).within((0, 0, 4000, 4000))
    assert RandomPosition().within((0, 0, 10, 20)).bounds == (0.0, 0.0, 10.0, 20.0)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("fixed:300,300", FixedOffset(300, 300)),
        ("fixed:50,50", FixedOffset(50, 50)),
        ("random_position", RandomPosition()),
        ("random_offset:300", RandomOffset(300)),
    ],
)
def test_parse_strategy(text, expected):
    s = parse_strategy(text)
    assert s == expected
    assert parse_strategy(str(s)) == s


@pytest.mark.parametrize("bad", ["teleport", "fixed:1", "random_offset:-3", "random_offset:x"])
def test_parse_strategy_rejects(bad):
    with pytest.raises(ValueError):
        parse_strategy(bad)
