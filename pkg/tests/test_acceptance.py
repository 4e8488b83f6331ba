"""Acceptance suite.

Every criterion runs at its stated tolerance and records one PASS/FAIL line
that is printed in the terminal summary. Simulation criteria use five seeds
of the 360 s reference scenario, so this module takes several minutes.
"""

import functools
import math
import time

import mpmath
import numpy as np
import pytest

from oracles import as_tuples, recount
from vanetsl.config import ScenarioConfig, SweepSpec
from vanetsl.detectors import EART, MERGED, ExchangeConfig, eart_from_distance, exchange_opinion
from vanetsl.fusion import DetectionSuite
from vanetsl.metrics import aggregate
from vanetsl.opinion import Opinion, fuse, vacuous, validate
from vanetsl.sim import World, run_scenario
from vanetsl.sweep import preset, run_sweep

pytestmark = pytest.mark.slow

REPS = 5
FRACTIONS = (0.01, 0.1, 0.2, 0.3)
REFERENCE = ScenarioConfig()


@functools.lru_cache(maxsize=None)
def run_cached(config):
    return run_scenario(config)


def pooled(base, reps=REPS):
    """Weighted aggregate over ``reps`` seeds of ``base``."""
    spec = SweepSpec.single(base, reps)
    results = [run_cached(spec.config_for(None, i)) for i in range(reps)]
    return aggregate(results)


def fmt(x):
    return "undef" if x is None else f"{x:.4f}"


# C1 --------------------------------------------------------------------------


def random_opinions(rng, n):
    bdu = rng.dirichlet((1.0, 1.0, 1.0), size=n)
    # edge cases: exact vacuous and dogmatic opinions
    bdu[: n // 50] = (0.0, 0.0, 1.0)
    bdu[n // 50 : n // 25, :2] = rng.dirichlet((1.0, 1.0), size=n // 50)
    bdu[n // 50 : n // 25, 2] = 0.0
    return [Opinion(float(b), float(d), 1.0 - float(b) - float(d)) for b, d, _ in bdu]


def test_c1_opinion_algebra(report):
    rng = np.random.default_rng(20240501)
    n = 100_000
    start = time.perf_counter()
    xs = random_opinions(rng, n)
    ys = random_opinions(rng, n)
    rng.shuffle(ys)
    v = vacuous()
    worst = 0.0
    failures = 0
    for x, y in zip(xs, ys):
        xy, yx = fuse(x, y), fuse(y, x)
        ok = validate(xy)
        comm = max(abs(p - q) for p, q in zip(xy, yx))
        ident = max(abs(p - q) for p, q in zip(fuse(x, v), x))
        reduce = xy.uncertainty - min(x.uncertainty, y.uncertainty)
        worst = max(worst, comm, ident, reduce)
        failures += (not ok) or comm > 1e-9 or ident > 1e-9 or reduce > 1e-9
    example = fuse(Opinion(0.5, 0.0, 0.5), Opinion(0.0, 0.5, 0.5))
    ex_err = max(abs(example.belief - 1 / 3), abs(example.disbelief - 1 / 3), abs(example.uncertainty - 1 / 3))
    elapsed = time.perf_counter() - start
    ok = failures == 0 and ex_err <= 1e-12 and elapsed < 10.0
    report("C1", ok, f"{n} pairs, failures={failures}, worst={worst:.2e}, example err={ex_err:.1e}, {elapsed:.2f}s")
    assert failures == 0
    assert ex_err <= 1e-12
    assert elapsed < 10.0


# C2 --------------------------------------------------------------------------


def eart_direct(delta, theta, sigma):
    with mpmath.workdps(50):
        g = mpmath.exp(-((mpmath.mpf(delta) - mpmath.mpf(theta)) ** 2) / (2 * mpmath.mpf(sigma) ** 2))
        return (float(1 - g), 0.0, float(g)) if delta <= theta else (0.0, float(1 - g), float(g))


def test_c2_eart_oracle(report):
    worst = 0.0
    points = 0
    for theta in (200.0, 300.0, 400.0, 450.0, 500.0):
        for sigma in (10.0, 25.0, 50.0, 100.0, 150.0, 400.0):
            for delta in np.linspace(0.0, 1200.0, 241):
                got = eart_from_distance(float(delta), theta, sigma)
                want = eart_direct(float(delta), theta, sigma)
                worst = max(worst, *(abs(g - w) for g, w in zip(got, want)))
                points += 1
    at_theta = all(
        eart_from_distance(t, t, s).uncertainty == 1.0 for t in (200.0, 400.0, 437.5) for s in (1.0, 50.0, 150.0)
    )
    ok = worst <= 1e-12 and at_theta
    report("C2", ok, f"{points} grid points, max err={worst:.1e}, u(delta=theta)==1: {at_theta}")
    assert worst <= 1e-12
    assert at_theta


# C3 --------------------------------------------------------------------------


def test_c3_exchange_oracle(report):
    cfg = ExchangeConfig()
    exact = True
    for n in range(51):
        for beta in {0, n // 2, n}:
            exact &= exchange_opinion(beta, n, cfg).uncertainty == math.exp(-n / 10)
    empty = exchange_opinion(0, 0, cfg)
    is_vacuous = tuple(empty) == tuple(vacuous())
    report("C3", exact and is_vacuous, f"u == exp(-n/10) exact for n in 0..50: {exact}, n=0 vacuous: {is_vacuous}")
    assert exact
    assert is_vacuous


# C4 --------------------------------------------------------------------------


@pytest.mark.parametrize("sigma", [50.0, 100.0, 150.0])
def test_c4_merged_vs_art(sigma, report):
    (spec,) = [s for s in preset("fig_parameters", repetitions=REPS) if s.param == "sigma"]
    start = time.perf_counter()
    results = [run_cached(spec.config_for(sigma, i)) for i in range(REPS)]
    elapsed = time.perf_counter() - start
    agg = aggregate(results)
    art, merged = agg["ART"], agg[MERGED]
    fp_ok = merged.fp_rate <= art.fp_rate + 0.01
    tp_ok = art.tp_rate is not None and merged.tp_rate >= art.tp_rate - 0.01
    ok = fp_ok and tp_ok and elapsed < 300.0
    report(
        "C4",
        ok,
        f"sigma={sigma:g}: FP merged {fmt(merged.fp_rate)} vs ART {fmt(art.fp_rate)}, "
        f"TP merged {fmt(merged.tp_rate)} vs ART {fmt(art.tp_rate)}, {elapsed:.0f}s",
    )
    assert fp_ok
    assert tp_ok
    assert elapsed < 300.0


# C5 --------------------------------------------------------------------------


def test_c5_density_invariance(report):
    base = REFERENCE.replace(strategy="random_position")
    low, high = pooled(base.replace(density="low")), pooled(base.replace(density="high"))
    diffs = {}
    for label in (MERGED, EART):
        for rate in ("tp_rate", "fp_rate"):
            diffs[f"{label} {rate[:2].upper()}"] = abs(getattr(low[label], rate) - getattr(high[label], rate))
    ok = all(d <= 0.10 for d in diffs.values())
    report("C5", ok, "low vs high |diff|: " + ", ".join(f"{k} {v:.4f}" for k, v in diffs.items()))
    assert ok


# C6 --------------------------------------------------------------------------


def test_c6_fraction_invariance(report):
    aggs = [pooled(REFERENCE.replace(attacker_probability=p))[MERGED] for p in FRACTIONS]
    tps = [a.tp_rate for a in aggs]
    fps = [a.fp_rate for a in aggs]
    tp_span, fp_span = max(tps) - min(tps), max(fps) - min(fps)
    ok = tp_span <= 0.10 and fp_span <= 0.10
    report(
        "C6",
        ok,
        f"Merged TP {[round(t, 4) for t in tps]} span {tp_span:.4f}, FP {[round(f, 4) for f in fps]} span {fp_span:.4f}",
    )
    assert tp_span <= 0.10
    assert fp_span <= 0.10


# C7 --------------------------------------------------------------------------


def test_c7_small_offset_blindness(report):
    small = pooled(REFERENCE.replace(strategy="fixed:50,50"))[MERGED].tp_rate
    large = pooled(REFERENCE.replace(strategy="fixed:300,300"))[MERGED].tp_rate
    ok = small < 0.3 and large > 0.6
    report("C7", ok, f"Merged TP fixed:50,50 {fmt(small)} (< 0.3), fixed:300,300 {fmt(large)} (> 0.6)")
    assert small < 0.3
    assert large > 0.6


# C8 --------------------------------------------------------------------------


def test_c8_vacuous_identity_pipeline(report):
    cfg = REFERENCE.replace(exchange_enabled=False)
    world = World(cfg)
    suite = DetectionSuite.from_config(cfg)
    messages = disagreements = nonempty = 0
    for _ in range(cfg.n_ticks):
        world.step()
        for _sender, _beacon, receptions in world.beacons():
            for rec in receptions:
                nonempty += bool(rec.evidence.neighbor_table)
                flags = suite.evaluate(rec.evidence).flags
                disagreements += flags[MERGED] != flags[EART]
                messages += 1
    ok = disagreements == 0 and nonempty == 0 and messages > 0
    report("C8", ok, f"{messages} messages, {disagreements} Merged/eART disagreements, {nonempty} non-empty tables")
    assert messages > 0
    assert nonempty == 0
    assert disagreements == 0


# C9 --------------------------------------------------------------------------


def test_c9_determinism(tmp_path, report):
    base = REFERENCE.replace(density="low", duration=60.0, attacker_probability=0.2)
    spec = SweepSpec("det", "sigma", (50.0, 150.0), 2, base)
    outputs = []
    for name, jobs in (("a", 1), ("b", 1), ("c", 2)):
        paths = run_sweep(spec, str(tmp_path / name), jobs=jobs)
        outputs.append([open(p, "rb").read() for p in paths])
    identical = outputs[0] == outputs[1] == outputs[2]
    report("C9", identical, f"raw and aggregate CSVs byte-identical across 3 executions (serial, serial, 2 jobs): {identical}")
    assert identical


# C10 -------------------------------------------------------------------------


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_c10_eventlog_recount(seed, tmp_path, report):
    cfg = REFERENCE.replace(seed=seed)
    path = tmp_path / "events.csv"
    with open(path, "w", newline="") as fh:
        result = run_scenario(cfg, eventlog=fh)
    with open(path, newline="") as fh:
        counts, mismatches = recount(fh, cfg.art_threshold, cfg.decision_threshold)
    same = counts == as_tuples(result.counts)
    ok = same and mismatches == 0
    total = sum(counts["ART"][:2])
    report("C10", ok, f"seed {seed}: {total} messages, counts equal: {same}, flag mismatches: {mismatches}")
    assert mismatches == 0
    assert same
