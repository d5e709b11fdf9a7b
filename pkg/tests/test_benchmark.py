import csv
import io
import statistics

import numpy as np
import pytest

from nbdisc import benchmark as bm
from nbdisc.benford import marginal_reference, nbd_flat, nbd_joint
from nbdisc.samplers import SamplerSpec, sample


def rec(value, replicate=0, sampler="mc", n=8, metric="nbd_flat"):
    return bm.BenchmarkRecord(sampler, n, 2, replicate, metric, value)


class TestDigitErrors:
    def test_rows_sum_to_zero(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            table = bm.per_dimension_digit_errors(rng.random((32, 10)))
            assert table.deviations.shape == (10, 9)
            assert np.all(np.abs(table.deviations.sum(axis=1)) < 1e-12)

    def test_rows_iteration(self):
        table = bm.per_dimension_digit_errors(np.random.default_rng(1).random((5, 3)))
        rows = list(table.rows())
        assert len(rows) == 27
        assert rows[0][:2] == (0, 1) and rows[-1][:2] == (2, 9)

    def test_single_point_row(self):
        ref = marginal_reference().probs
        table = bm.per_dimension_digit_errors([[0.0]])
        expected = -ref.copy()
        expected[0] += 1
        np.testing.assert_allclose(table.deviations[0], expected, atol=1e-15)


class TestRunReplicates:
    def test_single_replicate(self):
        spec = SamplerSpec("mc", 16, 3, seed=42)
        (r,) = bm.run_replicates(spec, "nbd_flat", 1)
        assert r.value == nbd_flat(sample(spec)).value
        assert (r.replicate, r.n_points, r.n_dims, r.sampler) == (0, 16, 3, "mc")

    def test_seed_schedule(self):
        spec = SamplerSpec("mc", 16, 3, seed=42)
        records = bm.run_replicates(spec, "nbd_joint", 4)
        for r in records:
            design = sample(SamplerSpec("mc", 16, 3, seed=42 + r.replicate))
            assert r.value == nbd_joint(design).value

    def test_parallel_matches_serial(self):
        spec = SamplerSpec("sobol", 64, 5, seed=3, scramble=True)
        assert bm.run_replicates(spec, "cd2", 6) == bm.run_replicates(spec, "cd2", 6, workers=4)

    def test_zero_replicates(self):
        with pytest.raises(ValueError):
            bm.run_replicates(SamplerSpec("mc", 4, 2), "nbd_flat", 0)

    def test_unknown_metric(self):
        with pytest.raises(ValueError):
            bm.run_replicates(SamplerSpec("mc", 4, 2), "l2star", 1)

    def test_sobol_beats_mc(self):
        mc = bm.run_replicates(SamplerSpec("mc", 32, 10, seed=0), "nbd_flat", 30)
        sob = bm.run_replicates(SamplerSpec("sobol", 32, 10, seed=0, scramble=True), "nbd_flat", 30)
        assert np.mean([r.value for r in sob]) < np.mean([r.value for r in mc])


class TestConvergence:
    def test_cross_product(self):
        records = bm.convergence_study(["mc", "sobol"], [8, 16], 3, 2)
        assert len(records) == 2 * 2 * 2 * 2
        assert records == sorted(records, key=bm.BenchmarkRecord.sort_key)

    def test_requires_ascending(self):
        with pytest.raises(ValueError):
            bm.convergence_study(["mc"], [16, 8], 3, 2)

    def test_mc_spread_exceeds_sobol_per_digit(self):
        _, rows = bm.digits_study(["mc", "sobol"], 32, 10, 20, base_seed=0)
        spread = {}
        for kind in ("mc", "sobol"):
            dev = np.array([r[4] for r in rows if r[0] == kind]).reshape(20, 10, 9)
            spread[kind] = dev.std(axis=1).mean()
        assert spread["mc"] > spread["sobol"]


class TestSummarize:
    def test_single(self):
        (s,) = bm.summarize([rec(0.25)])
        assert s.mean == s.median == s.min == s.max == s.q25 == s.q75 == 0.25

    def test_median_midpoint(self):
        (s,) = bm.summarize([rec(v, i) for i, v in enumerate([4.0, 1.0, 3.0, 2.0])])
        assert s.median == 2.5
        assert (s.q25, s.q75) == (1.75, 3.25)

    def test_against_statistics_module(self):
        values = np.random.default_rng(7).random(99).tolist()
        (s,) = bm.summarize([rec(v, i) for i, v in enumerate(values)])
        q = statistics.quantiles(values, n=4, method="inclusive")
        assert s.q25 == pytest.approx(q[0], abs=1e-15)
        assert s.median == pytest.approx(q[1], abs=1e-15)
        assert s.q75 == pytest.approx(q[2], abs=1e-15)
        assert s.mean == pytest.approx(statistics.fmean(values), abs=1e-15)

    def test_empty(self):
        with pytest.raises(ValueError):
            bm.summarize([])

    def test_grouping_order(self):
        rows = bm.summarize([rec(1.0, sampler="sobol"), rec(2.0, sampler="mc"),
                             rec(3.0, metric="cd2")])
        assert [(r.metric, r.sampler) for r in rows] == [("cd2", "mc"), ("nbd_flat", "mc"),
                                                         ("nbd_flat", "sobol")]


class TestCsv:
    def test_records_roundtrip(self):
        records = [rec(0.1 + i / 3, i) for i in range(3)]
        text = bm.records_csv(records)
        assert text.startswith("sampler,n_points,n_dims,replicate,metric,value\n")
        assert "\r" not in text
        parsed = list(csv.DictReader(io.StringIO(text)))
        assert [float(p["value"]) for p in parsed] == [r.value for r in records]

    def test_summary_header(self):
        text = bm.summaries_csv(bm.summarize([rec(0.5)]))
        assert text.splitlines()[0] == "metric,sampler,n_points,mean,median,q25,q75,min,max"
