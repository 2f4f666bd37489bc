import json
import math

import numpy as np
import pytest

from varlen_tsc import Dataset, TimeSeries
from varlen_tsc.boss import (
    BossHistogram,
    SfaConfig,
    boss_distance,
    boss_fit,
    boss_model_from_dict,
    boss_model_to_dict,
    boss_predict,
    fit_mcb_bins,
    sfa_transform,
    window_dft,
)


def ts(values, label="a"):
    return TimeSeries(np.asarray(values, dtype=np.float64), label)


def constant_level_dataset(length=12, per_class=4):
    """Two classes that differ only in their constant level."""
    train = [ts([0.0] * length, "lo") for _ in range(per_class)]
    train += [ts([5.0] * length, "hi") for _ in range(per_class)]
    test = [ts([0.0] * length, "lo"), ts([5.0] * length, "hi")]
    return Dataset("levels", train, test)


def sine_dataset(length=40, per_class=4):
    t = np.linspace(0.0, 1.0, length)
    train = [ts(np.sin(2 * np.pi * f * t), str(f)) for f in (1, 3) for _ in range(per_class)]
    test = [ts(np.sin(2 * np.pi * f * t), str(f)) for f in (1, 3)]
    return Dataset("sines", train, test)


class TestConfig:
    def test_rejects_odd_word_length(self):
        with pytest.raises(ValueError):
            SfaConfig(word_length_candidates=(3,))

    def test_rejects_bad_alphabet(self):
        with pytest.raises(ValueError):
            SfaConfig(alphabet_size=1)
        with pytest.raises(ValueError):
            SfaConfig(alphabet_size=27)

    def test_rejects_bad_retention(self):
        with pytest.raises(ValueError):
            SfaConfig(ensemble_retention_factor=0.0)

    def test_histogram_counts_positive(self):
        with pytest.raises(ValueError):
            BossHistogram({"aa": 0})


class TestWindowDft:
    def test_matches_explicit_transform(self):
        v = [1.0, 2.0, 3.0, 4.0]
        w = 4
        std = float(np.std(v))

        def coeff(k):
            return sum(
                v[t] * complex(math.cos(-2 * math.pi * k * t / w),
                               math.sin(-2 * math.pi * k * t / w))
                for t in range(w)
            )

        rows = window_dft(ts(v), window=4, word_len=2, norm_mean=False)
        c0 = coeff(0)
        np.testing.assert_allclose(rows, [[c0.real / std, c0.imag / std]], atol=1e-12)

        rows = window_dft(ts(v), window=4, word_len=2, norm_mean=True)
        c1 = coeff(1)
        np.testing.assert_allclose(rows, [[c1.real / std, c1.imag / std]], atol=1e-12)

    def test_one_row_per_window(self):
        rows = window_dft(ts(np.arange(10.0)), window=4, word_len=4, norm_mean=False)
        assert rows.shape == (7, 4)

    def test_constant_window_left_unscaled(self):
        rows = window_dft(ts([2.0, 2.0, 2.0]), window=3, word_len=2, norm_mean=False)
        # DC of an unscaled constant window is the plain sum
        np.testing.assert_allclose(rows, [[6.0, 0.0]])

    def test_window_longer_than_series_rejected(self):
        with pytest.raises(ValueError):
            window_dft(ts([1.0, 2.0]), window=3, word_len=2, norm_mean=False)

    def test_odd_word_len_rejected(self):
        with pytest.raises(ValueError):
            window_dft(ts(np.arange(8.0)), window=4, word_len=3, norm_mean=False)

    def test_word_len_exceeding_spectrum_rejected(self):
        with pytest.raises(ValueError):
            window_dft(ts(np.arange(8.0)), window=4, word_len=8, norm_mean=False)


class TestQuantization:
    def test_equi_depth_bins(self):
        rows = np.array([[0.0], [1.0], [2.0], [3.0]])
        np.testing.assert_allclose(fit_mcb_bins(rows, 4), [[0.75, 1.5, 2.25]])

    def test_boundary_value_goes_to_upper_symbol(self):
        bins = np.array([[0.75, 1.5, 2.25]])
        hist = sfa_transform(ts([0.75]), window=1, word_len=2, bins=np.array([[0.75, 1.5, 2.25], [0.0, 0.0, 0.0]]), norm_mean=False)
        # single constant window, unscaled DC = 0.75 sits on the first breakpoint
        (word,) = hist.counts
        assert word[0] == "b"

    def test_numerosity_reduction_collapses_runs(self):
        # every window of a ramp has the same shape, hence the same word
        hist = sfa_transform(
            ts(np.arange(10.0)),
            window=4,
            word_len=2,
            bins=np.array([[0.0], [0.0]]),
            norm_mean=True,
        )
        assert sum(hist.counts.values()) == 1


class TestBossDistance:
    def test_asymmetric_known_values(self):
        a = BossHistogram({"aa": 2, "ab": 1})
        b = BossHistogram({"aa": 1})
        assert boss_distance(a, b) == 2.0
        assert boss_distance(b, a) == 1.0

    def test_identical_histograms(self):
        a = BossHistogram({"aa": 3, "bb": 1})
        assert boss_distance(a, a) == 0.0


class TestFit:
    def test_level_difference_is_learnable(self):
        """Constant-level classes are separable only if some member keeps the mean."""
        model = boss_fit(constant_level_dataset())
        assert model.best_loo == 1.0
        unnormalized = [m for m in model.members if not m.norm_mean]
        assert unnormalized and all(m.loo_accuracy == 1.0 for m in unnormalized)
        d = constant_level_dataset()
        assert [boss_predict(model, s) for s in d.test] == ["lo", "hi"]

    def test_shape_difference_is_learnable(self):
        d = sine_dataset()
        model = boss_fit(d)
        assert model.best_loo == 1.0
        assert [boss_predict(model, s) for s in d.test] == ["1", "3"]

    def test_retention_band(self):
        model = boss_fit(sine_dataset())
        cutoff = 0.92 * model.best_loo
        assert all(m.loo_accuracy >= cutoff for m in model.members)

    def test_short_series_use_fallback_word_length(self):
        train = [ts([0.0, 1.0, 0.0, 1.0, 0.0], "a"), ts([0.0, 3.0, 9.0, 3.0, 0.0], "b")]
        model = boss_fit(train)
        assert all(m.window == 5 and m.word_len == 4 for m in model.members)

    def test_accepts_bare_list_and_dataset(self):
        d = constant_level_dataset()
        from_list = boss_fit(list(d.train))
        from_dataset = boss_fit(d)
        assert boss_model_to_dict(from_list) == boss_model_to_dict(from_dataset)

    def test_deterministic(self):
        a = boss_fit(sine_dataset())
        b = boss_fit(sine_dataset())
        assert boss_model_to_dict(a) == boss_model_to_dict(b)

    def test_rejects_unequal_lengths(self):
        with pytest.raises(ValueError, match="length"):
            boss_fit([ts([1.0, 2.0], "a"), ts([1.0, 2.0, 3.0], "b")])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            boss_fit([])


class TestPredict:
    def test_query_shorter_than_every_window_raises(self):
        model = boss_fit(constant_level_dataset(length=12))
        with pytest.raises(ValueError, match="shorter"):
            boss_predict(model, ts([1.0, 2.0, 3.0]))

    def test_longer_query_still_votes(self):
        model = boss_fit(constant_level_dataset(length=12))
        assert boss_predict(model, ts([5.0] * 30)) == "hi"

    def test_spectral_members_ignore_offset_and_scale(self):
        d = sine_dataset()
        model = boss_fit(d)
        member = next(m for m in model.members if m.norm_mean)
        # query off the training manifold so no coefficient sits on a bin edge
        rng = np.random.default_rng(0)
        s = d.test[0].with_values(d.test[0].values + 0.01 * rng.standard_normal(len(d.test[0])))
        base = sfa_transform(s, member.window, member.word_len, member.bins, member.norm_mean)
        moved = sfa_transform(
            s.with_values(3.0 * s.values + 7.0),
            member.window, member.word_len, member.bins, member.norm_mean,
        )
        assert base.counts == moved.counts


class TestSerialization:
    def test_round_trip_predictions(self):
        d = sine_dataset()
        model = boss_fit(d)
        doc = json.loads(json.dumps(boss_model_to_dict(model)))
        clone = boss_model_from_dict(doc)
        for s in d.test:
            assert boss_predict(clone, s) == boss_predict(model, s)

    def test_round_trip_is_lossless(self):
        model = boss_fit(constant_level_dataset())
        doc = boss_model_to_dict(model)
        assert boss_model_to_dict(boss_model_from_dict(doc)) == doc
