import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from varlen_tsc.ranking import (
    AccuracyTable,
    RankTable,
    average_ranks,
    critical_difference,
    friedman_statistic,
    group_cliques,
    nemenyi_report,
    rank_table_to_csv,
    rank_within_dataset,
)


def table(cells, columns=None):
    cells = np.asarray(cells, dtype=np.float64)
    cols = columns or tuple(f"c{j}" for j in range(cells.shape[1]))
    ds = tuple(f"d{i}" for i in range(cells.shape[0]))
    return AccuracyTable(ds, tuple(cols), cells)


class TestCriticalDifference:
    # published reference points for the alpha=0.05 Nemenyi statistic
    @pytest.mark.parametrize(
        "k,n,expected",
        [
            (28, 85, 4.6864),
            (5, 85, 0.6616),
            (7, 85, 0.9769),
            (28, 11, 13.0271),
        ],
    )
    def test_reference_values(self, k, n, expected):
        assert critical_difference(k, n) == pytest.approx(expected, abs=0.005)

    def test_formula_shape(self):
        # cd = q_k * sqrt(k(k+1) / 6n)
        cd = critical_difference(2, 6)
        assert cd == pytest.approx(1.959964 * math.sqrt(2 * 3 / 36.0), abs=1e-9)

    def test_only_tabulated_alpha(self):
        with pytest.raises(ValueError):
            critical_difference(5, 10, alpha=0.01)

    @pytest.mark.parametrize("k", [1, 31])
    def test_k_range(self, k):
        with pytest.raises(ValueError):
            critical_difference(k, 10)

    def test_n_positive(self):
        with pytest.raises(ValueError):
            critical_difference(5, 0)

    @given(st.integers(2, 29), st.integers(1, 200))
    def test_monotone_in_k_and_n(self, k, n):
        assert critical_difference(k + 1, n) > critical_difference(k, n)
        assert critical_difference(k, n + 1) < critical_difference(k, n)


class TestRankWithinDataset:
    def test_highest_accuracy_gets_rank_one(self):
        out = rank_within_dataset([("a", 0.7), ("b", 0.9), ("c", 0.5)])
        assert out == [("a", 2.0), ("b", 1.0), ("c", 3.0)]

    def test_ties_share_average_rank(self):
        out = rank_within_dataset([("a", 0.9), ("b", 0.8), ("c", 0.9)])
        assert out == [("a", 1.5), ("b", 3.0), ("c", 1.5)]

    def test_absent_columns_skipped(self):
        out = rank_within_dataset([("a", 0.9), ("b", None), ("c", 0.5)])
        assert out == [("a", 1.0), ("c", 2.0)]

    def test_needs_two_present(self):
        with pytest.raises(ValueError):
            rank_within_dataset([("a", 0.9), ("b", None)])

    @given(
        st.lists(
            st.floats(0.0, 1.0, allow_nan=False, width=64), min_size=2, max_size=9
        )
    )
    def test_rank_sum_invariant(self, accs):
        out = rank_within_dataset([(f"c{i}", a) for i, a in enumerate(accs)])
        k = len(accs)
        assert sum(r for _, r in out) == pytest.approx(k * (k + 1) / 2)


class TestAccuracyTable:
    def test_validates_range(self):
        with pytest.raises(ValueError):
            table([[0.5, 1.5]])

    def test_requires_two_present_per_row(self):
        with pytest.raises(ValueError):
            table([[0.5, float("nan")]])

    def test_shape_must_match(self):
        with pytest.raises(ValueError):
            AccuracyTable(("d0",), ("a", "b"), np.array([[0.1, 0.2, 0.3]]))


class TestAverageRanks:
    def test_simple_table(self):
        rt = average_ranks(table([[0.9, 0.8], [0.7, 0.8]]))
        np.testing.assert_allclose(rt.average_rank, [1.5, 1.5])
        np.testing.assert_array_equal(rt.effective_n, [2, 2])

    def test_absent_cells_shrink_effective_n(self):
        rt = average_ranks(
            table([[0.9, 0.8, 0.1], [0.7, 0.8, float("nan")], [0.2, 0.4, 0.6]])
        )
        assert list(rt.effective_n) == [3, 3, 2]
        # the missing cell is ranked among present columns only
        np.testing.assert_allclose(rt.ranks[1], [2.0, 1.0, np.nan])

    def test_never_present_column_rejected(self):
        cells = np.array([[0.9, 0.8, np.nan], [0.7, 0.8, np.nan]])
        with pytest.raises(ValueError, match="never present"):
            average_ranks(AccuracyTable(("d0", "d1"), ("a", "b", "c"), cells))

    @given(st.integers(2, 6), st.integers(1, 8), st.integers(0, 10_000))
    def test_row_rank_sums(self, k, n, seed):
        rng = np.random.default_rng(seed)
        rt = average_ranks(table(rng.uniform(size=(n, k))))
        for row in rt.ranks:
            assert row.sum() == pytest.approx(k * (k + 1) / 2)

    def test_rank_order_invariant_under_monotone_shift(self):
        cells = np.array([[0.31, 0.62, 0.93], [0.15, 0.26, 0.87]])
        a = average_ranks(table(cells))
        b = average_ranks(table(cells / 2.0 + 0.05))
        np.testing.assert_array_equal(a.ranks, b.ranks)


class TestGroupCliques:
    def rt(self, avgs):
        k = len(avgs)
        return RankTable(
            ("d0",),
            tuple(f"c{j}" for j in range(k)),
            np.asarray([avgs], dtype=np.float64),
            np.asarray(avgs, dtype=np.float64),
            np.ones(k, dtype=np.intp),
        )

    def test_split_into_two_groups(self):
        groups = group_cliques(self.rt([1.0, 1.5, 3.0]), cd=1.0)
        assert groups == (("c0", "c1"), ("c2",))

    def test_subsumed_groups_dropped(self):
        groups = group_cliques(self.rt([1.0, 1.2, 1.4]), cd=0.5)
        assert groups == (("c0", "c1", "c2"),)

    def test_overlapping_groups_kept(self):
        groups = group_cliques(self.rt([1.0, 1.4, 1.9]), cd=0.6)
        assert groups == (("c0", "c1"), ("c1", "c2"))

    def test_spread_comparison_is_strict(self):
        groups = group_cliques(self.rt([1.0, 2.0]), cd=1.0)
        assert groups == (("c0",), ("c1",))

    @given(
        st.lists(st.floats(1.0, 9.0, allow_nan=False, width=64), min_size=2, max_size=8),
        st.floats(0.01, 5.0, allow_nan=False),
    )
    def test_every_column_covered_and_nothing_subsumed(self, avgs, cd):
        groups = group_cliques(self.rt(avgs), cd)
        members = {c for g in groups for c in g}
        assert members == {f"c{j}" for j in range(len(avgs))}
        sets = [set(g) for g in groups]
        for i, g in enumerate(sets):
            assert not any(g < h for j, h in enumerate(sets) if i != j)


class TestReports:
    def test_nemenyi_report_bundles_pieces(self):
        rt, cd = nemenyi_report(table([[0.9, 0.2], [0.8, 0.3]]))
        assert cd.alpha == 0.05
        assert cd.cd == pytest.approx(critical_difference(2, 2))
        assert cd.groups == group_cliques(rt, cd.cd)

    def test_friedman_matches_scipy_on_complete_table(self):
        rng = np.random.default_rng(0)
        cells = rng.uniform(size=(6, 4))
        stat, p = friedman_statistic(table(cells))
        want = stats.friedmanchisquare(*(cells[:, j] for j in range(4)))
        assert stat == pytest.approx(want.statistic)
        assert p == pytest.approx(want.pvalue)

    def test_friedman_skips_incomplete_rows(self):
        cells = np.array(
            [[0.1, 0.2, 0.3], [0.4, 0.5, 0.6], [0.7, 0.8, 0.9], [0.2, np.nan, 0.4]]
        )
        full = friedman_statistic(table(cells[:3]))
        mixed = friedman_statistic(
            AccuracyTable(("a", "b", "c", "d"), ("x", "y", "z"), cells)
        )
        assert mixed == pytest.approx(full)

    def test_friedman_undefined_cases_are_nan(self):
        assert all(math.isnan(v) for v in friedman_statistic(table([[0.1, 0.2]])))

    def test_csv_format(self):
        rt = average_ranks(table([[0.9, 0.8], [0.7, 0.8]], columns=("bbb", "aaa")))
        text = rank_table_to_csv(rt)
        lines = text.splitlines()
        assert lines[0] == "column,avg_rank,effective_n"
        # equal average ranks sort by column name
        assert lines[1].startswith("aaa,1.500000,2")
        assert lines[2].startswith("bbb,1.500000,2")
