import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from varlen_tsc import Dataset, TimeSeries, write_ucr_dataset

# first numba call in a process can take seconds; wall-clock deadlines
# would flake on whichever example hits the compile
settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def small_dataset(name="toy", length=16, n_train=6, n_test=4, seed=0) -> Dataset:
    """Equal-length two-class set with a visible class difference."""
    rng = np.random.default_rng(seed)
    t = np.linspace(0.0, 1.0, length)

    def make(count, split):
        out = []
        for i in range(count):
            label = str(i % 2 + 1)
            base = np.sin(2 * np.pi * (1.0 if label == "1" else 3.0) * t)
            out.append(TimeSeries(base + 0.05 * rng.standard_normal(length), label))
        return out

    return Dataset(name, make(n_train, 0), make(n_test, 1))


@pytest.fixture
def archive(tmp_path):
    """Directory with one small dataset written in archive layout."""
    ds = small_dataset("Toy")
    train = tmp_path / "Toy" / "Toy_TRAIN.tsv"
    test = tmp_path / "Toy" / "Toy_TEST.tsv"
    write_ucr_dataset(ds, train, test)
    return tmp_path
