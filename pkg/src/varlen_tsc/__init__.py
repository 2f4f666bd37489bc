"""Benchmark toolkit for classifying variable-length time series.

The pipeline: length-variation mechanisms corrupt equal-length datasets,
preprocessors equalize (or not), and a pool of distance-based and ensemble
classifiers is scored over the cross-product; results aggregate into
average ranks with Nemenyi critical-difference analysis.
"""

from .series import (
    Dataset,
    TimeSeries,
    as_values,
    resample_linear,
    sample_at_interval,
    z_normalize,
)
from .generators import (
    GeneratorConfig,
    Mechanism,
    apply_mechanism,
    gen_nonuniform_sampling,
    gen_prefix,
    gen_subsequence,
    gen_suffix,
    gen_uniform_sampling,
    modify_dataset,
)
from .preprocessing import (
    Preprocessor,
    PreprocessorKind,
    apply_preprocessor,
    apply_to_series,
)
from .distances import (
    DistanceMeasure,
    dist_dtw_full,
    dist_ed_truncate,
    dist_sbd,
    dist_ssd,
    dist_us,
    distance,
)
from .neighbors import NnModel, dataset_accuracy, evaluate_accuracy, nn_classify
from .boss import BossModel, SfaConfig, boss_distance, boss_fit, boss_predict
from .proximity import PfConfig, PfModel, pf_fit, pf_predict
from .ranking import (
    AccuracyTable,
    CdResult,
    RankTable,
    average_ranks,
    critical_difference,
    group_cliques,
    nemenyi_report,
)
from .cd_diagram import cd_diagram_svg, cd_diagram_text, render_cd_diagram
from .ucr_io import load_ucr_dataset, write_ucr_dataset
from .experiment import (
    ClassifierKind,
    ExperimentConfig,
    ResultRecord,
    applicable,
    applicable_pairs,
    derive_seed,
    load_records,
    report,
    run_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "Dataset", "TimeSeries", "as_values", "resample_linear",
    "sample_at_interval", "z_normalize",
    "GeneratorConfig", "Mechanism", "apply_mechanism", "modify_dataset",
    "gen_uniform_sampling", "gen_nonuniform_sampling", "gen_prefix",
    "gen_suffix", "gen_subsequence",
    "Preprocessor", "PreprocessorKind", "apply_preprocessor", "apply_to_series",
    "DistanceMeasure", "distance", "dist_ed_truncate", "dist_dtw_full",
    "dist_ssd", "dist_us", "dist_sbd",
    "NnModel", "nn_classify", "evaluate_accuracy", "dataset_accuracy",
    "SfaConfig", "BossModel", "boss_distance", "boss_fit", "boss_predict",
    "PfConfig", "PfModel", "pf_fit", "pf_predict",
    "AccuracyTable", "RankTable", "CdResult", "average_ranks",
    "critical_difference", "group_cliques", "nemenyi_report",
    "cd_diagram_svg", "cd_diagram_text", "render_cd_diagram",
    "load_ucr_dataset", "write_ucr_dataset",
    "ClassifierKind", "ExperimentConfig", "ResultRecord", "applicable",
    "applicable_pairs", "derive_seed", "load_records", "run_experiment", "report",
    "__version__",
]
