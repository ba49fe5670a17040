"""Questionnaire acceleration with attribute-ordering trees.

The package learns, from completed questionnaires, which attribute ranks
highest as a predictor of the rest, asks that one first in a live
interview, and fills in the remaining answers whenever the stored
conditional confidence clears a threshold.  Accuracy and saved-question
rates quantify the trade-off against full interviews.
"""

from .dataset import (
    Attribute,
    ColumnSpec,
    DataError,
    Dataset,
    RawTable,
    encode_with_schema,
    load_csv,
    preprocess,
    schema_digest,
)
from .influence import (
    ConditionalDistribution,
    InfluenceTable,
    OpCounter,
    attribute_pair_influence,
    attribute_total_influence,
    best_split,
    conditional_confidence,
    value_influence,
)
from .model import Branch, BuildConfig, FpqmModel, FpqmNode, build, deserialize, serialize
from .session import (
    Ask,
    Finished,
    Predicted,
    Session,
    SessionResult,
    record_verification,
    run_batch,
    start,
)
from .metrics import EvaluationReport, evaluate, per_respondent_series, report_json, series_csv
from .baseline import BaselineForest, ClassTree, build_forest, simulate_assessment
from .bench import ComparisonReport, ScalingReport, SynthSpec, compare_methods, scaling_run, synth_generate

__version__ = "0.1.0"
