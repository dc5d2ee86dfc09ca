"""Survey-based identification of physically inactive individuals at health risk.

End-to-end pieces: survey scale aggregation, MET-based risk labeling,
one-hot encoding with schema inference, a backpropagation-trained sigmoid
multilayer perceptron, stratified k-fold evaluation, and a seeded synthetic
cohort generator.
"""

__version__ = "0.1.0"

from .cohort import (
    CohortSpec,
    VolumeModel,
    default_spec,
    full_support_spec,
    generate_cohort,
    load_spec,
    save_spec,
)
from .encoding import EncodingSchema, VariableEncoding, encode, infer_schema
from .errors import (
    ActivriskError,
    DimensionMismatch,
    EmptyDataset,
    EmptyEvaluation,
    EmptyScale,
    InvalidAnswer,
    InvalidTopology,
    MalformedRow,
    MissingColumn,
    MissingLabel,
    ModelFormatError,
    TooFewExamples,
    UnknownCategory,
)
from .evaluation import (
    ConfusionCounts,
    EvalReport,
    confusion,
    cross_validate,
    rates,
    stratified_folds,
)
from .network import (
    Network,
    TrainingConfig,
    default_hidden,
    forward,
    gradients,
    init,
    predict,
    train,
)
from .model_io import load_model, save_model
from .risk import classify_activity, weekly_met
from .survey import (
    CATEGORICAL_FIELDS,
    ActivityLog,
    Band,
    Gender,
    HealthRating,
    Major,
    RiskLabel,
    SurveyResponse,
    YesNo,
    aggregate_likert,
    band_of,
    expectations_score,
)

__all__ = [
    "CATEGORICAL_FIELDS",
    "ActivityLog",
    "ActivriskError",
    "Band",
    "CohortSpec",
    "ConfusionCounts",
    "DimensionMismatch",
    "EmptyDataset",
    "EmptyEvaluation",
    "EmptyScale",
    "EncodingSchema",
    "EvalReport",
    "Gender",
    "HealthRating",
    "InvalidAnswer",
    "InvalidTopology",
    "Major",
    "MalformedRow",
    "MissingColumn",
    "MissingLabel",
    "ModelFormatError",
    "Network",
    "RiskLabel",
    "SurveyResponse",
    "TooFewExamples",
    "TrainingConfig",
    "UnknownCategory",
    "VariableEncoding",
    "VolumeModel",
    "YesNo",
    "aggregate_likert",
    "band_of",
    "classify_activity",
    "confusion",
    "cross_validate",
    "default_hidden",
    "default_spec",
    "encode",
    "expectations_score",
    "forward",
    "full_support_spec",
    "generate_cohort",
    "gradients",
    "infer_schema",
    "init",
    "load_model",
    "load_spec",
    "predict",
    "rates",
    "save_model",
    "save_spec",
    "stratified_folds",
    "train",
    "weekly_met",
]
