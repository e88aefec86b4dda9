from .corpus import BBC_CATEGORIES, NEWSGROUPS_CATEGORIES, PRESETS, Corpus, load_corpus, load_documents
from .metrics import (
    accuracy_within,
    categorization_accuracy,
    competition_rank,
    confidence_interval,
    macro_f1,
    mae,
    mse,
)
from .report import MetricsReport, ScenarioResult, rank_scenarios, render_table
from .runner import ExperimentConfig, derive_seed, run_experiment, run_sweep
