"""Agent/Event/Target triples from dependency parses, and the networks built on them."""

from .analytics import (
    emotion_zscores,
    join_norms,
    kendall_tau_shared,
    merge_svo_tables,
    node_metrics,
    normalized_edge_weights,
    prominence,
    relative_degree,
)
from .benchmark import evaluate_passive, evaluate_roles, load_gold
from .conllu import Corpus, Label, ParseError, apply_schema, parse_conllu, read_conllu, write_conllu
from .extract import NONE, SvoRecord, extract_baseline, extract_svos, read_svo_csv, write_svo_csv
from .graph import TeaGraph, build_graph, export_graph, filter_records
from .lexicons import default_valence, load_emotions, load_norms, load_synonyms, load_valence
from .stats import kendall_tau_b, rank_sum_test

__version__ = "0.1.0"

__all__ = [
    "NONE",
    "Corpus",
    "Label",
    "ParseError",
    "SvoRecord",
    "TeaGraph",
    "apply_schema",
    "build_graph",
    "default_valence",
    "emotion_zscores",
    "evaluate_passive",
    "evaluate_roles",
    "export_graph",
    "extract_baseline",
    "extract_svos",
    "filter_records",
    "join_norms",
    "kendall_tau_b",
    "kendall_tau_shared",
    "load_emotions",
    "load_gold",
    "load_norms",
    "load_synonyms",
    "load_valence",
    "merge_svo_tables",
    "node_metrics",
    "normalized_edge_weights",
    "parse_conllu",
    "prominence",
    "rank_sum_test",
    "read_conllu",
    "read_svo_csv",
    "relative_degree",
    "write_conllu",
    "write_svo_csv",
]
