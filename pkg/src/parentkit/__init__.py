"""PARENT and BLEU scoring for data-to-text generation, plus progressive-edit dataset tooling."""
__version__ = "0.1.0"

from .bleu import BleuScore, corpus_bleu
from .parent import (
    CorpusScore,
    Instance,
    ParentScore,
    entailment_prob,
    lambda_for,
    parent_corpus,
    parent_instance,
    precision_n,
    reference_recall,
    table_recall,
)
from .proedit import (
    build_stage_dataset,
    extract_parts,
    make_repeated_target,
    make_stage_target,
    should_continue,
)
from .splitrules import SplitOutput, split_output
from .table import Table, TableRecord, parse_linearized_table, table_token_set
from .textcore import geometric_mean, lcs_length, ngrams, tokenize

__all__ = [
    "BleuScore", "CorpusScore", "Instance", "ParentScore", "SplitOutput", "Table", "TableRecord",
    "build_stage_dataset", "corpus_bleu", "entailment_prob", "extract_parts", "geometric_mean",
    "lambda_for", "lcs_length", "make_repeated_target", "make_stage_target", "ngrams",
    "parent_corpus", "parent_instance", "parse_linearized_table", "precision_n",
    "reference_recall", "should_continue", "split_output", "table_recall", "table_token_set",
    "tokenize",
]
