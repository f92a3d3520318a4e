"""Java source parsing and static metric extraction."""

from .corpus import (
    ClassEntry,
    CorpusIndex,
    CyclicHierarchy,
    DuplicateClass,
    build_corpus_index,
)
from .extract import (
    NoClassesFound,
    PairingError,
    ParsedCorpus,
    compute_cohesion_metrics,
    compute_complexity_metrics,
    compute_code_metrics,
    compute_coupling_metrics,
    compute_encapsulation_metrics,
    compute_inheritance_metrics,
    compute_size_metrics,
    compute_test_effort_metrics,
    cyclomatic_complexity,
    extract_records,
    find_java_files,
    pair_classes,
    parse_corpus,
    read_pairing_file,
)
from .lexer import ParseError
from .parser import parse_source
from .tree import SyntaxTree, TypeDecl

__all__ = [
    "ClassEntry",
    "CorpusIndex",
    "CyclicHierarchy",
    "DuplicateClass",
    "NoClassesFound",
    "PairingError",
    "ParseError",
    "ParsedCorpus",
    "SyntaxTree",
    "TypeDecl",
    "build_corpus_index",
    "compute_cohesion_metrics",
    "compute_code_metrics",
    "compute_complexity_metrics",
    "compute_coupling_metrics",
    "compute_encapsulation_metrics",
    "compute_inheritance_metrics",
    "compute_size_metrics",
    "compute_test_effort_metrics",
    "cyclomatic_complexity",
    "extract_records",
    "find_java_files",
    "pair_classes",
    "parse_corpus",
    "parse_source",
    "read_pairing_file",
]
