"""Exact ranks of weighted digraphs via block decomposition.

The adjacency rank of a digraph with rational arc weights is computed two
independent ways: dense fraction-free elimination (the oracle) and a
recursive engine that splits the graph at cut-vertices, classifies each
border by the 0/1/2 rank-increment trichotomy, and applies closed-form
rules for trees, r2/r0 block structures and the simple-graph families.
The engine emits a certificate recording every rule application.
"""

from .blocks import BlockDecomposition, block_subdigraph, breve, decompose
from .classify import (
    Classification,
    CutSplit,
    CutVertexCase,
    classify_bordered,
    classify_cut,
    make_split,
    side_components,
)
from .digraph import (
    EdgeKind,
    WeightedDigraph,
    build,
    format_digraph,
    parse_digraph,
)
from .engine import (
    CertNode,
    DigraphAttachment,
    EdgeAddition,
    RankCertificate,
    RuleTag,
    apply_additions,
    build_genr2,
    check_lemma_2rin,
    is_r0_biblock_graph,
    is_r0_block,
    is_r0_digraph,
    is_r2_biblock_graph,
    is_r2_block,
    is_r2_block_graph,
    is_r2_digraph,
    loop_invariance_check,
    oracle_rank,
    rank_case1_peel,
    rank_case2_peel,
    rank_case3_peel,
    rank_delta_cr2,
    rank_genr2,
    rank_mdt,
    rank_r0_biblock_graph,
    rank_r0_digraph,
    rank_r2_biblock_graph,
    rank_r2_block_graph,
    rank_r2_digraph,
    rank_recursive,
    render_certificate,
)
from .errors import (
    DigraphError,
    DimensionMismatch,
    DuplicateArc,
    InconsistentClassification,
    IndexOutOfRange,
    InternalMismatch,
    InvalidSpec,
    InvalidSplit,
    NotAForest,
    ParseError,
    PreconditionViolated,
    UnknownSuite,
    VertexOutOfRange,
    ZeroWeight,
)
from .generate import (
    DEFAULT_POOL,
    FAMILIES,
    GenSpec,
    extend_to_r2,
    gen,
    random_digraph,
)
from .linalg import (
    RankResult,
    RationalMatrix,
    bordered,
    dot,
    in_column_space,
    in_row_space,
    rank,
    vector,
)
from .trees import (
    MatchingResult,
    TreeKind,
    classify_tree,
    count_loop_attachments,
    is_forest,
    is_r2_tree_digraph,
    is_tree,
    max_matching,
    rank_r2_tree,
    rank_tree,
    tree_summary,
)
from .verify import SUITE_DEFAULTS, SuiteReport, run_suite, suite_names

__version__ = "0.1.0"
