"""Knowledge-graph comparative reasoning.

Extracts knowledge segments (semantic context subgraphs) for node, edge
and query-graph clues, and infers commonality and inconsistency across
clues with random-walk graph kernels, influence functions and
transferred-information scoring.
"""

from .errors import (EmptySegment, FormatError, InvalidQuery, IoError, KgError,
                     MissingSegment, NoPath, SingularSystem, UnknownEntity,
                     UnknownPredicate)
from .kernel import (InfluenceReport, KernelConfig, KeySets,
                     augment_with_background, influence, kernel_similarity,
                     key_elements)
from .mining import (PredicateSimilarityModel, PredicateStats,
                     compute_cooccurrence, compute_predicate_stats,
                     compute_similarity_model, load_model, mine, save_model)
from .pairwise import (PairwiseVerdict, ReasoningParams, TransferResult,
                       classify_pair, opposite_predicate_check, overlap_rate,
                       reason_pair, transferred_information)
from .collective import (CollectiveVerdict, LineGraphPair, build_line_graphs,
                         collective_influence, reason_collective)
from .ppr import NibbleParams
from .segments import (ExtractionConfig, KnowledgeSegment, PathResult,
                       extract_edge_segment, extract_node_segment,
                       extract_subgraph_segment, segment_to_json)
from .store import (KnowledgeGraph, LoadConfig, QueryEdge, QueryGraph, Triple,
                    load_tsv)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
