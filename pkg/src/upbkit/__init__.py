"""Symbolic tools for unextendible product bases of qubits."""

from .catalog import builtin, gen_odd_q, known_sizes, min_upb_size
from .errors import UpbError
from .extension import ExtensionWitness, find_extension, is_upb, lemma3_audit, naive_extension_oracle
from .graphs import build_graph, canonical_label, is_complete_single_pair, iso_classes, subgraph_embeds
from .locc import audit_all_pairs, bipartition_report, reducible_on
from .orbits import column_signature, orbits
from .uom import Uom, VectorVar, column_stats, pair_bound_holds, parse_uom, serialize_uom

__all__ = [
    "ExtensionWitness", "UpbError", "Uom", "VectorVar", "audit_all_pairs", "bipartition_report",
    "build_graph", "builtin", "canonical_label", "column_signature", "column_stats", "find_extension",
    "gen_odd_q", "is_complete_single_pair", "is_upb", "iso_classes", "known_sizes", "lemma3_audit",
    "min_upb_size", "naive_extension_oracle", "orbits", "pair_bound_holds", "parse_uom",
    "reducible_on", "serialize_uom", "subgraph_embeds",
]
