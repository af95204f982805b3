"""A self-hostable computer-assisted translation engine.

Structured documents come in as restricted HTML, are segmented into
sentences, machine-translated block by block with markup carried across,
link-adapted through an interlanguage entity map, autosaved as revisioned
drafts, and published with a report of how much raw MT survived.
"""

from .docmodel import (AnnotatedDoc, Block, Emphasis, Link, Opaque,
                       ParseError, RichText, Span, Strong, block_id,
                       parse_document, serialize_block, serialize_document)
from .drafts import (Draft, DraftNotFoundError, DraftStore,
                     DraftValidationError, RevisionConflictError,
                     TranslationUnit)
from .entity_map import (EntityMap, LinkAdaptation, Verdict, adapt_categories,
                         adapt_link, adapt_links_in_doc, load_entity_map)
from .matcher import DEFAULT_THRESHOLD, locate_subsegment
from .providers import (DictionaryProvider, IdentityProvider, MtProvider,
                        ProviderRegistry, RemoteProvider, ReverseProvider,
                        UppercaseProvider)
from .provenance import (ProvenanceConfig, ProvenanceReport, evaluate_draft,
                         token_edit_distance, unmodified_ratio)
from .segmenter import SentenceRange, segment_sentences, sentence_correspondence
from .telemetry import Event, EventLog, deletion_ratio, pair_counts
from .transfer import AdaptResult, adapt_rich

__all__ = [
    "AnnotatedDoc", "Block", "Emphasis", "Link", "Opaque", "ParseError",
    "RichText", "Span", "Strong", "block_id", "parse_document",
    "serialize_block", "serialize_document",
    "Draft", "DraftNotFoundError", "DraftStore", "DraftValidationError",
    "RevisionConflictError", "TranslationUnit",
    "EntityMap", "LinkAdaptation", "Verdict", "adapt_categories",
    "adapt_link", "adapt_links_in_doc", "load_entity_map",
    "DEFAULT_THRESHOLD", "locate_subsegment",
    "DictionaryProvider", "IdentityProvider", "MtProvider",
    "ProviderRegistry", "RemoteProvider", "ReverseProvider",
    "UppercaseProvider",
    "ProvenanceConfig", "ProvenanceReport", "evaluate_draft",
    "token_edit_distance", "unmodified_ratio",
    "SentenceRange", "segment_sentences", "sentence_correspondence",
    "Event", "EventLog", "deletion_ratio", "pair_counts",
    "AdaptResult", "adapt_rich",
]
