"""How much machine translation survives in a draft, and when to warn.

The measure is token-level: the unmodified ratio of a unit is
``1 - d / max(|A|, |B|)`` where ``A`` and ``B`` are the token lists of the MT
baseline and the current text and ``d`` their Levenshtein distance.  Ratios
near 1 mean the translator kept the raw MT.  Warnings past the configured
thresholds are advisory only; nothing here blocks publishing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .docmodel import RichText
from .drafts import ORIGIN_MT, Draft
from .tokenizer import tokenize

OVERALL = "overall"


@dataclass(frozen=True, slots=True)
class ProvenanceConfig:
    unit_threshold: float = 0.85
    overall_threshold: float = 0.75
    min_unit_tokens: int = 10

    def __post_init__(self):
        if not 0.0 <= self.unit_threshold <= 1.0:
            raise ValueError(f"unit_threshold out of [0,1]: {self.unit_threshold}")
        if not 0.0 <= self.overall_threshold <= 1.0:
            raise ValueError(f"overall_threshold out of [0,1]: {self.overall_threshold}")
        if self.min_unit_tokens < 0:
            raise ValueError("min_unit_tokens must be >= 0")


@dataclass(frozen=True, slots=True)
class ProvenanceWarning:
    subject: str  # a unit's sourceBlockId, or OVERALL
    ratio: float
    threshold: float


@dataclass(frozen=True, slots=True)
class ProvenanceReport:
    per_unit: dict[str, float]
    overall: float
    warnings: tuple[ProvenanceWarning, ...]


def token_edit_distance(a: list[str], b: list[str]) -> int:
    """Levenshtein distance over whole tokens, case-sensitive."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, tok_a in enumerate(a, start=1):
        current = [i]
        for j, tok_b in enumerate(b, start=1):
            cost = 0 if tok_a == tok_b else 1
            current.append(min(previous[j] + 1,
                               current[j - 1] + 1,
                               previous[j - 1] + cost))
        previous = current
    return previous[len(b)]


def _tokens(rt: RichText) -> list[str]:
    return [t.text for t in tokenize(rt.text)]


def unmodified_ratio(baseline: RichText, current: RichText) -> float:
    """Share of the baseline that survives in ``current``, in [0, 1]."""
    a = _tokens(baseline)
    b = _tokens(current)
    if not a and not b:
        return 1.0
    d = token_edit_distance(a, b)
    return 1.0 - d / max(len(a), len(b))


def evaluate_draft(draft: Draft, cfg: ProvenanceConfig | None = None) -> ProvenanceReport:
    """Score every MT-origin unit of ``draft`` and collect threshold warnings.

    Units the translator started from scratch or from the source text never
    contribute.  The overall ratio weights each unit by its baseline token
    count; a draft with no MT content scores 0.0 overall.
    """
    if cfg is None:
        cfg = ProvenanceConfig()
    per_unit: dict[str, float] = {}
    warnings: list[ProvenanceWarning] = []
    weighted_sum = 0.0
    total_weight = 0
    for unit in draft.units:
        if unit.origin != ORIGIN_MT:
            continue
        ratio = unmodified_ratio(unit.mt_baseline, unit.current)
        per_unit[unit.source_block_id] = ratio
        weight = len(_tokens(unit.mt_baseline))
        weighted_sum += ratio * weight
        total_weight += weight
        if ratio >= cfg.unit_threshold and weight >= cfg.min_unit_tokens:
            warnings.append(ProvenanceWarning(
                subject=unit.source_block_id, ratio=ratio,
                threshold=cfg.unit_threshold))
    overall = weighted_sum / total_weight if total_weight else 0.0
    if total_weight and overall >= cfg.overall_threshold:
        warnings.append(ProvenanceWarning(
            subject=OVERALL, ratio=overall, threshold=cfg.overall_threshold))
    return ProvenanceReport(per_unit=per_unit, overall=overall,
                            warnings=tuple(warnings))
