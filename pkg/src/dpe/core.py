"""Causal direction scoring from flip dictionaries and pattern entropy.

The pipeline for one direction (cause -> effect):

1. scan the effect for flips (positions whose symbol differs from the
   previous one) and cut the cause into the segments ending at each flip;
2. slide every pair of distinct segments over each other and harvest the
   maximal runs of positionwise agreement (length >= 2) as candidate
   patterns;
3. for each pattern, count all (overlapping) occurrences in the cause and
   check whether the aligned effect window contains a flip;
4. score each pattern with frequency-weighted binary entropy of its flip
   ratio and average over the pattern set.

The direction with the lower average weighted entropy is declared causal;
flip ratios of exactly 0 or 1 mark deterministic patterns.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InputError
from .seqcore import Direction, SymbolSequence

#: Average weighted entropies closer than this are treated as equal.
VERDICT_TOLERANCE = 1e-12

#: Dictionary segments and extracted patterns are never shorter than this.
MIN_PATTERN_LEN = 2

#: Below this problem size the plain-Python run scan beats numpy call overhead.
_SMALL_PAIR_OPS = 192

LABEL_XY = "X->Y"
LABEL_YX = "Y->X"


@dataclass(frozen=True)
class FlipDictionary:
    """Segments of the source sequence ending at flips of the target."""

    direction: str
    segments: tuple[SymbolSequence, ...]  # deduplicated, first-insertion order


@dataclass(frozen=True)
class PatternSet:
    """Common subpatterns shared by at least two dictionary segments."""

    direction: str
    patterns: tuple[SymbolSequence, ...]  # deduplicated, first-extraction order


@dataclass(frozen=True)
class PatternScore:
    pattern: SymbolSequence
    n_change: int
    n_nochange: int
    r_flip: float
    weight: float
    h_binary: float
    h_weighted: float

    @property
    def n_occurrences(self) -> int:
        return self.n_change + self.n_nochange

    @property
    def deterministic(self) -> bool:
        return self.n_change == 0 or self.n_nochange == 0


@dataclass(frozen=True)
class DirectionalScore:
    """All pattern scores for one direction plus their average weighted entropy.

    ``h_bar`` is None when the pattern set is empty (no evidence); such a
    direction compares as +infinity against any finite value.
    """

    direction: str
    pattern_scores: tuple[PatternScore, ...]
    h_bar: float | None

    @property
    def has_evidence(self) -> bool:
        return self.h_bar is not None

    @property
    def effective_h_bar(self) -> float:
        return math.inf if self.h_bar is None else self.h_bar


@dataclass(frozen=True)
class AttributedPattern:
    score: PatternScore
    role: str | None  # "trigger" (r=1), "preserver" (r=0), or None


@dataclass(frozen=True)
class CausalReport:
    score_xy: DirectionalScore
    score_yx: DirectionalScore
    verdict: Direction
    strength: float
    deterministic_patterns: tuple[AttributedPattern, ...]


def find_flip_positions(s: SymbolSequence) -> tuple[int, ...]:
    """1-based positions k >= 2 where the symbol differs from its predecessor."""
    if len(s) < 2:
        raise ValueError("flip scan needs length >= 2")
    arr = np.frombuffer(s.data, dtype=np.uint8)
    return tuple(int(k) for k in np.nonzero(arr[1:] != arr[:-1])[0] + 2)


def _segment_spans(target_data: bytes) -> list[tuple[int, int]]:
    """0-based [start, stop) spans of the source cut at flips of the target.

    A flip whose segment would have length 1 is skipped without advancing the
    start index; this keeps every segment at length >= 2 and makes consecutive
    extracted segments cover disjoint ranges.
    """
    spans: list[tuple[int, int]] = []
    start = 0  # 0-based start of the pending segment
    prev = target_data[0]
    for k in range(1, len(target_data)):
        cur = target_data[k]
        if cur != prev:
            if k + 1 - start >= MIN_PATTERN_LEN:
                spans.append((start, k + 1))
                start = k + 1
        prev = cur
    return spans


def build_flip_dictionary(
    source: SymbolSequence, target: SymbolSequence, direction: str = LABEL_XY
) -> FlipDictionary:
    """Collect deduplicated source segments ending at each flip of the target."""
    if len(source) != len(target):
        raise ValueError("source and target must have equal length")
    if len(source) < 2:
        raise ValueError("dictionary construction needs length >= 2")
    seen: set[bytes] = set()
    segments: list[SymbolSequence] = []
    for start, stop in _segment_spans(target.data):
        frag = source.data[start:stop]
        if frag not in seen:
            seen.add(frag)
            segments.append(source.fragment(start, stop))
    return FlipDictionary(direction, tuple(segments))


def _common_runs_small(b1: bytes, b2: bytes, out: list[bytes]) -> None:
    n1, n2 = len(b1), len(b2)
    for d in range(n2 - n1 + 1):
        run = 0
        for t in range(n1):
            if b1[t] == b2[d + t]:
                run += 1
            else:
                if run >= MIN_PATTERN_LEN:
                    out.append(b2[d + t - run : d + t])
                run = 0
        if run >= MIN_PATTERN_LEN:
            out.append(b2[d + n1 - run : d + n1])


def _common_runs_vector(b1: bytes, b2: bytes, out: list[bytes]) -> None:
    n1 = len(b1)
    a1 = np.frombuffer(b1, dtype=np.uint8)
    a2 = np.frombuffer(b2, dtype=np.uint8)
    eq = sliding_window_view(a2, n1) == a1
    padded = np.zeros((eq.shape[0], n1 + 2), dtype=bool)
    padded[:, 1:-1] = eq
    steps = np.diff(padded.view(np.int8), axis=1)
    rows, starts = np.nonzero(steps == 1)
    ends = np.nonzero(steps == -1)[1]
    # starts/ends alternate within each row, so row-major order pairs them up
    lengths = ends - starts
    for row, a, length in zip(rows.tolist(), starts.tolist(), lengths.tolist()):
        if length >= MIN_PATTERN_LEN:
            out.append(b2[row + a : row + a + length])


def _common_run_fragments(b1: bytes, b2: bytes) -> list[bytes]:
    """Maximal agreement runs (length >= 2) over all full-overlap offsets.

    Only the matched symbols are ever extracted, so swapping the arguments
    yields the same fragment set; callers need one pass per unordered pair.
    """
    if len(b1) > len(b2):
        b1, b2 = b2, b1
    out: list[bytes] = []
    if len(b1) < MIN_PATTERN_LEN:
        return out
    if len(b1) * (len(b2) - len(b1) + 1) <= _SMALL_PAIR_OPS:
        _common_runs_small(b1, b2, out)
    else:
        _common_runs_vector(b1, b2, out)
    return out


def extract_common_subpatterns(p1: SymbolSequence, p2: SymbolSequence) -> tuple[SymbolSequence, ...]:
    """Slide the shorter sequence over the longer one and harvest match runs.

    Positionwise symbol equality plays the role of XNOR for general alphabets;
    every maximal run of at least two consecutive matches contributes the
    covered subsequence. Returns deduplicated fragments in extraction order.
    """
    if len(p1) == 0 or len(p2) == 0:
        raise ValueError("cannot extract patterns from an empty sequence")
    size = max(p1.alphabet_size, p2.alphabet_size)
    seen: set[bytes] = set()
    ordered: list[SymbolSequence] = []
    for frag in _common_run_fragments(p1.data, p2.data):
        if frag not in seen:
            seen.add(frag)
            ordered.append(SymbolSequence.from_bytes(frag, size))
    return tuple(ordered)


def _pattern_bytes(segment_data: list[bytes]) -> list[bytes]:
    seen: set[bytes] = set()
    ordered: list[bytes] = []
    for i in range(len(segment_data)):
        for j in range(i + 1, len(segment_data)):
            for frag in _common_run_fragments(segment_data[i], segment_data[j]):
                if frag not in seen:
                    seen.add(frag)
                    ordered.append(frag)
    return ordered


def build_pattern_set(dictionary: FlipDictionary) -> PatternSet:
    """Union of common subpatterns over all pairs of distinct dictionary segments."""
    data = [seg.data for seg in dictionary.segments]
    size = max((seg.alphabet_size for seg in dictionary.segments), default=1)
    patterns = tuple(
        SymbolSequence.from_bytes(frag, size) for frag in _pattern_bytes(data)
    )
    return PatternSet(dictionary.direction, patterns)


def _find_all(haystack: bytes, needle: bytes) -> list[int]:
    """All (overlapping) 0-based match positions."""
    out: list[int] = []
    i = haystack.find(needle)
    while i != -1:
        out.append(i)
        i = haystack.find(needle, i + 1)
    return out


def count_occurrences(pattern: SymbolSequence, s: SymbolSequence) -> int:
    """Number of occurrences of ``pattern`` in ``s``, overlapping included."""
    if not 1 <= len(pattern) <= len(s):
        raise ValueError("need 1 <= len(pattern) <= len(s)")
    return len(_find_all(s.data, pattern.data))


def _flip_prefix(effect_data: bytes) -> np.ndarray:
    """prefix[i] = number of adjacent-symbol changes strictly before index i."""
    arr = np.frombuffer(effect_data, dtype=np.uint8)
    prefix = np.zeros(len(arr), dtype=np.int64)
    np.cumsum(arr[1:] != arr[:-1], out=prefix[1:])
    return prefix


def response_determinism(
    pattern: SymbolSequence, cause: SymbolSequence, effect: SymbolSequence
) -> tuple[int, int, float]:
    """Count pattern occurrences whose aligned effect window contains a flip.

    A window of length L starting at i changes iff two adjacent effect symbols
    inside [i, i+L-1] differ; the boundary pair just before the window is not
    consulted. Returns (n_change, n_nochange, r_flip).
    """
    if len(cause) != len(effect):
        raise ValueError("cause and effect must have equal length")
    positions = _find_all(cause.data, pattern.data)
    if not positions:
        raise ValueError(f"pattern {pattern.text()!r} does not occur in the cause sequence")
    prefix = _flip_prefix(effect.data)
    pos = np.asarray(positions, dtype=np.int64)
    n_change = int(np.count_nonzero(prefix[pos + len(pattern) - 1] > prefix[pos]))
    n_occ = len(positions)
    return n_change, n_occ - n_change, n_change / n_occ


def binary_entropy(r: float) -> float:
    """Binary Shannon entropy in bits; exactly 0 at the deterministic limits."""
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"entropy ratio must lie in [0, 1], got {r}")
    if r == 0.0 or r == 1.0:
        return 0.0
    return -(r * math.log2(r) + (1.0 - r) * math.log2(1.0 - r))


def score_direction(
    cause: SymbolSequence, effect: SymbolSequence, direction: str = LABEL_XY
) -> DirectionalScore:
    """Score every extracted pattern for one direction and average the result."""
    if len(cause) != len(effect):
        raise InputError("cause and effect must have equal length")
    if len(cause) < 2:
        raise InputError("causal scoring needs sequences of length >= 2")
    dictionary = build_flip_dictionary(cause, effect, direction)
    pattern_bytes = _pattern_bytes([seg.data for seg in dictionary.segments])
    if not pattern_bytes:
        return DirectionalScore(direction, (), None)

    n = len(cause)
    cause_data = cause.data
    prefix = _flip_prefix(effect.data)
    scores: list[PatternScore] = []
    total = 0.0
    for frag in pattern_bytes:
        positions = _find_all(cause_data, frag)
        length = len(frag)
        pos = np.asarray(positions, dtype=np.int64)
        n_change = int(np.count_nonzero(prefix[pos + length - 1] > prefix[pos]))
        n_occ = len(positions)
        r_flip = n_change / n_occ
        weight = n_occ / (n - length + 1)
        h_b = binary_entropy(r_flip)
        h_w = weight * h_b
        total += h_w
        scores.append(
            PatternScore(
                pattern=SymbolSequence.from_bytes(frag, cause.alphabet_size),
                n_change=n_change,
                n_nochange=n_occ - n_change,
                r_flip=r_flip,
                weight=weight,
                h_binary=h_b,
                h_weighted=h_w,
            )
        )
    return DirectionalScore(direction, tuple(scores), total / len(scores))


def _rank_patterns(winning: DirectionalScore) -> tuple[AttributedPattern, ...]:
    ranked = sorted(
        winning.pattern_scores,
        key=lambda s: (s.h_weighted, -s.weight, s.pattern.symbols),
    )
    out = []
    for s in ranked:
        role = None
        if s.n_change == 0:
            role = "preserver"
        elif s.n_nochange == 0:
            role = "trigger"
        out.append(AttributedPattern(s, role))
    return tuple(out)


def attribute_patterns(report: CausalReport) -> tuple[AttributedPattern, ...]:
    """Winning-direction patterns ranked by weighted entropy, then weight.

    Patterns with flip ratio exactly 1 are flagged as triggers, ratio exactly
    0 as preservers. An independent verdict yields an empty list.
    """
    if report.verdict == Direction.X_CAUSES_Y:
        return _rank_patterns(report.score_xy)
    if report.verdict == Direction.Y_CAUSES_X:
        return _rank_patterns(report.score_yx)
    return ()


def infer_causal_direction(x: SymbolSequence, y: SymbolSequence) -> CausalReport:
    """Score both directions and declare the lower average entropy causal.

    Ties within VERDICT_TOLERANCE (and two no-evidence directions) are
    declared independent. When exactly one direction has evidence it wins and
    the strength is infinite.
    """
    if len(x) != len(y):
        raise InputError("sequences must have equal length")
    if x.alphabet_size != y.alphabet_size:
        raise InputError("sequences must share one alphabet")
    score_xy = score_direction(x, y, LABEL_XY)
    score_yx = score_direction(y, x, LABEL_YX)
    hxy = score_xy.effective_h_bar
    hyx = score_yx.effective_h_bar
    if not score_xy.has_evidence and not score_yx.has_evidence:
        verdict, strength = Direction.INDEPENDENT, 0.0
    elif abs(hxy - hyx) <= VERDICT_TOLERANCE:
        verdict, strength = Direction.INDEPENDENT, abs(hxy - hyx)
    elif hxy < hyx:
        verdict, strength = Direction.X_CAUSES_Y, hyx - hxy
    else:
        verdict, strength = Direction.Y_CAUSES_X, hxy - hyx
    report = CausalReport(score_xy, score_yx, verdict, strength, ())
    ranked = attribute_patterns(report)
    return CausalReport(score_xy, score_yx, verdict, strength, ranked)


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _direction_table(score: DirectionalScore) -> list[str]:
    lines = []
    if not score.has_evidence:
        lines.append(f"direction {score.direction}: no patterns (no evidence)")
        return lines
    lines.append(f"direction {score.direction} ({len(score.pattern_scores)} patterns)")
    header = f"{'Pattern':<16}{'Change':>8}{'NoChange':>10}{'Ratio':>10}{'Weight':>10}{'H_b':>10}{'H_w':>10}"
    lines.append(header)
    for s in score.pattern_scores:
        lines.append(
            f"{s.pattern.text():<16}{s.n_change:>8}{s.n_nochange:>10}"
            f"{s.r_flip:>10.6f}{s.weight:>10.6f}{s.h_binary:>10.6f}{s.h_weighted:>10.6f}"
        )
    lines.append(f"average weighted entropy: {_fmt(score.h_bar)} bits")
    return lines


def report_text(report: CausalReport) -> str:
    """Human-readable report: verdict, strength, both directional tables."""
    hxy = "no-evidence" if not report.score_xy.has_evidence else _fmt(report.score_xy.h_bar)
    hyx = "no-evidence" if not report.score_yx.has_evidence else _fmt(report.score_yx.h_bar)
    lines = [
        f"verdict: {report.verdict.value}",
        f"strength_bits: {_fmt(report.strength)}",
        f"h_bar_x_to_y: {hxy}",
        f"h_bar_y_to_x: {hyx}",
        "",
    ]
    lines.extend(_direction_table(report.score_xy))
    lines.append("")
    lines.extend(_direction_table(report.score_yx))
    if report.deterministic_patterns:
        lines.append("")
        lines.append("ranked patterns (winning direction):")
        for ap in report.deterministic_patterns:
            flag = f"  [{ap.role}]" if ap.role else ""
            lines.append(
                f"  {ap.score.pattern.text():<16} h_w={_fmt(ap.score.h_weighted)}"
                f" weight={_fmt(ap.score.weight)} r_flip={_fmt(ap.score.r_flip)}{flag}"
            )
    return "\n".join(lines) + "\n"


def pattern_graph_lines(report: CausalReport) -> list[str]:
    """One JSON object per pattern node, both directions, 6-decimal numbers."""
    lines = []
    for score in (report.score_xy, report.score_yx):
        for s in score.pattern_scores:
            lines.append(
                "{"
                + f'"pattern": {json.dumps(s.pattern.text())}, '
                + f'"direction": {json.dumps(score.direction)}, '
                + f'"r_flip": {s.r_flip:.6f}, '
                + f'"weight": {s.weight:.6f}, '
                + f'"h_weighted": {s.h_weighted:.6f}'
                + "}"
            )
    return lines


def export_pattern_graph(report: CausalReport, path: str | Path) -> None:
    """Write the pattern network as JSON Lines; a no-evidence direction emits no nodes."""
    text = "\n".join(pattern_graph_lines(report))
    Path(path).write_text(text + ("\n" if text else ""), encoding="utf-8")
