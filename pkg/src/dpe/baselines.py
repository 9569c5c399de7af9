"""Compression-complexity primitives and directional baseline measures.

The directional measures are documented variants (marked "variant" in all
outputs): the joint complexity of the paired sequence is compared against the
single-sequence complexities, with

    penalty(cause -> effect)  = C(joint) - C(cause)        (lower wins)
    efficacy(cause -> effect) = (C(effect) - penalty) / C(effect)  (higher wins)

LZP uses LZ76 phrase counts, ETCP and ETCE use pair-substitution counts. Raw
integer counts enter the formulas; normalized values are reported alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError
from .seqcore import Direction, SymbolSequence

BASELINE_METHODS = ("lzp", "etcp", "etce")

_TIE_EPS = 1e-12


@dataclass(frozen=True)
class ComplexityValue:
    """Raw integer complexity plus its length-normalized form."""

    raw: int
    normalized: float


@dataclass(frozen=True)
class BaselineVerdict:
    method: str
    verdict: Direction
    score_xy: float
    score_yx: float
    degenerate: bool = False


def lz76_complexity(s: SymbolSequence) -> ComplexityValue:
    """Phrase count of the exhaustive-history LZ76 parsing.

    Each phrase is the shortest prefix of the remainder that is not a
    substring of everything before its end; a final still-reproducible
    fragment counts as one phrase. Normalized as raw * log2(n) / n.
    """
    if len(s) < 1:
        raise ValueError("LZ76 needs a non-empty sequence")
    data = s.data
    n = len(data)
    phrases = 0
    i = 0
    while i < n:
        j = i + 1
        while j <= n and data[i:j] in data[: j - 1]:
            j += 1
        phrases += 1
        if j > n:
            break
        i = j
    normalized = phrases * math.log2(n) / n if n > 1 else float(phrases)
    return ComplexityValue(phrases, normalized)


def _most_frequent_pair(seq: list[int]) -> tuple[int, int]:
    counts: dict[tuple[int, int], int] = {}
    for a, b in zip(seq, seq[1:]):
        pair = (a, b)
        counts[pair] = counts.get(pair, 0) + 1
    return min(counts, key=lambda p: (-counts[p], p))


def _substitute(seq: list[int], pair: tuple[int, int], fresh: int) -> list[int]:
    out: list[int] = []
    i = 0
    n = len(seq)
    while i < n:
        if i + 1 < n and seq[i] == pair[0] and seq[i + 1] == pair[1]:
            out.append(fresh)
            i += 2
        else:
            out.append(seq[i])
            i += 1
    return out


def etc_complexity(s: SymbolSequence) -> ComplexityValue:
    """Number of pair-substitution iterations until constant or length 1.

    Each iteration counts adjacent ordered pairs at every position, then
    replaces all non-overlapping occurrences (left to right) of the most
    frequent pair with a fresh symbol; frequency ties go to the
    lexicographically smallest pair. Normalized by (len - 1).
    """
    if len(s) < 1:
        raise ValueError("ETC needs a non-empty sequence")
    seq = list(s.symbols)
    fresh = max(seq) + 1
    steps = 0
    while len(seq) > 1 and any(v != seq[0] for v in seq):
        seq = _substitute(seq, _most_frequent_pair(seq), fresh)
        fresh += 1
        steps += 1
    normalized = steps / (len(s) - 1) if len(s) > 1 else 0.0
    return ComplexityValue(steps, normalized)


def joint_sequence(x: SymbolSequence, y: SymbolSequence) -> SymbolSequence:
    """Joint sequence over first-appearance canonical labels.

    Each distinct (x_t, y_t) state gets a fresh symbol in order of first
    appearance, so joint(x, y) and joint(y, x) are the identical sequence and
    directional scores swap exactly under argument exchange.
    """
    if len(x) != len(y):
        raise InputError("joint sequence needs equal lengths")
    labels: dict[tuple[int, int], int] = {}
    symbols = []
    for pair in zip(x.symbols, y.symbols):
        code = labels.get(pair)
        if code is None:
            code = len(labels)
            labels[pair] = code
        symbols.append(code)
    return SymbolSequence(tuple(symbols), max(len(labels), 1))


def baseline_direction(method: str, x: SymbolSequence, y: SymbolSequence) -> BaselineVerdict:
    """Directional verdict of one baseline method (documented variant)."""
    if method not in BASELINE_METHODS:
        raise InputError(f"unknown baseline method {method!r}")
    if len(x) != len(y) or len(x) < 2:
        raise InputError("baselines need equal lengths >= 2")
    measure = lz76_complexity if method == "lzp" else etc_complexity
    c_joint = measure(joint_sequence(x, y)).raw
    c_x = measure(x).raw
    c_y = measure(y).raw
    penalty_xy = float(c_joint - c_x)
    penalty_yx = float(c_joint - c_y)
    if method in ("lzp", "etcp"):
        score_xy, score_yx = penalty_xy, penalty_yx
        if abs(score_xy - score_yx) <= _TIE_EPS:
            verdict = Direction.INDEPENDENT
        elif score_xy < score_yx:
            verdict = Direction.X_CAUSES_Y
        else:
            verdict = Direction.Y_CAUSES_X
        return BaselineVerdict(method, verdict, score_xy, score_yx)
    # etce: normalized gain, undefined when an effect complexity is zero
    if c_y == 0 or c_x == 0:
        return BaselineVerdict(method, Direction.INDEPENDENT, 0.0, 0.0, degenerate=True)
    score_xy = (c_y - penalty_xy) / c_y
    score_yx = (c_x - penalty_yx) / c_x
    if abs(score_xy - score_yx) <= _TIE_EPS:
        verdict = Direction.INDEPENDENT
    elif score_xy > score_yx:
        verdict = Direction.X_CAUSES_Y
    else:
        verdict = Direction.Y_CAUSES_X
    return BaselineVerdict(method, verdict, score_xy, score_yx)
