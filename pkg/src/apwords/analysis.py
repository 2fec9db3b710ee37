"""Empirical almost-periodicity analysis over finite prefixes.

All predicates here see only a finite prefix, so results are evidence
qualified by the prefix length: pass / fail-with-witness / insufficient
data, never a claim about the whole infinite word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import AlphabetError, EmptyPatternError, InsufficientDataError
from .generators import CounterexampleFamily
from .words import FiniteWord, occurrences

MAX_FACTOR_LENGTH = 64


@dataclass(frozen=True)
class RegulatorReport:
    """Empirical recurrence data for one pattern over one prefix."""

    pattern: FiniteWord
    prefix_length: int
    occurrence_count: int
    min_window: int | None
    rightmost_start: int | None


@dataclass(frozen=True)
class StabilityEntry:
    factor: FiniteWord
    occurrence_count: int
    min_window_half: int | None
    min_window_full: int | None

    @property
    def stable(self) -> bool:
        return (
            self.min_window_half is not None
            and self.min_window_half == self.min_window_full
        )


@dataclass(frozen=True)
class StabilityReport:
    factor_length_bound: int
    half_length: int
    full_length: int
    entries: tuple[StabilityEntry, ...]

    @property
    def all_stable(self) -> bool:
        return all(e.stable for e in self.entries)

    def unstable(self) -> tuple[StabilityEntry, ...]:
        return tuple(e for e in self.entries if not e.stable)

    def to_tsv(self) -> str:
        def cell(v):
            return "absent" if v is None else str(v)

        rows = ["factor\tcount\tmin_window_half\tmin_window_full\tstable"]
        for e in self.entries:
            rows.append(
                "\t".join(
                    (
                        e.factor.to_text(),
                        str(e.occurrence_count),
                        cell(e.min_window_half),
                        cell(e.min_window_full),
                        "yes" if e.stable else "no",
                    )
                )
            )
        return "\n".join(rows) + "\n"


def min_window_from_starts(starts: np.ndarray, text_length: int, pattern_length: int):
    """Closed form of the minimal certifying window length.

    Over occurrence starts p_0 < ... < p_m the answer is
    max(p_0 + |x|, max_k (p_{k+1} - p_k) + |x| - 1, |w| - p_m), floored
    at |x|; the head and tail terms come from the windows pinned to the
    prefix boundaries.
    """
    if starts.size == 0:
        return None
    head = int(starts[0]) + pattern_length
    tail = text_length - int(starts[-1])
    gap = int(np.diff(starts).max()) + pattern_length - 1 if starts.size > 1 else 0
    return max(pattern_length, head, tail, gap)


def min_window(x: FiniteWord, w: FiniteWord) -> int | None:
    """Smallest l such that every length-l window of w fully contains an
    occurrence of x; None when x does not occur in w."""
    starts = occurrences(x, w)
    return min_window_from_starts(starts, len(w), len(x))


def check_window(x: FiniteWord, w: FiniteWord, window_length: int) -> int | None:
    """None when every length-`window_length` window of w contains x;
    otherwise the smallest violating window start."""
    if window_length > len(w):
        raise InsufficientDataError(
            f"window length {window_length} exceeds the available prefix ({len(w)})",
            required=window_length,
        )
    if window_length < len(x):
        return 0
    starts = occurrences(x, w)
    if starts.size == 0:
        return 0
    # Window [i, i+l-1] contains x iff some start p satisfies i <= p <= i+l-|x|.
    span = window_length - len(x)
    prev_end = -1
    for p in starts:
        p = int(p)
        first_bad = prev_end + 1
        if p - span > first_bad:
            return first_bad
        prev_end = p
    if prev_end < len(w) - window_length:
        return prev_end + 1
    return None


def rightmost_occurrence(x: FiniteWord, w: FiniteWord) -> int | None:
    starts = occurrences(x, w)
    return int(starts[-1]) if starts.size else None


def regulator_report(x: FiniteWord, w: FiniteWord) -> RegulatorReport:
    starts = occurrences(x, w)
    return RegulatorReport(
        pattern=x,
        prefix_length=len(w),
        occurrence_count=int(starts.size),
        min_window=min_window_from_starts(starts, len(w), len(x)),
        rightmost_start=int(starts[-1]) if starts.size else None,
    )


# ---------------------------------------------------------------------------
# counterexample-family verification


def _letter_pairs(fam: CounterexampleFamily, n: int):
    a = fam.a_array(n)
    comp = (1 - a).astype(np.uint8)
    return {
        "aa": np.concatenate([a, a]),
        "ab": np.concatenate([a, comp]),
        "ba": np.concatenate([comp, a]),
        "bb": np.concatenate([comp, comp]),
    }


@dataclass(frozen=True)
class PairContainmentResult:
    ok: bool
    witnesses: dict[str, int | None]

    def __bool__(self):
        return self.ok

    def missing(self):
        return tuple(k for k, v in self.witnesses.items() if v is None)


def verify_pair_containment(fam: CounterexampleFamily, n: int) -> PairContainmentResult:
    """Check that the level-(n+1) block contains all four two-letter words
    over the letters a_n and bar(a_n); returns one witness position each."""
    if len(fam.alphabet) != 2:
        raise AlphabetError("pair containment is defined over a binary family")
    target = fam.a_array(n + 1)
    witnesses = {}
    for name, pair in _letter_pairs(fam, n).items():
        starts = _kernels.find_occurrences(target, pair)
        witnesses[name] = int(starts[0]) if starts.size else None
    return PairContainmentResult(
        ok=all(v is not None for v in witnesses.values()), witnesses=witnesses
    )


def verify_alignment_lemma(fam: CounterexampleFamily, m: int) -> bool:
    """Check that a_m occurs in each two-letter word over {a_m, bar(a_m)}
    only at position 0 or position |a_m|."""
    if m < 1:
        raise ValueError("alignment lemma needs m >= 1")
    a = fam.a_array(m)
    allowed = {0, a.shape[0]}
    for pair in _letter_pairs(fam, m).values():
        starts = _kernels.find_occurrences(pair, a)
        if not set(int(p) for p in starts) <= allowed:
            return False
    return True


def verify_cn_absent(fam: CounterexampleFamily, n: int, horizon: int) -> bool:
    """Check that block n's repeated word has no occurrence starting at or
    after the start of block n+1, within the given prefix horizon.

    A finite horizon gives one-sided evidence only.
    """
    if n < 1:
        raise ValueError("the absence claim needs n >= 1")
    c = fam.c(n)
    boundary = fam.l_index(n + 1)
    required = boundary + 2 * len(c)
    if horizon < required:
        raise InsufficientDataError(
            f"horizon {horizon} too small; need at least {required}",
            required=required,
        )
    prefix = fam.prefix_array(horizon)
    starts = _kernels.find_occurrences(prefix, c.data)
    return bool(starts.size == 0 or int(starts[-1]) < boundary)


# ---------------------------------------------------------------------------
# stability reports


def _distinct_factors(data: np.ndarray, max_length: int):
    raw = data.tobytes()
    n = len(raw)
    for length in range(1, max_length + 1):
        seen = sorted({raw[i : i + length] for i in range(n - length + 1)})
        for f in seen:
            yield np.frombuffer(f, np.uint8)


def recurrence_stability(
    w: FiniteWord, k: int, required: Iterable[FiniteWord] = ()
) -> StabilityReport:
    """Compare each short factor's minimal window over the first half of w
    with its minimal window over all of w.

    Candidate factors are the distinct factors of length <= k occurring in
    the first half (factors first appearing late have no meaningful gap
    statistics), plus any explicitly `required` factors, which are reported
    even when absent; an absent required factor is unstable by definition.
    """
    if len(w) < 2:
        raise ValueError("stability needs a word of length >= 2")
    if not 1 <= k <= MAX_FACTOR_LENGTH:
        raise ValueError(f"factor length bound must be in 1..{MAX_FACTOR_LENGTH}")
    half = len(w) // 2
    data = w.data
    half_data = data[:half]
    entries = []
    seen = set()
    required = tuple(required)
    for r in required:
        if r.alphabet != w.alphabet:
            raise AlphabetError("required factor over a different alphabet")
        if len(r) == 0:
            raise EmptyPatternError("required factor must be nonempty")
    required_keys = {r.data.tobytes() for r in required}
    candidates = [r.data for r in required]
    candidates.extend(
        f for f in _distinct_factors(half_data, k) if f.tobytes() not in required_keys
    )
    for pat in candidates:
        key = pat.tobytes()
        if key in seen:
            continue
        seen.add(key)
        starts_full = _kernels.find_occurrences(data, pat)
        starts_half = starts_full[starts_full <= half - pat.shape[0]]
        entries.append(
            StabilityEntry(
                factor=FiniteWord(w.alphabet, pat),
                occurrence_count=int(starts_full.size),
                min_window_half=min_window_from_starts(starts_half, half, pat.shape[0]),
                min_window_full=min_window_from_starts(starts_full, len(w), pat.shape[0]),
            )
        )
    entries.sort(key=lambda e: (len(e.factor), e.factor.data.tobytes()))
    return StabilityReport(
        factor_length_bound=k,
        half_length=half,
        full_length=len(w),
        entries=tuple(entries),
    )


def eap_cut_search(
    w: FiniteWord,
    k: int,
    cuts: Sequence[int],
    required: Iterable[FiniteWord] = (),
) -> int | None:
    """Smallest listed cut whose suffix has a fully stable report; None if
    none qualifies.  A positive result is evidence the word becomes
    uniformly recurrent after the cut; absence is evidence (not proof)
    against."""
    cuts = [int(c) for c in cuts]
    if sorted(cuts) != cuts:
        raise ValueError("cuts must be sorted ascending")
    for c in cuts:
        if not 0 <= c < len(w) / 2:
            raise ValueError(f"cut {c} must satisfy 0 <= cut < |w|/2")
    required = tuple(required)
    for c in cuts:
        report = recurrence_stability(w[c:], k, required=required)
        if report.all_stable:
            return c
    return None
