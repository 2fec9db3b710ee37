"""Alphabets, finite words, segments and occurrence scanning.

Symbols are stored as small integer indices into an :class:`Alphabet`;
textual labels appear only at I/O boundaries.  Words are immutable and
freely shareable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import (
    AlphabetError,
    BoundsError,
    EmptyPatternError,
    FormatError,
)

MAX_ALPHABET = 256


class Alphabet:
    """An ordered list of distinct symbol labels."""

    __slots__ = ("_labels", "_index", "_char_lut")

    def __init__(self, labels: Iterable[str]):
        labels = tuple(str(s) for s in labels)
        if not labels:
            raise AlphabetError("alphabet needs at least one symbol")
        if len(labels) > MAX_ALPHABET:
            raise AlphabetError(f"alphabet too large ({len(labels)} > {MAX_ALPHABET})")
        if len(set(labels)) != len(labels):
            raise AlphabetError(f"duplicate symbol labels in {labels!r}")
        if any(s == "" or any(c.isspace() for c in s) for s in labels):
            raise AlphabetError("symbol labels must be nonempty and whitespace-free")
        self._labels = labels
        self._index = {s: i for i, s in enumerate(labels)}
        # Byte lookup table for fast text rendering of 1-char ASCII labels.
        if all(len(s) == 1 and ord(s) < 128 for s in labels):
            self._char_lut = np.array([ord(s) for s in labels], np.uint8)
        else:
            self._char_lut = None

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def single_char(self) -> bool:
        return self._char_lut is not None

    def __len__(self):
        return len(self._labels)

    def __iter__(self):
        return iter(self._labels)

    def __contains__(self, label):
        return label in self._index

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise AlphabetError(f"symbol {label!r} not in alphabet {self._labels}") from None

    def label(self, i: int) -> str:
        return self._labels[i]

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self._labels == other._labels

    def __hash__(self):
        return hash(self._labels)

    def __repr__(self):
        return f"Alphabet({self._labels!r})"

    def word(self, text: str = "") -> FiniteWord:
        return FiniteWord.from_text(self, text)


BINARY = Alphabet(("0", "1"))


class FiniteWord:
    """A finite word: an alphabet plus a read-only index array."""

    __slots__ = ("_alphabet", "_data")

    def __init__(self, alphabet: Alphabet, data):
        arr = np.asarray(data, dtype=np.uint8)
        if arr.ndim != 1:
            raise ValueError("word data must be one-dimensional")
        if arr.size and int(arr.max()) >= len(alphabet):
            raise AlphabetError("symbol index out of range for alphabet")
        arr = arr.copy()
        arr.flags.writeable = False
        self._alphabet = alphabet
        self._data = arr

    @classmethod
    def from_text(cls, alphabet: Alphabet, text: str) -> FiniteWord:
        """Parse a word from labels: concatenated chars for 1-char alphabets,
        whitespace-separated tokens otherwise."""
        if alphabet.single_char:
            tokens: Sequence[str] = text.strip()
        else:
            tokens = text.split()
        return cls(alphabet, [alphabet.index(t) for t in tokens])

    @classmethod
    def _wrap(cls, alphabet: Alphabet, arr: np.ndarray) -> FiniteWord:
        # Internal: adopt a trusted uint8 array without copying.
        w = object.__new__(cls)
        arr.flags.writeable = False
        w._alphabet = alphabet
        w._data = arr
        return w

    @property
    def alphabet(self) -> Alphabet:
        return self._alphabet

    @property
    def data(self) -> np.ndarray:
        return self._data

    def __len__(self):
        return self._data.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, FiniteWord)
            and self._alphabet == other._alphabet
            and self._data.shape == other._data.shape
            and bool(np.array_equal(self._data, other._data))
        )

    def __hash__(self):
        return hash((self._alphabet, self._data.tobytes()))

    def __getitem__(self, key):
        if isinstance(key, slice):
            return FiniteWord(self._alphabet, self._data[key])
        return self._alphabet.label(int(self._data[key]))

    def __add__(self, other):
        return concat(self, other)

    def __repr__(self):
        text = self.to_text()
        if len(text) > 40:
            text = text[:37] + "..."
        return f"FiniteWord({text!r})"

    def to_text(self) -> str:
        return render_symbols(self._alphabet, self._data)

    def is_empty(self) -> bool:
        return self._data.shape[0] == 0


def render_symbols(alphabet: Alphabet, data: np.ndarray) -> str:
    """Render an index array as label text (see FiniteWord.from_text)."""
    if alphabet.single_char:
        return alphabet._char_lut[data].tobytes().decode("ascii")
    return " ".join(alphabet.label(int(i)) for i in data)


@dataclass(frozen=True)
class Segment:
    """A closed index range [start, end] of length end - start + 1."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise BoundsError(f"invalid segment [{self.start}, {self.end}]")

    @property
    def length(self) -> int:
        return self.end - self.start + 1


def bar(w: FiniteWord) -> FiniteWord:
    """Symbol-wise complement of a word over a 2-symbol alphabet."""
    if len(w.alphabet) != 2:
        raise AlphabetError(
            f"complement needs a binary alphabet, got {len(w.alphabet)} symbols"
        )
    return FiniteWord._wrap(w.alphabet, (1 - w.data).astype(np.uint8))


def concat(u: FiniteWord, v: FiniteWord) -> FiniteWord:
    if u.alphabet != v.alphabet:
        raise AlphabetError("cannot concatenate words over different alphabets")
    return FiniteWord._wrap(u.alphabet, np.concatenate([u.data, v.data]))


def segment(w, s: Segment) -> FiniteWord:
    """w[s.start .. s.end] for a FiniteWord or an infinite word source."""
    if isinstance(w, FiniteWord):
        if s.end >= len(w):
            raise BoundsError(f"segment end {s.end} out of range for |w|={len(w)}")
        return FiniteWord._wrap(w.alphabet, w.data[s.start : s.end + 1].copy())
    return w.segment(s)


def occurrences(x: FiniteWord, w: FiniteWord) -> np.ndarray:
    """All start positions of x in w, strictly increasing, overlaps included."""
    if len(x) == 0:
        raise EmptyPatternError("occurrences of the empty word are not defined")
    if x.alphabet != w.alphabet:
        raise AlphabetError("pattern and word are over different alphabets")
    return _kernels.find_occurrences(w.data, x.data)


def format_word(w: FiniteWord, header: bool = True) -> str:
    """Serialize a word: optional 'alphabet:' header line plus one word line."""
    lines = []
    if header:
        lines.append("alphabet: " + " ".join(w.alphabet.labels))
    lines.append(w.to_text())
    return "\n".join(lines) + "\n"


def parse_word(text: str, alphabet: Alphabet | None = None) -> FiniteWord:
    """Parse serialized word text.

    An ``alphabet: ...`` header line declares the alphabet; without one the
    alphabet is either the caller-supplied one or inferred from the sorted
    distinct symbols of the word line.
    """
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        if alphabet is None:
            raise FormatError("empty word input and no alphabet given")
        return FiniteWord(alphabet, [])
    if lines[0].lstrip().startswith("alphabet:"):
        labels = lines[0].split(":", 1)[1].split()
        if not labels:
            raise FormatError("empty alphabet header", line=1)
        alphabet = Alphabet(labels)
        lines = lines[1:]
    body = "\n".join(lines)
    if alphabet is None:
        alphabet = Alphabet(sorted(set(body.split() if " " in body.strip() else body.strip())))
    try:
        return FiniteWord.from_text(alphabet, body)
    except AlphabetError as e:
        raise FormatError(str(e)) from e
