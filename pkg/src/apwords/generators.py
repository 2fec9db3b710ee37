"""Generators for infinite words: the AP-but-not-EAP counterexample
family, periodic words and morphic fixed points.

The counterexample family is built from the block recurrence

    a_0 = "1",   a_{n+1} = a_n . bar(a_n) . bar(a_n) . a_n . a_n

with block n of the infinite word consisting of a_n repeated tau(n)
times (tau(n) in {9, 10}; constant 10 by default).
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .errors import BudgetError, FormatError
from .machines import Homomorphism
from .sources import DEFAULT_BUDGET, InfiniteWordSource, MorphicSource, PeriodicSource
from .words import BINARY, Alphabet, FiniteWord

MAX_LEVEL = 16
ALLOWED_REPEATS = (9, 10)

# Alias view: morphism rules used as generator seeds are ordinary
# homomorphisms whose source and target alphabets coincide.
MorphismRules = Homomorphism


class CounterexampleFamily:
    """Caches the blocks a_n and block-start indices l_n for a given tau."""

    def __init__(
        self,
        tau: Callable[[int], int] | None = None,
        budget: int = DEFAULT_BUDGET,
        max_level: int = MAX_LEVEL,
    ):
        self.alphabet = BINARY
        self._tau = tau
        self.budget = int(budget)
        self.max_level = int(max_level)
        self._a_cache: list[np.ndarray] = [np.array([1], np.uint8)]
        self._tau_cache: list[int] = []

    def tau(self, n: int) -> int:
        """Repetition count for block n; validated to lie in {9, 10}."""
        while len(self._tau_cache) <= n:
            k = len(self._tau_cache)
            value = 10 if self._tau is None else int(self._tau(k))
            if value not in ALLOWED_REPEATS:
                raise ValueError(
                    f"tau({k}) = {value}; repetition counts must be in {ALLOWED_REPEATS}"
                )
            self._tau_cache.append(value)
        return self._tau_cache[n]

    def _check_level(self, n: int) -> None:
        if n < 0:
            raise ValueError("level must be a natural number")
        if n > self.max_level:
            raise BudgetError(f"level {n} exceeds the level bound {self.max_level}")
        if 5**n > self.budget:
            raise BudgetError(
                f"|a_{n}| = 5^{n} exceeds materialization budget {self.budget}"
            )

    def a_array(self, n: int) -> np.ndarray:
        self._check_level(n)
        while len(self._a_cache) <= n:
            prev = self._a_cache[-1]
            comp = (1 - prev).astype(np.uint8)
            self._a_cache.append(np.concatenate([prev, comp, comp, prev, prev]))
        return self._a_cache[n]

    def a(self, n: int) -> FiniteWord:
        """The block word a_n (length 5^n)."""
        return FiniteWord._wrap(self.alphabet, self.a_array(n).copy())

    def c(self, n: int) -> FiniteWord:
        """a_n repeated tau(n) times (length tau(n) * 5^n)."""
        base = self.a_array(n)
        return FiniteWord._wrap(self.alphabet, np.tile(base, self.tau(n)))

    def l_index(self, n: int) -> int:
        """Start index of block n: sum of tau(k) * 5^k for k < n."""
        if n < 0:
            raise ValueError("block index must be a natural number")
        if n > self.max_level + 1:
            raise BudgetError(f"block index {n} exceeds the level bound {self.max_level}")
        return sum(self.tau(k) * 5**k for k in range(n))

    def prefix_array(self, length: int) -> np.ndarray:
        """First `length` symbols of c_0 c_1 c_2 ...

        Only the portion of each block overlapping the range is expanded;
        when a block is entered only partially, the prefix-nesting property
        a_k = a_{k+1}[0 .. 5^k - 1] keeps the working set proportional to
        the requested length.
        """
        length = int(length)
        if length < 0:
            raise ValueError("length must be a natural number")
        if length > self.budget:
            raise BudgetError(
                f"prefix length {length} exceeds materialization budget {self.budget}"
            )
        out = np.empty(length, np.uint8)
        pos = 0
        n = 0
        while pos < length:
            if n > self.max_level:
                raise BudgetError(
                    f"prefix of length {length} needs blocks beyond level {self.max_level}"
                )
            unit = 5**n
            block_len = self.tau(n) * unit
            take = min(block_len, length - pos)
            if take >= unit:
                base = self.a_array(n)
                reps = -(-take // unit)
                out[pos : pos + take] = np.tile(base, reps)[:take]
            else:
                # Partial first repetition: a_k with 5^k >= take is a prefix
                # of a_n, so the full a_n is never built.
                k = 0
                while 5**k < take:
                    k += 1
                out[pos : pos + take] = self.a_array(k)[:take]
            pos += take
            n += 1
        return out

    def prefix(self, length: int) -> FiniteWord:
        return FiniteWord._wrap(self.alphabet, self.prefix_array(length))

    def source(self) -> "OmegaSource":
        return OmegaSource(self)


class OmegaSource(InfiniteWordSource):
    """Memoizing source over a counterexample family's infinite word."""

    def __init__(self, family: CounterexampleFamily):
        super().__init__(family.alphabet, budget=family.budget)
        self.family = family

    def _prefix(self, n: int) -> np.ndarray:
        return self.family.prefix_array(n)


def omega_source(family: CounterexampleFamily) -> OmegaSource:
    return family.source()


def periodic_source(period: FiniteWord, budget: int = DEFAULT_BUDGET) -> PeriodicSource:
    return PeriodicSource(period, budget)


def morphic_source(
    rules: Homomorphism, seed: str, budget: int = DEFAULT_BUDGET
) -> MorphicSource:
    """Fixed point of the morphism, iterated from `seed`.

    The rules must map an alphabet into itself and the seed's image must
    start with the seed and have length at least 2.
    """
    if rules.source != rules.target:
        raise ValueError(
            "a fixed point needs rules mapping an alphabet into itself"
        )
    alphabet = rules.source
    images = {i: rules.image(s).data for i, s in enumerate(alphabet)}
    return MorphicSource(alphabet, images, alphabet.index(seed), budget)


def thue_morse_source(budget: int = DEFAULT_BUDGET) -> MorphicSource:
    """Fixed point of 0 -> 01, 1 -> 10 starting from 0."""
    rules = Homomorphism(BINARY, BINARY, {"0": "01", "1": "10"})
    return morphic_source(rules, "0", budget)


def tau_from_table(rows: Sequence[int], default: int = 10) -> Callable[[int], int]:
    """Total tau from an explicit finite table; indices beyond the table
    fall back to `default`."""
    table = [int(r) for r in rows]
    return lambda n: table[n] if n < len(table) else default


def load_tau_table(path) -> Callable[[int], int]:
    """Read a tau table file: one repetition count per line, '#' comments."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for no, raw in enumerate(fh, start=1):
            stripped = raw.split("#", 1)[0].strip()
            if not stripped:
                continue
            try:
                rows.append(int(stripped))
            except ValueError:
                raise FormatError(f"bad repetition count {stripped!r}", line=no) from None
    return tau_from_table(rows)


def load_morphism_rules(path) -> Homomorphism:
    """Read a rules file: one `<symbol> -> <image word>` line per rule,
    '#' comments.  The alphabet is the rule symbols in file order."""
    pairs = []
    with open(path, "r", encoding="utf-8") as fh:
        for no, raw in enumerate(fh, start=1):
            stripped = raw.split("#", 1)[0].strip()
            if not stripped:
                continue
            tokens = stripped.split()
            if len(tokens) != 3 or tokens[1] != "->":
                raise FormatError(
                    f"expected '<symbol> -> <image word>', got {stripped!r}", line=no
                )
            pairs.append((tokens[0], tokens[2]))
    if not pairs:
        raise FormatError("no rules in morphism file")
    alphabet = Alphabet([sym for sym, _ in pairs])
    images = {}
    for sym, image in pairs:
        if not alphabet.single_char:
            raise FormatError("morphism rule files support single-character symbols only")
        images[sym] = list(image)
    return Homomorphism(alphabet, alphabet, images)
