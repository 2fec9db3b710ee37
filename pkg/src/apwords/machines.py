"""Mealy machines, finite transducers and homomorphisms.

Machines are validated eagerly on construction (totality of the
transition table, declared states and symbols) and are immutable
afterwards; runs are pure functions of machine and input.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import AlphabetError, FormatError
from .sources import InfiniteWordSource
from .words import Alphabet, FiniteWord

INFINITE_EVIDENT = "infinite-evident"
FINITE_SO_FAR = "finite-so-far"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class RunTrace:
    """States visited (starting at the initial state), output, symbols read."""

    states: tuple[str, ...]
    output: FiniteWord
    consumed: int


def _state_label(alphabet: Alphabet, indices) -> str:
    labels = [alphabet.label(int(i)) for i in indices]
    return "".join(labels) if alphabet.single_char else ",".join(labels)


class MealyMachine:
    """Finite automaton emitting exactly one output symbol per input symbol."""

    def __init__(self, input_alphabet, output_alphabet, states, initial, transitions):
        """``transitions`` maps (state label, input label) to
        (next state label, output label)."""
        self.input_alphabet = input_alphabet
        self.output_alphabet = output_alphabet
        self.states = tuple(states)
        if len(set(self.states)) != len(self.states):
            raise FormatError(f"duplicate state labels in {self.states}")
        if initial not in self.states:
            raise FormatError(f"initial state {initial!r} not declared")
        self.initial = initial
        state_idx = {q: i for i, q in enumerate(self.states)}
        nq, na = len(self.states), len(input_alphabet)
        self._next = np.zeros((nq, na), np.int32)
        self._out = np.zeros((nq, na), np.uint8)
        seen = set()
        for (q, a), (q2, b) in transitions.items():
            if q not in state_idx:
                raise FormatError(f"transition from undeclared state {q!r}")
            if q2 not in state_idx:
                raise FormatError(f"transition to undeclared state {q2!r}")
            ai = input_alphabet.index(a)
            self._next[state_idx[q], ai] = state_idx[q2]
            self._out[state_idx[q], ai] = output_alphabet.index(b)
            seen.add((q, a))
        missing = [
            (q, a) for q in self.states for a in input_alphabet if (q, a) not in seen
        ]
        if missing:
            raise FormatError(f"transition table not total; missing {missing[:5]}")
        self._initial_idx = state_idx[self.initial]
        self._state_idx = state_idx

    def transition(self, state: str, symbol: str) -> tuple[str, str]:
        qi = self._state_idx[state]
        ai = self.input_alphabet.index(symbol)
        return (
            self.states[self._next[qi, ai]],
            self.output_alphabet.label(int(self._out[qi, ai])),
        )


class Transducer:
    """Like a Mealy machine, but each step emits a word (possibly empty)."""

    def __init__(self, input_alphabet, output_alphabet, states, initial, transitions):
        """``transitions`` maps (state label, input label) to
        (next state label, output FiniteWord-or-label-list)."""
        self.input_alphabet = input_alphabet
        self.output_alphabet = output_alphabet
        self.states = tuple(states)
        if len(set(self.states)) != len(self.states):
            raise FormatError(f"duplicate state labels in {self.states}")
        if initial not in self.states:
            raise FormatError(f"initial state {initial!r} not declared")
        self.initial = initial
        state_idx = {q: i for i, q in enumerate(self.states)}
        nq, na = len(self.states), len(input_alphabet)
        self._next = np.zeros((nq, na), np.int32)
        self._emit: list[list[np.ndarray]] = [
            [None] * na for _ in range(nq)  # type: ignore[list-item]
        ]
        for (q, a), (q2, out) in transitions.items():
            if q not in state_idx:
                raise FormatError(f"transition from undeclared state {q!r}")
            if q2 not in state_idx:
                raise FormatError(f"transition to undeclared state {q2!r}")
            ai = input_alphabet.index(a)
            if isinstance(out, FiniteWord):
                if out.alphabet != output_alphabet:
                    raise AlphabetError("emission word over wrong alphabet")
                arr = out.data
            else:
                arr = np.array([output_alphabet.index(s) for s in out], np.uint8)
            self._next[state_idx[q], ai] = state_idx[q2]
            self._emit[state_idx[q]][ai] = arr
        missing = [
            (q, a)
            for q in self.states
            for a in input_alphabet
            if self._emit[state_idx[q]][input_alphabet.index(a)] is None
        ]
        if missing:
            raise FormatError(f"transition table not total; missing {missing[:5]}")
        self._initial_idx = state_idx[self.initial]
        self._state_idx = state_idx

    def transition(self, state: str, symbol: str) -> tuple[str, FiniteWord]:
        qi = self._state_idx[state]
        ai = self.input_alphabet.index(symbol)
        return (
            self.states[self._next[qi, ai]],
            FiniteWord(self.output_alphabet, self._emit[qi][ai]),
        )


class Homomorphism:
    """A word map determined by per-symbol images: h(uv) = h(u)h(v)."""

    def __init__(self, source: Alphabet, target: Alphabet, images):
        """``images`` maps every source label to a FiniteWord or label list."""
        self.source = source
        self.target = target
        self._images: list[np.ndarray] = []
        for s in source:
            if s not in images:
                raise FormatError(f"no image for symbol {s!r}")
            img = images[s]
            if isinstance(img, FiniteWord):
                if img.alphabet != target:
                    raise AlphabetError(f"image of {s!r} over wrong alphabet")
                self._images.append(img.data)
            else:
                self._images.append(
                    np.array([target.index(t) for t in img], np.uint8)
                )

    def image(self, label: str) -> FiniteWord:
        return FiniteWord(self.target, self._images[self.source.index(label)])

    def image_lengths(self) -> np.ndarray:
        return np.array([img.shape[0] for img in self._images], np.int64)

    def __call__(self, w: FiniteWord) -> FiniteWord:
        return apply_homomorphism(self, w)


def apply_homomorphism(h: Homomorphism, w: FiniteWord) -> FiniteWord:
    if w.alphabet != h.source:
        raise AlphabetError("word is not over the homomorphism's source alphabet")
    if len(w) == 0:
        return FiniteWord(h.target, [])
    out = np.concatenate([h._images[int(s)] for s in w.data])
    return FiniteWord._wrap(h.target, out)


def run_mealy(machine: MealyMachine, word: FiniteWord) -> RunTrace:
    if word.alphabet != machine.input_alphabet:
        raise AlphabetError("input word is not over the machine's input alphabet")
    states, out = _kernels.mealy_run(
        machine._next, machine._out, machine._initial_idx, word.data
    )
    return RunTrace(
        states=tuple(machine.states[int(q)] for q in states),
        output=FiniteWord._wrap(machine.output_alphabet, out),
        consumed=len(word),
    )


def run_transducer(machine: Transducer, word: FiniteWord) -> RunTrace:
    if word.alphabet != machine.input_alphabet:
        raise AlphabetError("input word is not over the machine's input alphabet")
    dummy_out = np.zeros_like(machine._next, dtype=np.uint8)
    states, _ = _kernels.mealy_run(
        machine._next, dummy_out, machine._initial_idx, word.data
    )
    pieces = [
        machine._emit[int(q)][int(a)] for q, a in zip(states[:-1], word.data)
    ]
    out = (
        np.concatenate(pieces) if pieces else np.empty(0, np.uint8)
    )
    return RunTrace(
        states=tuple(machine.states[int(q)] for q in states),
        output=FiniteWord._wrap(machine.output_alphabet, out.astype(np.uint8)),
        consumed=len(word),
    )


class MealyStreamSource(InfiniteWordSource):
    """Lazy automaton image of an infinite input word."""

    def __init__(self, machine: MealyMachine, inp: InfiniteWordSource):
        if inp.alphabet != machine.input_alphabet:
            raise AlphabetError("input source is not over the machine's input alphabet")
        super().__init__(machine.output_alphabet, budget=inp.budget)
        self.machine = machine
        self.input = inp

    def _prefix(self, n: int) -> np.ndarray:
        data = self.input.prefix_array(n)
        _, out = _kernels.mealy_run(
            self.machine._next, self.machine._out, self.machine._initial_idx, data
        )
        return out


def run_mealy_stream(machine: MealyMachine, inp: InfiniteWordSource) -> MealyStreamSource:
    return MealyStreamSource(machine, inp)


def delay_prepend_automaton(a: FiniteWord) -> MealyMachine:
    """Machine that buffers the last |a| inputs, so its output is a
    followed by the input stream (delayed by |a|)."""
    if len(a) == 0:
        raise ValueError("delay word must be nonempty")
    alph = a.alphabet
    start = tuple(int(i) for i in a.data)
    transitions = {}
    states = []
    queue = deque([start])
    seen = {start}
    while queue:
        u = queue.popleft()
        states.append(_state_label(alph, u))
        for s in range(len(alph)):
            v = u[1:] + (s,)
            transitions[(_state_label(alph, u), alph.label(s))] = (
                _state_label(alph, v),
                alph.label(u[0]),
            )
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return MealyMachine(alph, alph, states, _state_label(alph, start), transitions)


def reachable_states(machine) -> tuple[str, ...]:
    """States reachable from the initial state, in BFS order."""
    idx_to_label = machine.states
    seen = [False] * len(idx_to_label)
    order = []
    queue = deque([machine._initial_idx])
    seen[machine._initial_idx] = True
    while queue:
        q = queue.popleft()
        order.append(idx_to_label[q])
        for ai in range(len(machine.input_alphabet)):
            q2 = int(machine._next[q, ai])
            if not seen[q2]:
                seen[q2] = True
                queue.append(q2)
    return tuple(order)


def decompose_transducer(transducer: Transducer) -> tuple[MealyMachine, Homomorphism]:
    """Split a transducer into a Mealy machine over the pair alphabet
    (state, input symbol) and a homomorphism mapping each pair to the
    word the transducer emits on that transition.

    For every input w: h(run_mealy(F, w).output) == run_transducer(T, w).output.
    """
    reach = reachable_states(transducer)
    pair_labels = []
    images = {}
    for q in reach:
        for a in transducer.input_alphabet:
            label = f"{q},{a}"
            pair_labels.append(label)
            _, emitted = transducer.transition(q, a)
            images[label] = emitted
    pair_alphabet = Alphabet(pair_labels)
    transitions = {}
    for q in reach:
        for a in transducer.input_alphabet:
            q2, _ = transducer.transition(q, a)
            transitions[(q, a)] = (q2, f"{q},{a}")
    automaton = MealyMachine(
        transducer.input_alphabet,
        pair_alphabet,
        reach,
        transducer.initial,
        transitions,
    )
    hom = Homomorphism(pair_alphabet, transducer.output_alphabet, images)
    return automaton, hom


def output_infinite_check(h: Homomorphism, source: InfiniteWordSource, budget: int) -> str:
    """Heuristic tri-state check whether h applied to the source yields an
    infinite word.  Only the length-`budget` prefix is scanned; the answer
    never claims more than that prefix can witness."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if source.alphabet != h.source:
        raise AlphabetError("source is not over the homomorphism's source alphabet")
    lengths = h.image_lengths()
    if np.all(lengths > 0):
        return INFINITE_EVIDENT
    data = source.prefix_array(budget)
    emitting = lengths[data] > 0
    half = budget // 2
    for s in np.unique(data[emitting]):
        pos = np.nonzero(data == s)[0]
        if pos.size >= 2 and int(pos[-1]) >= half:
            return INFINITE_EVIDENT
    if not np.any(emitting[half:]):
        return FINITE_SO_FAR
    return UNKNOWN


# ---------------------------------------------------------------------------
# definition file formats


def _split_emission(token: str, alphabet: Alphabet) -> list[str]:
    if token == "-":
        return []
    if token in alphabet:
        return [token]
    if alphabet.single_char:
        return list(token)
    # Greedy longest-match tokenization for multi-character labels.
    out = []
    rest = token
    labels = sorted(alphabet.labels, key=len, reverse=True)
    while rest:
        for lab in labels:
            if rest.startswith(lab):
                out.append(lab)
                rest = rest[len(lab):]
                break
        else:
            raise FormatError(f"cannot split emission token {token!r} into symbols")
    return out


def _header(lines, lineno, key):
    if lineno >= len(lines):
        raise FormatError(f"missing {key!r} header line", line=lineno + 1)
    no, text = lines[lineno]
    if not text.startswith(key + ":"):
        raise FormatError(f"expected {key!r} header, got {text!r}", line=no)
    return no, text.split(":", 1)[1].split()


def _content_lines(text: str):
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            out.append((no, stripped))
    return out


def parse_machine(text: str):
    """Parse a machine definition file; returns a MealyMachine when every
    emission is a single output symbol, otherwise a Transducer."""
    lines = _content_lines(text)
    _, input_syms = _header(lines, 0, "input")
    _, output_syms = _header(lines, 1, "output")
    _, state_labels = _header(lines, 2, "states")
    no, initial = _header(lines, 3, "initial")
    if len(initial) != 1:
        raise FormatError("initial header must name exactly one state", line=no)
    try:
        input_alphabet = Alphabet(input_syms)
        output_alphabet = Alphabet(output_syms)
    except AlphabetError as e:
        raise FormatError(str(e), line=lines[0][0]) from e
    transitions = {}
    mealy = True
    for no, line in lines[4:]:
        tokens = line.split()
        if len(tokens) != 5 or tokens[2] != "->":
            raise FormatError(
                f"expected '<state> <sym> -> <state> <emission>', got {line!r}",
                line=no,
            )
        q, a, _, q2, emission = tokens
        if (q, a) in transitions:
            raise FormatError(f"duplicate transition for ({q!r}, {a!r})", line=no)
        try:
            emitted = _split_emission(emission, output_alphabet)
        except FormatError as e:
            raise FormatError(str(e), line=no) from e
        if len(emitted) != 1 or emission not in output_alphabet:
            mealy = False
        transitions[(q, a)] = (q2, emitted)
    try:
        if mealy:
            return MealyMachine(
                input_alphabet,
                output_alphabet,
                state_labels,
                initial[0],
                {k: (q2, em[0]) for k, (q2, em) in transitions.items()},
            )
        return Transducer(
            input_alphabet, output_alphabet, state_labels, initial[0], transitions
        )
    except FormatError:
        raise
    except AlphabetError as e:
        raise FormatError(str(e)) from e


def format_machine(machine) -> str:
    lines = [
        "input: " + " ".join(machine.input_alphabet.labels),
        "output: " + " ".join(machine.output_alphabet.labels),
        "states: " + " ".join(machine.states),
        "initial: " + machine.initial,
    ]
    for q in machine.states:
        for a in machine.input_alphabet:
            q2, out = machine.transition(q, a)
            if isinstance(out, FiniteWord):
                token = out.to_text().replace(" ", "") or "-"
            else:
                token = out
            lines.append(f"{q} {a} -> {q2} {token}")
    return "\n".join(lines) + "\n"


def parse_homomorphism(text: str) -> Homomorphism:
    lines = _content_lines(text)
    _, source_syms = _header(lines, 0, "source")
    _, target_syms = _header(lines, 1, "target")
    try:
        source = Alphabet(source_syms)
        target = Alphabet(target_syms)
    except AlphabetError as e:
        raise FormatError(str(e)) from e
    images = {}
    for no, line in lines[2:]:
        tokens = line.split()
        if len(tokens) != 3 or tokens[1] != "->":
            raise FormatError(f"expected '<sym> -> <word-or-dash>', got {line!r}", line=no)
        sym, _, image = tokens
        if sym in images:
            raise FormatError(f"duplicate image for {sym!r}", line=no)
        try:
            images[sym] = _split_emission(image, target)
        except FormatError as e:
            raise FormatError(str(e), line=no) from e
    try:
        return Homomorphism(source, target, images)
    except AlphabetError as e:
        raise FormatError(str(e)) from e


def format_homomorphism(h: Homomorphism) -> str:
    lines = [
        "source: " + " ".join(h.source.labels),
        "target: " + " ".join(h.target.labels),
    ]
    for s in h.source:
        token = h.image(s).to_text().replace(" ", "") or "-"
        lines.append(f"{s} -> {token}")
    return "\n".join(lines) + "\n"
