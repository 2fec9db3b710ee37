"""End-to-end acceptance checks.

Each test covers one numbered acceptance criterion and prints a single
``ACCEPTANCE <n> PASS`` / ``FAIL`` line (visible with ``pytest -s`` or in
captured output of failures).
"""

import time
from contextlib import contextmanager

import numpy as np

from apwords import (
    BINARY,
    CounterexampleFamily,
    FiniteWord,
    Transducer,
    apply_homomorphism,
    bar,
    check_window,
    concat,
    decompose_transducer,
    delay_prepend_automaton,
    eap_cut_search,
    occurrences,
    periodic_source,
    recurrence_stability,
    run_mealy,
    run_mealy_stream,
    run_transducer,
    thue_morse_source,
    verify_alignment_lemma,
    verify_cn_absent,
)
from apwords._kernels import find_occurrences
from apwords.analysis import min_window_from_starts
from apwords.machines import MealyMachine
from apwords.words import Alphabet

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    def njit(**kwargs):
        return lambda f: f


@contextmanager
def criterion(num):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num} FAIL")
        raise
    print(f"ACCEPTANCE {num} PASS")


def test_criterion_1_golden_construction():
    with criterion(1):
        fam = CounterexampleFamily()
        assert fam.a(2).to_text() == "1001101100011001001110011"


def test_criterion_2_lemma_suite():
    with criterion(2):
        start = time.perf_counter()
        fam = CounterexampleFamily()
        for n in (1, 2, 3):
            assert verify_alignment_lemma(fam, n)
        for n in (1, 2, 3):
            horizon = max(10**5, fam.l_index(n + 2))
            assert verify_cn_absent(fam, n, horizon)
        assert time.perf_counter() - start < 10.0


def test_criterion_3_window_bound():
    with criterion(3):
        fam = CounterexampleFamily()
        prefix = fam.prefix(10**6)
        assert check_window(fam.a(1), prefix, 560) is None


def test_criterion_4_no_stable_cut():
    with criterion(4):
        fam = CounterexampleFamily()
        prefix = fam.prefix(10**5)
        c1 = fam.c(1)
        starts = occurrences(c1, prefix)
        assert starts[0] == fam.l_index(1) == 10
        assert starts[-1] <= fam.l_index(2) == 60
        cuts = [0, fam.l_index(1), fam.l_index(2), fam.l_index(3)]
        assert eap_cut_search(prefix, 50, cuts, required=[c1]) is None


@njit(cache=False)
def _oracle_min_window(w, x):
    """Exhaustive search over all window lengths; -1 when x is absent."""
    n = w.shape[0]
    m = x.shape[0]
    for l in range(m, n + 1):
        covered = True
        for i in range(n - l + 1):
            hit = False
            for p in range(i, i + l - m + 1):
                match = True
                for j in range(m):
                    if w[p + j] != x[j]:
                        match = False
                        break
                if match:
                    hit = True
                    break
            if not hit:
                covered = False
                break
        if covered:
            return l
    return -1


def test_criterion_5_min_window_oracle_equivalence():
    with criterion(5):
        patterns = [
            np.array([(pbits >> j) & 1 for j in range(m)], np.uint8)
            for m in range(1, 5)
            for pbits in range(2**m)
        ]
        for n in range(1, 15):
            shifts = np.arange(n)
            for wbits in range(2**n):
                w = ((wbits >> shifts) & 1).astype(np.uint8)
                for x in patterns:
                    got = min_window_from_starts(
                        find_occurrences(w, x), n, x.shape[0]
                    )
                    want = _oracle_min_window(w, x)
                    assert got == (None if want == -1 else want)


def test_criterion_6_delay_construction():
    with criterion(6):
        rng = np.random.default_rng(6)
        for _ in range(50):
            a = FiniteWord(BINARY, rng.integers(0, 2, rng.integers(1, 5)))
            inp = FiniteWord(BINARY, rng.integers(0, 2, 10**4))
            stream = run_mealy_stream(delay_prepend_automaton(a), periodic_source(inp))
            assert stream.prefix(10**4) == concat(a, inp)[: 10**4]


def test_criterion_7_decomposition_equivalence():
    with criterion(7):
        rng = np.random.default_rng(7)
        out_alpha = BINARY
        for _ in range(20):
            in_alpha = Alphabet("abc"[: rng.integers(1, 4)])
            states = [f"q{i}" for i in range(rng.integers(1, 5))]
            transitions = {}
            for q in states:
                for s in in_alpha:
                    emission = FiniteWord(
                        out_alpha, rng.integers(0, 2, rng.integers(0, 4))
                    )
                    transitions[q, s] = (states[rng.integers(len(states))], emission)
            t = Transducer(in_alpha, out_alpha, states, states[0], transitions)
            w = FiniteWord(in_alpha, rng.integers(0, len(in_alpha), 10**3))
            automaton, hom = decompose_transducer(t)
            assert (
                apply_homomorphism(hom, run_mealy(automaton, w).output)
                == run_transducer(t, w).output
            )


def test_criterion_8_machine_outputs_stay_stable():
    with criterion(8):
        start = time.perf_counter()
        identity = MealyMachine(
            BINARY, BINARY, ["q"], "q",
            {("q", "0"): ("q", "0"), ("q", "1"): ("q", "1")},
        )
        parity = MealyMachine(
            BINARY, BINARY, ["e", "o"], "e",
            {
                ("e", "0"): ("e", "0"),
                ("e", "1"): ("o", "0"),
                ("o", "0"): ("o", "1"),
                ("o", "1"): ("e", "1"),
            },
        )
        delay = delay_prepend_automaton(BINARY.word("01"))
        tm = thue_morse_source().prefix(2**18)
        for machine in (identity, parity, delay):
            out = run_mealy(machine, tm).output
            assert recurrence_stability(out, 6).all_stable
        assert time.perf_counter() - start < 30.0


def test_criterion_9_repeat_count_variants_diverge_at_9():
    with criterion(9):
        p_default = CounterexampleFamily().prefix_array(30)
        p_nine = CounterexampleFamily(
            tau=lambda n: 9 if n == 0 else 10
        ).prefix_array(30)
        diff = np.nonzero(p_default != p_nine)[0]
        assert diff[0] == 9
