"""Command-line surface.

Exit codes: 0 success / all checks pass, 1 verification failure,
2 usage or parse error, 3 budget or insufficient data, 4 data mismatch
(wrong alphabet).
"""

from __future__ import annotations

import argparse
import sys

from .analysis import (
    check_window,
    eap_cut_search,
    min_window,
    recurrence_stability,
    verify_alignment_lemma,
    verify_cn_absent,
    verify_pair_containment,
)
from .errors import (
    AlphabetError,
    BudgetError,
    EmptyPatternError,
    FormatError,
    InsufficientDataError,
)
from .generators import (
    CounterexampleFamily,
    load_morphism_rules,
    load_tau_table,
    morphic_source,
    periodic_source,
)
from .machines import (
    MealyMachine,
    decompose_transducer,
    delay_prepend_automaton,
    format_homomorphism,
    format_machine,
    parse_machine,
    run_mealy,
    run_transducer,
)
from .words import Alphabet, FiniteWord, parse_word, render_symbols

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4

CHUNK = 1 << 20
MAX_VERIFY_LEVEL = 4


class _TamperedFamily(CounterexampleFamily):
    """Test hook: flips one symbol of every materialized prefix."""

    def __init__(self, index, **kwargs):
        super().__init__(**kwargs)
        self.tamper_index = int(index)

    def prefix_array(self, length):
        arr = super().prefix_array(length)
        if self.tamper_index < arr.shape[0]:
            arr = arr.copy()
            arr[self.tamper_index] ^= 1
        return arr


def _word_for_alphabet(text: str, alphabet: Alphabet) -> FiniteWord:
    """Parse a word, reporting the offending symbol and its position."""
    tokens = list(text.strip()) if alphabet.single_char else text.split()
    for pos, tok in enumerate(tokens):
        if tok not in alphabet:
            raise AlphabetError(
                f"symbol {tok!r} at position {pos} is not in alphabet "
                f"{' '.join(alphabet.labels)}"
            )
    return FiniteWord(alphabet, [alphabet.index(t) for t in tokens])


def _build_source(spec: str, tau_file=None):
    """Build a source from a generator spec: 'paper', 'paper:TAUFILE',
    'periodic:WORD' or 'morphic:RULESFILE:SEED'."""
    kind, _, rest = spec.partition(":")
    if kind == "paper":
        tau = None
        if rest:
            tau = load_tau_table(rest)
        elif tau_file:
            tau = load_tau_table(tau_file)
        return CounterexampleFamily(tau=tau).source()
    if kind == "periodic":
        if not rest:
            raise FormatError("periodic spec needs a period word: periodic:WORD")
        return periodic_source(parse_word(rest))
    if kind == "morphic":
        rules_path, _, seed = rest.partition(":")
        if not rules_path or not seed:
            raise FormatError("morphic spec needs morphic:RULESFILE:SEED")
        return morphic_source(load_morphism_rules(rules_path), seed)
    raise FormatError(f"unknown generator family {kind!r}")


def _input_word(args, parser) -> FiniteWord:
    """Resolve the shared word-input options to a finite word."""
    given = [
        opt
        for opt, val in (
            ("--word", args.word),
            ("--word-file", args.word_file),
            ("--gen", args.gen),
        )
        if val is not None
    ]
    if len(given) != 1:
        parser.error("give exactly one of --word, --word-file, --gen")
    if args.word is not None:
        return parse_word(args.word)
    if args.word_file is not None:
        with open(args.word_file, "r", encoding="utf-8") as fh:
            return parse_word(fh.read())
    if args.length is None:
        parser.error("--gen needs --length")
    return _build_source(args.gen).prefix(args.length)


def _add_word_input(parser):
    parser.add_argument("--word", help="word given inline")
    parser.add_argument("--word-file", help="word file (optional 'alphabet:' header)")
    parser.add_argument(
        "--gen",
        help="generator spec: paper[:TAUFILE], periodic:WORD, morphic:RULES:SEED",
    )
    parser.add_argument("--length", type=int, help="prefix length for --gen")


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args, parser):
    if args.family == "paper":
        src = _build_source("paper", tau_file=args.tau_file)
    elif args.family == "periodic":
        if not args.word:
            parser.error("--family periodic needs --word")
        src = _build_source("periodic:" + args.word)
    else:
        if not args.rules or not args.seed:
            parser.error("--family morphic needs --rules and --seed")
        src = _build_source(f"morphic:{args.rules}:{args.seed}")
    n = args.length
    if n < 1:
        parser.error("--length must be >= 1")
    out = sys.stdout
    sep = "" if src.alphabet.single_char else " "
    for start in range(0, n, CHUNK):
        end = min(start + CHUNK, n)
        chunk = src.prefix_array(end)[start:end]
        if start:
            out.write(sep)
        out.write(render_symbols(src.alphabet, chunk))
    out.write("\n")
    return EXIT_OK


def cmd_occ(args, parser):
    w = _input_word(args, parser)
    x = _word_for_alphabet(args.pattern, w.alphabet)
    if len(x) == 0:
        raise EmptyPatternError("pattern must be nonempty")
    from .words import occurrences

    starts = occurrences(x, w)
    print(" ".join(str(int(p)) for p in starts))
    return EXIT_OK


def cmd_minwindow(args, parser):
    w = _input_word(args, parser)
    x = _word_for_alphabet(args.pattern, w.alphabet)
    if len(x) == 0:
        raise EmptyPatternError("pattern must be nonempty")
    result = min_window(x, w)
    print("absent" if result is None else result)
    return EXIT_OK


def cmd_window(args, parser):
    w = _input_word(args, parser)
    x = _word_for_alphabet(args.pattern, w.alphabet)
    if len(x) == 0:
        raise EmptyPatternError("pattern must be nonempty")
    violation = check_window(x, w, args.window_length)
    if violation is None:
        print("PASS")
        return EXIT_OK
    print(f"violation at {violation}")
    return EXIT_VERIFY_FAIL


def cmd_run(args, parser):
    if (args.machine is None) == (args.delay_prepend is None):
        parser.error("give exactly one of --machine, --delay-prepend")
    if args.machine:
        with open(args.machine, "r", encoding="utf-8") as fh:
            machine = parse_machine(fh.read())
    else:
        machine = delay_prepend_automaton(parse_word(args.delay_prepend))
    if args.gen is not None:
        if args.length is None:
            parser.error("--gen needs --length")
        src = _build_source(args.gen)
        word = src.prefix(args.length)
        if word.alphabet != machine.input_alphabet:
            # Re-map by label; the generated alphabet may be a sub-alphabet.
            word = _word_for_alphabet(word.to_text(), machine.input_alphabet)
    else:
        if args.input is not None:
            text = args.input
        elif args.input_file is not None:
            with open(args.input_file, "r", encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
        word = _word_for_alphabet(text, machine.input_alphabet)
    if isinstance(machine, MealyMachine):
        trace = run_mealy(machine, word)
    else:
        trace = run_transducer(machine, word)
    if args.emit_states:
        out_alpha = machine.output_alphabet
        tokens = []
        if isinstance(machine, MealyMachine):
            per_step = [[out_alpha.label(int(s))] for s in trace.output.data]
        else:
            per_step = []
            for q, a in zip(trace.states[:-1], word.data):
                _, emitted = machine.transition(q, machine.input_alphabet.label(int(a)))
                per_step.append([out_alpha.label(int(s)) for s in emitted.data])
        for q, emitted in zip(trace.states[:-1], per_step):
            tokens.append("@" + q)
            tokens.extend(emitted)
        print(" ".join(tokens))
    else:
        print(trace.output.to_text())
    return EXIT_OK


def cmd_decompose(args, parser):
    with open(args.machine, "r", encoding="utf-8") as fh:
        machine = parse_machine(fh.read())
    if isinstance(machine, MealyMachine):
        raise FormatError("decompose expects a transducer definition")
    automaton, hom = decompose_transducer(machine)
    auto_text = format_machine(automaton)
    hom_text = format_homomorphism(hom)
    if args.automaton_out:
        with open(args.automaton_out, "w", encoding="utf-8") as fh:
            fh.write(auto_text)
    if args.homomorphism_out:
        with open(args.homomorphism_out, "w", encoding="utf-8") as fh:
            fh.write(hom_text)
    if not (args.automaton_out or args.homomorphism_out):
        sys.stdout.write(auto_text)
        sys.stdout.write("\n")
        sys.stdout.write(hom_text)
    return EXIT_OK


def cmd_stability(args, parser):
    w = _input_word(args, parser)
    required = [_word_for_alphabet(r, w.alphabet) for r in args.require or ()]
    report = recurrence_stability(w, args.max_len, required=required)
    sys.stdout.write(report.to_tsv())
    return EXIT_OK


def cmd_cut_search(args, parser):
    w = _input_word(args, parser)
    required = [_word_for_alphabet(r, w.alphabet) for r in args.require or ()]
    cuts = [int(c) for c in args.cuts.split(",") if c.strip() != ""]
    cut = eap_cut_search(w, args.max_len, cuts, required=required)
    print("absent" if cut is None else f"cut {cut}")
    return EXIT_OK


def cmd_verify_thm1(args, parser):
    if args.max_n > MAX_VERIFY_LEVEL:
        raise BudgetError(
            f"--max-n {args.max_n} exceeds the verification budget {MAX_VERIFY_LEVEL}"
        )
    if args.max_n < 1:
        parser.error("--max-n must be >= 1")
    tau = load_tau_table(args.tau_file) if args.tau_file else None
    if args.tamper_index is not None:
        fam = _TamperedFamily(args.tamper_index, tau=tau)
    else:
        fam = CounterexampleFamily(tau=tau)

    required = 0
    for n in range(1, args.max_n + 1):
        required = max(required, fam.l_index(n + 1) + 2 * len(fam.c(n)))
        required = max(required, 4 * fam.l_index(n + 2))
    if args.horizon < required:
        print(f"horizon {args.horizon} insufficient; need at least {required}")
        return EXIT_BUDGET

    prefix = fam.prefix(args.horizon)
    results = []

    def record(ok, label):
        results.append(ok)
        print(("PASS " if ok else "FAIL ") + label)

    for n in range(0, args.max_n + 1):
        c = fam.c(n)
        start = fam.l_index(n)
        block = prefix[start : start + len(c)]
        record(block == c, f"block-layout n={n}")
    for n in range(1, args.max_n + 1):
        record(bool(verify_pair_containment(fam, n)), f"pair-containment n={n}")
        record(verify_alignment_lemma(fam, n), f"alignment n={n}")
        record(verify_cn_absent(fam, n, args.horizon), f"c-absent n={n}")
        bound = 5 * (5 ** (n + 2) - 1) // 2 + 2 * 5 ** (n + 2)
        ok = True
        for x in (fam.a(n), _complement(fam.a(n))):
            if check_window(x, prefix, min(bound, args.horizon)) is not None:
                ok = False
        record(ok, f"window-bound n={n}")
    return EXIT_OK if all(results) else EXIT_VERIFY_FAIL


def _complement(w):
    from .words import bar

    return bar(w)


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="apwords",
        description="Generate and analyze almost-periodic infinite words, "
        "and run finite automata and transducers over them.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen", help="emit a prefix of a generated word")
    p.add_argument("--family", required=True, choices=("paper", "periodic", "morphic"))
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--tau-file", help="repetition counts, one per line (paper family)")
    p.add_argument("--word", help="period word (periodic family)")
    p.add_argument("--rules", help="morphism rules file (morphic family)")
    p.add_argument("--seed", help="seed symbol (morphic family)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("occ", help="all occurrence positions of a pattern")
    p.add_argument("--pattern", required=True)
    _add_word_input(p)
    p.set_defaults(func=cmd_occ)

    p = sub.add_parser("minwindow", help="minimal certifying window length")
    p.add_argument("--pattern", required=True)
    _add_word_input(p)
    p.set_defaults(func=cmd_minwindow)

    p = sub.add_parser("window", help="check that every window of a given length contains the pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("--window-length", type=int, required=True)
    _add_word_input(p)
    p.set_defaults(func=cmd_window)

    p = sub.add_parser("run", help="run a machine over an input word")
    p.add_argument("--machine", help="machine definition file")
    p.add_argument("--delay-prepend", help="build the delay machine for this word")
    p.add_argument("--input", help="input word given inline")
    p.add_argument("--input-file", help="input word file (default: stdin)")
    p.add_argument("--gen", help="generator spec for the input word")
    p.add_argument("--length", type=int, help="prefix length for --gen")
    p.add_argument("--emit-states", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("decompose", help="split a transducer into automaton + homomorphism")
    p.add_argument("--machine", required=True)
    p.add_argument("--automaton-out")
    p.add_argument("--homomorphism-out")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("stability", help="per-factor window stability report (TSV)")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--require", action="append", help="always report this factor")
    _add_word_input(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("cut-search", help="smallest cut whose suffix is fully stable")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--cuts", required=True, help="comma-separated cut positions")
    p.add_argument("--require", action="append", help="always report this factor")
    _add_word_input(p)
    p.set_defaults(func=cmd_cut_search)

    p = sub.add_parser("verify-thm1", help="run the construction's lemma suite")
    p.add_argument("--max-n", type=int, default=3)
    p.add_argument("--horizon", type=int, default=100_000)
    p.add_argument("--tau-file")
    p.add_argument("--tamper-index", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_thm1)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except FormatError as e:
        line = f" (line {e.line})" if e.line else ""
        print(f"error: {e}{line}", file=sys.stderr)
        return EXIT_USAGE
    except EmptyPatternError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetError, InsufficientDataError) as e:
        msg = str(e)
        if isinstance(e, InsufficientDataError) and e.required is not None:
            msg += f"; minimal sufficient length is {e.required}"
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_BUDGET
    except AlphabetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
