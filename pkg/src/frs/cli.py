"""Command-line surface.

Exit codes: 0 success/verified, 1 a verification produced a counterexample,
2 input error, 3 inconclusive (a step cap or search bound was exceeded).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import completeness
from .core import (
    DEFAULT_STEP_CAP,
    InputError,
    InternalError,
    NonTerminationError,
    PreconditionError,
    RewritingSystem,
    Word,
    normal_form,
)
from .fileformat import parse_presentation, serialize_presentation
from .large_sub import build_construction
from .letter_intro import build_letter_intro
from .pipeline import (
    Presentation,
    normalize_q2_q3,
    prepare_presentation,
    satisfies_q1,
    satisfies_q2,
    satisfies_q3,
)
from .property_r import CandidateTuple, check_isomorphism_slice, check_p1_to_p6

OK, FAILED, BAD_INPUT, INCONCLUSIVE = 0, 1, 2, 3


def _load(path: str) -> Presentation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_presentation(text)


def _word_from(arg: str, system: RewritingSystem) -> Word:
    word = system.alphabet.word(arg)
    if not word:
        raise InputError("the word must be nonempty")
    return word


def _write(path: str, presentation: Presentation) -> None:
    Path(path).write_text(serialize_presentation(presentation), encoding="utf-8")


def _require_complete(system: RewritingSystem, max_len: int, step_cap: int, label: str) -> None:
    report = completeness.verify_complete(system, max_len, step_cap)
    if report.verdict != completeness.COMPLETE:
        raise InputError(f"{label} is not verified complete (verdict: {report.verdict})")


def _cmd_check(args: argparse.Namespace) -> int:
    presentation = _load(args.file)
    report = completeness.verify_complete(
        presentation.system, args.max_len, args.step_cap
    )
    term = report.termination
    detail = term.certificate or ""
    if term.status == completeness.BOUNDED_VERIFIED:
        detail = f"no reduction cycles among words of length <= {term.depth}"
    if term.status == completeness.COUNTEREXAMPLE and term.cycle:
        detail = " -> ".join(str(w) for w in term.cycle)
    print(f"termination: {term.status}" + (f" ({detail})" if detail else ""))
    conf = report.local_confluence
    if conf.status == completeness.ALL_JOINED:
        print(f"local confluence: all {conf.joined_count} critical pairs joined")
    elif conf.counterexample is not None:
        pair = conf.counterexample
        print(
            f"local confluence: {conf.status} at source '{pair.source}' "
            f"({conf.left_nf} vs {conf.right_nf})"
        )
    else:
        print(f"local confluence: {conf.status}")
    print(f"verdict: {report.verdict}")
    if report.verdict == completeness.COMPLETE:
        return OK
    if report.verdict == completeness.INCOMPLETE:
        return FAILED
    return INCONCLUSIVE


def _cmd_nf(args: argparse.Namespace) -> int:
    presentation = _load(args.file)
    word = _word_from(args.word, presentation.system)
    print(normal_form(word, presentation.system, args.step_cap))
    return OK


def _cmd_letter_intro(args: argparse.Namespace) -> int:
    presentation = _load(args.file)
    _require_complete(presentation.system, args.max_len, args.step_cap, "the input system")
    w0 = _word_from(args.w0, presentation.system)
    result = build_letter_intro(presentation.system, w0, args.name, args.step_cap)
    _write(args.output, Presentation(result.r_s, presentation.complement))
    print(
        f"introduced letter '{result.new_letter.name}' for '{result.w0}'; "
        f"{len(result.r_s.rules)} rules written to {args.output}"
    )
    return OK


def _cmd_prepare(args: argparse.Namespace) -> int:
    presentation = _load(args.file)
    if presentation.complement is None:
        raise InputError("the input file must declare a complement")
    prepared = prepare_presentation(presentation, args.step_cap)
    _write(args.output, prepared)
    print(
        f"prepared presentation with {len(prepared.system.alphabet)} letters, "
        f"{len(prepared.system.rules)} rules, "
        f"{len(prepared.complement.words)} complement letters -> {args.output}"
    )
    return OK


def _prepared(presentation: Presentation, step_cap: int) -> Presentation:
    if (
        satisfies_q1(presentation, step_cap)
        and satisfies_q2(presentation.system)
        and satisfies_q3(presentation.system)
    ):
        return presentation
    return prepare_presentation(presentation, step_cap)


def _cmd_large_sub(args: argparse.Namespace) -> int:
    presentation = _load(args.file)
    if presentation.complement is None:
        raise InputError("the input file must declare a complement")
    prepared = _prepared(presentation, args.step_cap)
    construction = build_construction(prepared, args.step_cap)
    system = construction.r_t
    if args.interreduce:
        system = normalize_q2_q3(system, args.step_cap)
    _write(args.output, Presentation(system))
    d1 = sum(1 for rule in system.rules if "D1" in rule.tags)
    d2 = sum(1 for rule in system.rules if "D2" in rule.tags)
    print(
        f"subsemigroup presentation: {len(system.alphabet)} letters, "
        f"{len(system.rules)} rules ({d1} D1, {d2} D2), "
        f"image bound {construction.n_bound} -> {args.output}"
    )
    return OK


def _reconstruct_tuple(
    s_pres: Presentation, t_pres: Presentation, step_cap: int
) -> CandidateTuple:
    """Rebuild phi/rho for a generated presentation pair.

    The flat format cannot carry functions, so the tuple is recovered by
    re-running the deterministic construction from the source file and
    matching the result (as generated, or interreduced) against the
    target file.
    """
    target_rules = set(t_pres.system.rules)
    target_names = set(t_pres.system.alphabet.names())
    if s_pres.complement is not None and s_pres.complement.words:
        prepared = _prepared(s_pres, step_cap)
        construction = build_construction(prepared, step_cap)
        for system in (construction.r_t, normalize_q2_q3(construction.r_t, step_cap)):
            if set(system.rules) == target_rules and set(system.alphabet.names()) == target_names:
                return construction.as_candidate_tuple(system)
        raise InputError(
            "the target file does not match the construction generated from "
            "the source file"
        )
    _require_complete(s_pres.system, completeness.DEFAULT_SEARCH_LEN, step_cap, "the source system")
    new_names = target_names - set(s_pres.system.alphabet.names())
    if len(new_names) != 1:
        raise InputError(
            "expected exactly one introduced letter in the target alphabet, "
            f"found {sorted(new_names) or 'none'}"
        )
    s_name = new_names.pop()
    s_letter = t_pres.system.alphabet.get(s_name)
    candidates = [
        rule.lhs
        for rule in t_pres.system.rules
        if rule.rhs == Word((s_letter,)) and all(l.name != s_name for l in rule.lhs)
    ]
    for w0 in candidates:
        try:
            result = build_letter_intro(
                s_pres.system, s_pres.system.alphabet.word(w0.names()), s_name, step_cap
            )
        except (InputError, PreconditionError):
            continue
        if set(result.r_s.rules) == target_rules and set(result.b_alphabet.names()) == target_names:
            return result.as_candidate_tuple()
    raise InputError(
        "the target file does not match any letter introduction generated "
        "from the source file"
    )


def _cmd_verify_tuple(args: argparse.Namespace) -> int:
    tup = _reconstruct_tuple(_load(args.s_file), _load(args.t_file), args.step_cap)
    report = check_p1_to_p6(tup, args.bound_a, args.bound_b, args.step_cap)
    for res in report.results:
        line = f"{res.name}: {res.status}"
        if res.status == "verified":
            line += f" (bound {res.bound}, {res.witness_count} witnesses)"
        elif res.counterexample:
            line += " at " + " / ".join(f"'{w}'" for w in res.counterexample)
        if res.note:
            line += f" [{res.note}]"
        print(line)
    print(f"overall: {'verified' if report.overall else 'not verified'}")
    if report.overall:
        return OK
    if any(res.status == "counterexample" for res in report.results):
        return FAILED
    return INCONCLUSIVE


def _cmd_verify_iso(args: argparse.Namespace) -> int:
    tup = _reconstruct_tuple(_load(args.s_file), _load(args.t_file), args.step_cap)
    report = check_isomorphism_slice(tup, args.bound, args.step_cap)
    print(f"slice bound: {report.slice_bound}")
    print(f"T-classes in slice: {report.t_class_count}")
    print(f"distinct images: {report.image_count}")
    print(f"forward injective: {'yes' if report.forward_injective else 'no'}")
    print(f"slice surjective: {'yes' if report.slice_surjective else 'no'}")
    print(f"mismatches: {len(report.mismatches)}")
    for mismatch in report.mismatches[:10]:
        print("  " + " / ".join(str(part) for part in mismatch))
    return OK if not report.mismatches else FAILED


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frs",
        description="Finite complete rewriting systems for semigroups and "
        "their large subsemigroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP)

    p = sub.add_parser("check", help="completeness report for a system")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=completeness.DEFAULT_SEARCH_LEN)
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("nf", help="normal form of a word")
    p.add_argument("file")
    p.add_argument("--word", required=True, help="whitespace-separated letters")
    common(p)
    p.set_defaults(func=_cmd_nf)

    p = sub.add_parser("letter-intro", help="name an irreducible word by a fresh letter")
    p.add_argument("file")
    p.add_argument("--w0", required=True, help="the word to name")
    p.add_argument("--name", default="s", help="preferred fresh letter name")
    p.add_argument("--max-len", type=int, default=completeness.DEFAULT_SEARCH_LEN)
    p.add_argument("-o", "--output", required=True)
    common(p)
    p.set_defaults(func=_cmd_letter_intro)

    p = sub.add_parser("prepare", help="letterize the complement and interreduce")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    common(p)
    p.set_defaults(func=_cmd_prepare)

    p = sub.add_parser("large-sub", help="construct the subsemigroup presentation")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--interreduce", action="store_true")
    common(p)
    p.set_defaults(func=_cmd_large_sub)

    p = sub.add_parser("verify-tuple", help="check properties P1-P6 of a generated pair")
    p.add_argument("s_file")
    p.add_argument("t_file")
    p.add_argument("--bound-a", type=int, default=8)
    p.add_argument("--bound-b", type=int, default=5)
    common(p)
    p.set_defaults(func=_cmd_verify_tuple)

    p = sub.add_parser("verify-iso", help="check the bounded slice isomorphism")
    p.add_argument("s_file")
    p.add_argument("t_file")
    p.add_argument("--bound", type=int, default=6)
    common(p)
    p.set_defaults(func=_cmd_verify_iso)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except NonTerminationError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return INCONCLUSIVE
    except InternalError as exc:
        print(f"internal contradiction: {exc}", file=sys.stderr)
        return FAILED
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except PreconditionError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
