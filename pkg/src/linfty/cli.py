"""Command-line entry points.

Five commands over problem files (or builtin example names in place of a
file path):

  validate    run every axiom and well-formedness check
  model       build, twist, truncate, and report homotopy invariants
  dualize     free-algebra dictionary in either direction
  crosscheck  compare map-space brackets against the derivation complex
  example     materialize a builtin instance as a problem file

Exit codes: 0 success, 2 a check failed, 3 a bracket series could not be
certified finite, 4 unreadable input.  LINFTY_WINDOW="lo:hi" replaces the
default degree window.  All output is deterministic; `--format records`
switches the reporting commands to line-oriented machine output.
"""

from __future__ import annotations

import argparse
import os
import sys

from .coalgebra import validate_coalgebra
from .convolution import (
    build_convolution,
    mapping_space_invariants,
    mc_check,
    mc_defects,
    truncate,
    twist_convolution,
)
from .derivations import crosscheck as run_crosscheck
from .errors import (
    BudgetExceeded,
    DegreeError,
    FormatError,
    LinftyError,
    NotMaurerCartan,
    SeriesTruncation,
    ValidationError,
)
from .examples import BUILTIN_NAMES, builtin
from .linfinity import check_jacobi
from .problemfile import ProblemFile, Options, dump, dumps, from_example, load
from .spaces import DEFAULT_WINDOW, GradedLinearMap, GradedVector, Window
from .sullivan import cdga_of, linfty_of


def _env_window() -> Window:
    raw = os.environ.get("LINFTY_WINDOW")
    if raw is None:
        return None
    parts = raw.split(":")
    try:
        lo, hi = (int(p) for p in parts)
        return Window(lo, hi)
    except (ValueError, LinftyError):
        raise FormatError(
            "LINFTY_WINDOW must look like 'lo:hi', got %r" % raw
        ) from None


def _resolve_window(pf: ProblemFile, fallback: Window) -> Window:
    if pf.window is not None:
        return pf.window
    env = _env_window()
    return env if env is not None else fallback


def _load_problem(token: str) -> ProblemFile:
    if not os.path.exists(token):
        try:
            return from_example(builtin(token))
        except FormatError:
            pass
    return load(token)


def _normalize(vec: GradedVector) -> GradedVector:
    for _, coeff in vec.items():
        if coeff < 0:
            return vec.scale(-1)
        return vec
    return vec


def _fmt_vector(vec: GradedVector) -> str:
    items = _normalize(vec).items()
    if not items:
        return "0"
    parts = []
    for name, coeff in items:
        mag = -coeff if coeff < 0 else coeff
        body = name if mag == 1 else "%s %s" % (mag, name)
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(parts)


def _phi_or_zero(pf: ProblemFile) -> GradedLinearMap:
    if pf.phi is not None:
        return pf.phi
    return GradedLinearMap(pf.coalgebra.space, pf.target.space, -1)


def _options(pf: ProblemFile) -> Options:
    return pf.options if pf.options is not None else Options()


# -- commands -------------------------------------------------------------


def cmd_validate(args) -> int:
    pf = _load_problem(args.file)
    problems = []
    if pf.coalgebra is not None:
        problems += validate_coalgebra(pf.coalgebra)
    if pf.target is not None:
        for w in check_jacobi(pf.target, n_max=4):
            problems.append(
                "jacobi identity fails at n=%d on (%s)"
                % (w.arity, ", ".join(w.names))
            )
    if pf.sullivan is not None:
        problems += pf.sullivan.check()
    if pf.phi is not None:
        for cname, defect in mc_defects(pf.coalgebra, pf.target, pf.phi):
            problems.append(
                "mc curvature is nonzero on %s: %s" % (cname, _fmt_vector(defect))
            )
    if pf.coalgebra is None and pf.target is None and pf.sullivan is None:
        problems.append("nothing to validate: no coalgebra, target or sullivan")
    for line in problems:
        print("problem:", line)
    if problems:
        print("validation failed (%d problems)" % len(problems))
        return 2
    print("ok")
    return 0


def cmd_model(args) -> int:
    pf = _load_problem(args.file)
    if pf.coalgebra is None or pf.target is None:
        raise FormatError("model needs both a coalgebra and a target")
    opts = _options(pf)
    window = _resolve_window(pf, DEFAULT_WINDOW)
    pointed = args.pointed or opts.pointed
    kind = "cover" if args.cover else "nonneg"
    phi = _phi_or_zero(pf)

    conv = build_convolution(pf.coalgebra, pf.target, reduced=pointed, window=window)
    if phi.columns:
        conv = twist_convolution(conv, mc_check(conv, phi), j_max=opts.j_max)
    trunc = truncate(conv, kind)
    record = mapping_space_invariants(trunc)

    records = args.format == "records"
    title = pf.name or args.file
    if not records:
        print(
            "model %s: %s, %s truncation, window [%d, %d]"
            % (title, "pointed" if pointed else "free", kind, window.lo, window.hi)
        )
        print("degree  dim  trusted  classes")
    for n in sorted(record.dims):
        cls = ", ".join(
            "%s = %s" % (cname, _fmt_vector(record.reps[cname]))
            for cname in record.classes[n]
        )
        if records:
            print("dim %d %d %s" % (n, record.dims[n], int(record.trusted[n])))
            for cname in record.classes[n]:
                print("class %s %d %s" % (cname, n, _fmt_vector(record.reps[cname])))
        else:
            print(
                "%-7d %-4d %-8s %s"
                % (n, record.dims[n], "yes" if record.trusted[n] else "no", cls)
            )
    model = record.model_twisted
    rows = list(model.entries())
    if records:
        print("nil twisted %s" % record.nil_twisted)
        print("nil untwisted %s" % record.nil_untwisted)
        print("wh twisted %s" % record.wh_twisted)
        print("wh untwisted %s" % record.wh_untwisted)
        for _, names, value in rows:
            print("bracket %s %s" % (",".join(names), _fmt_vector(value)))
    else:
        print(
            "nilpotency: twisted %s, untwisted %s"
            % (record.nil_twisted, record.nil_untwisted)
        )
        print(
            "whitehead: twisted %s, untwisted %s"
            % (record.wh_twisted, record.wh_untwisted)
        )
        if rows:
            for _, names, value in rows:
                print("  [%s] = %s" % (", ".join(names), _fmt_vector(value)))
        else:
            print("all induced brackets vanish")
    return 0


def cmd_dualize(args) -> int:
    pf = _load_problem(args.file)
    records = args.format == "records"
    if args.direction == "l2a":
        if pf.target is None:
            raise FormatError("dualize l2a needs a target table")
        A = cdga_of(pf.target)
        gens = A.generators
        if records:
            for name in gens.names:
                print("generator %s %d" % (name, gens.degree(name)))
            for gen in gens.names:
                for word, coeff in sorted(A.d_generator(gen).items()):
                    print("d %s %s %s" % (gen, ".".join(word), coeff))
        else:
            print(
                "free algebra on: "
                + ", ".join("%s (%d)" % (n, gens.degree(n)) for n in gens.names)
            )
            some = False
            for gen in gens.names:
                rows = sorted(A.d_generator(gen).items())
                if rows:
                    some = True
                    body = " + ".join(
                        ("" if c == 1 else "%s " % c) + " ".join(word)
                        for word, c in rows
                    )
                    print("d(%s) = %s" % (gen, body))
            if not some:
                print("differential is zero")
        return 0
    # a2l
    if pf.sullivan is None:
        raise FormatError("dualize a2l needs a sullivan section")
    L = linfty_of(pf.sullivan)
    if records:
        for name in L.space.names:
            print("basis %s %d" % (name, L.space.degree(name)))
        for arity, names, value in L.entries():
            print(
                "bracket %d %s %s"
                % (arity, ",".join(names), _fmt_vector(value))
            )
    else:
        print(
            "bracket table on: "
            + ", ".join(
                "%s (%d)" % (n, L.space.degree(n)) for n in L.space.names
            )
        )
        rows = list(L.entries())
        for arity, names, value in rows:
            print(
                "  l%d(%s) = %s"
                % (arity, ", ".join(names), _fmt_vector(value))
            )
        if not rows:
            print("all brackets vanish")
    return 0


def cmd_crosscheck(args) -> int:
    pf = _load_problem(args.file)
    if pf.coalgebra is None or pf.target is None:
        raise FormatError("crosscheck needs both a coalgebra and a target")
    opts = _options(pf)
    window = _resolve_window(pf, Window(-2, 10))
    report = run_crosscheck(
        pf.coalgebra,
        pf.target,
        _phi_or_zero(pf),
        window=window,
        arity_max=opts.max_arity,
        j_max=opts.j_max,
    )
    if args.format == "records":
        print("compared %d" % report.compared)
        print("mismatches %d" % len(report.mismatches))
        print("map_defects %d" % len(report.morphism_defects))
        print("jacobi_failures %d" % len(report.jacobi))
        for m in report.mismatches:
            print(
                "mismatch %d %s map=%s derivation=%s"
                % (
                    m.arity,
                    ",".join(m.names),
                    _fmt_vector(m.map_side),
                    _fmt_vector(m.derivation_side),
                )
            )
    else:
        print(report.summary())
    return 0 if report.passed else 2


def cmd_example(args) -> int:
    pf = from_example(builtin(args.name))
    if args.emit:
        dump(pf, args.emit)
        print("wrote %s" % args.emit)
    else:
        sys.stdout.write(dumps(pf))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linfty",
        description="exact bracket calculus on mapping spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run all axiom checks on a problem file")
    p.add_argument("file", help="problem file path or builtin example name")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("model", help="build, twist, truncate and report invariants")
    p.add_argument("file", help="problem file path or builtin example name")
    p.add_argument("--pointed", action="store_true", help="use the reduced map space")
    p.add_argument(
        "--cover", action="store_true",
        help="truncate above degree one instead of degree zero",
    )
    p.add_argument("--format", choices=("table", "records"), default="table")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("dualize", help="free-algebra dictionary in either direction")
    p.add_argument("file", help="problem file path or builtin example name")
    p.add_argument("--direction", choices=("l2a", "a2l"), required=True)
    p.add_argument("--format", choices=("table", "records"), default="table")
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("crosscheck", help="compare against the derivation complex")
    p.add_argument("file", help="problem file path or builtin example name")
    p.add_argument("--format", choices=("table", "records"), default="table")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("example", help="materialize a builtin example")
    p.add_argument("name", help="one of: %s" % ", ".join(BUILTIN_NAMES))
    p.add_argument("--emit", metavar="FILE", help="write the problem file here")
    p.set_defaults(func=cmd_example)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4
    except SeriesTruncation as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except (ValidationError, DegreeError, NotMaurerCartan, BudgetExceeded) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
