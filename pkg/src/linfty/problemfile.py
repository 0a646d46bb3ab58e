"""Structured problem files: parsing, validation and canonical output.

A problem file is a JSON document, format_version "1", describing some of:

  coalgebra   basis/counit/diagonal(/differential) of a DGCoalgebra
  target      basis/max_arity/brackets of a bracket table
  sullivan    generators/differential of a free commutative algebra
  mc          a degree -1 coalgebra-to-target map as [element, image, coeff]
  window      [lo, hi] degree window for map-space builds
  options     max_arity / j_max / pointed knobs for the CLI

All coefficients are exact: integers or "p/q" strings.  Floats are rejected
outright so no binary rounding can leak in.  Serialization is canonical --
fixed key order, basis-order rows, str(Fraction) coefficients -- so that
emit(parse(emit(x))) == emit(x) byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .coalgebra import DGCoalgebra
from .errors import FormatError
from .examples import Example
from .linfinity import LInfinity
from .spaces import GradedLinearMap, GradedSpace, Window
from .sullivan import SullivanCDGA

FORMAT_VERSION = "1"

_TOP_KEYS = (
    "format_version", "name", "coalgebra", "target", "sullivan",
    "mc", "window", "options",
)


@dataclass
class Options:
    max_arity: int = None
    j_max: int = 16
    pointed: bool = False


@dataclass
class ProblemFile:
    format_version: str = FORMAT_VERSION
    name: str = None
    coalgebra: DGCoalgebra = None
    target: LInfinity = None
    sullivan: SullivanCDGA = None
    phi: GradedLinearMap = None
    window: Window = None
    options: Options = None


def _fail(path, message):
    raise FormatError("%s: %s" % (path, message))


def _want(obj, path, kind, label):
    if not isinstance(obj, kind) or isinstance(obj, bool):
        _fail(path, "expected %s, got %s" % (label, type(obj).__name__))
    return obj


def _coeff(value, path) -> Fraction:
    if isinstance(value, bool):
        _fail(path, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            _fail(path, "cannot read %r as p/q" % value)
    if isinstance(value, float):
        _fail(path, "floats are not accepted; write the rational as a string")
    _fail(path, "expected a rational, got %s" % type(value).__name__)


def _basis(rows, path):
    out = []
    for i, row in enumerate(_want(rows, path, list, "a list")):
        here = "%s[%d]" % (path, i)
        row = _want(row, here, list, "a [name, degree] pair")
        if len(row) != 2:
            _fail(here, "expected a [name, degree] pair")
        name = _want(row[0], here, str, "a name string")
        degree = _want(row[1], here, int, "an integer degree")
        out.append((name, degree))
    return out


def _reject_floats(node, path):
    if isinstance(node, float):
        _fail(path, "floats are not accepted; write the rational as a string")
    if isinstance(node, dict):
        for key, value in node.items():
            _reject_floats(value, "%s.%s" % (path, key))
    if isinstance(node, list):
        for i, value in enumerate(node):
            _reject_floats(value, "%s[%d]" % (path, i))


def _parse_coalgebra(node, path) -> DGCoalgebra:
    node = _want(node, path, dict, "an object")
    extra = set(node) - {"basis", "counit", "diagonal", "differential"}
    if extra:
        _fail(path, "unknown keys %s" % ", ".join(sorted(extra)))
    if "basis" not in node or "counit" not in node or "diagonal" not in node:
        _fail(path, "needs basis, counit and diagonal")
    space = GradedSpace(_basis(node["basis"], path + ".basis"))
    counit = _want(node["counit"], path + ".counit", str, "a name string")

    diagonal = {}
    dnode = _want(node["diagonal"], path + ".diagonal", dict, "an object")
    for name, rows in dnode.items():
        here = "%s.diagonal.%s" % (path, name)
        if name not in space:
            _fail(here, "element is not in the basis")
        pairs = {}
        for i, row in enumerate(_want(rows, here, list, "a list")):
            rp = "%s[%d]" % (here, i)
            row = _want(row, rp, list, "a [left, right, coeff] triple")
            if len(row) != 3:
                _fail(rp, "expected a [left, right, coeff] triple")
            left = _want(row[0], rp, str, "a name string")
            right = _want(row[1], rp, str, "a name string")
            for side in (left, right):
                if side not in space:
                    _fail(rp, "element %r is not in the basis" % side)
            key = (left, right)
            pairs[key] = pairs.get(key, Fraction(0)) + _coeff(row[2], rp)
        diagonal[name] = pairs

    differential = {}
    fnode = node.get("differential", {})
    fnode = _want(fnode, path + ".differential", dict, "an object")
    for name, rows in fnode.items():
        here = "%s.differential.%s" % (path, name)
        if name not in space:
            _fail(here, "element is not in the basis")
        col = {}
        for i, row in enumerate(_want(rows, here, list, "a list")):
            rp = "%s[%d]" % (here, i)
            row = _want(row, rp, list, "a [target, coeff] pair")
            if len(row) != 2:
                _fail(rp, "expected a [target, coeff] pair")
            tgt = _want(row[0], rp, str, "a name string")
            if tgt not in space:
                _fail(rp, "element %r is not in the basis" % tgt)
            col[tgt] = col.get(tgt, Fraction(0)) + _coeff(row[1], rp)
        differential[name] = col

    try:
        return DGCoalgebra(space, counit, diagonal, differential)
    except Exception as exc:
        _fail(path, str(exc))


def _parse_target(node, path) -> LInfinity:
    node = _want(node, path, dict, "an object")
    extra = set(node) - {"basis", "max_arity", "brackets"}
    if extra:
        _fail(path, "unknown keys %s" % ", ".join(sorted(extra)))
    if "basis" not in node or "max_arity" not in node:
        _fail(path, "needs basis and max_arity")
    space = GradedSpace(_basis(node["basis"], path + ".basis"))
    max_arity = _want(node["max_arity"], path + ".max_arity", int, "an integer")

    entries = []
    rows = _want(node.get("brackets", []), path + ".brackets", list, "a list")
    for i, row in enumerate(rows):
        rp = "%s.brackets[%d]" % (path, i)
        row = _want(row, rp, list, "an [arity, names, value, coeff] row")
        if len(row) != 4:
            _fail(rp, "expected an [arity, names, value, coeff] row")
        arity = _want(row[0], rp, int, "an integer arity")
        names = _want(row[1], rp, list, "a list of names")
        names = tuple(
            _want(n, "%s[1][%d]" % (rp, j), str, "a name string")
            for j, n in enumerate(names)
        )
        if len(names) != arity:
            _fail(rp, "arity %d does not match %d slots" % (arity, len(names)))
        value = _want(row[2], rp, str, "a value name")
        entries.append((arity, names, {value: _coeff(row[3], rp)}))

    try:
        return LInfinity(space, max_arity, entries)
    except Exception as exc:
        _fail(path, str(exc))


def _parse_sullivan(node, path) -> SullivanCDGA:
    node = _want(node, path, dict, "an object")
    extra = set(node) - {"generators", "differential"}
    if extra:
        _fail(path, "unknown keys %s" % ", ".join(sorted(extra)))
    if "generators" not in node:
        _fail(path, "needs generators")
    gens = GradedSpace(_basis(node["generators"], path + ".generators"))
    diff = {}
    fnode = _want(node.get("differential", {}), path + ".differential", dict, "an object")
    for gen, rows in fnode.items():
        here = "%s.differential.%s" % (path, gen)
        if gen not in gens:
            _fail(here, "generator is not listed")
        acc = []
        for i, row in enumerate(_want(rows, here, list, "a list")):
            rp = "%s[%d]" % (here, i)
            row = _want(row, rp, list, "a [word, coeff] pair")
            if len(row) != 2:
                _fail(rp, "expected a [word, coeff] pair")
            word = _want(row[0], rp, list, "a list of generator names")
            word = tuple(
                _want(w, "%s[0][%d]" % (rp, j), str, "a name string")
                for j, w in enumerate(word)
            )
            for w in word:
                if w not in gens:
                    _fail(rp, "generator %r is not listed" % w)
            acc.append((word, _coeff(row[1], rp)))
        diff[gen] = acc
    try:
        return SullivanCDGA(gens, diff)
    except Exception as exc:
        _fail(path, str(exc))


def _parse_mc(rows, path, C: DGCoalgebra, L: LInfinity) -> GradedLinearMap:
    if C is None or L is None:
        _fail(path, "mc needs both a coalgebra and a target")
    columns = {}
    for i, row in enumerate(_want(rows, path, list, "a list")):
        rp = "%s[%d]" % (path, i)
        row = _want(row, rp, list, "an [element, image, coeff] triple")
        if len(row) != 3:
            _fail(rp, "expected an [element, image, coeff] triple")
        c = _want(row[0], rp, str, "a name string")
        x = _want(row[1], rp, str, "a name string")
        if c not in C.space:
            _fail(rp, "element %r is not in the coalgebra basis" % c)
        if x not in L.space:
            _fail(rp, "element %r is not in the target basis" % x)
        col = columns.setdefault(c, {})
        col[x] = col.get(x, Fraction(0)) + _coeff(row[2], rp)
    try:
        return GradedLinearMap(C.space, L.space, -1, columns)
    except Exception as exc:
        _fail(path, str(exc))


def _parse_window(row, path) -> Window:
    row = _want(row, path, list, "a [lo, hi] pair")
    if len(row) != 2:
        _fail(path, "expected a [lo, hi] pair")
    lo = _want(row[0], path, int, "an integer")
    hi = _want(row[1], path, int, "an integer")
    try:
        return Window(lo, hi)
    except Exception as exc:
        _fail(path, str(exc))


def _parse_options(node, path) -> Options:
    node = _want(node, path, dict, "an object")
    extra = set(node) - {"max_arity", "j_max", "pointed"}
    if extra:
        _fail(path, "unknown keys %s" % ", ".join(sorted(extra)))
    out = Options()
    if "max_arity" in node and node["max_arity"] is not None:
        out.max_arity = _want(node["max_arity"], path + ".max_arity", int, "an integer")
    if "j_max" in node:
        out.j_max = _want(node["j_max"], path + ".j_max", int, "an integer")
    if "pointed" in node:
        value = node["pointed"]
        if not isinstance(value, bool):
            _fail(path + ".pointed", "expected true or false")
        out.pointed = value
    return out


def loads(text: str, source: str = "problem") -> ProblemFile:
    def bad_constant(token):
        raise FormatError("%s: %r is not a rational" % (source, token))

    try:
        doc = json.loads(text, parse_constant=bad_constant)
    except FormatError:
        raise
    except json.JSONDecodeError as exc:
        raise FormatError("%s: %s" % (source, exc)) from None
    doc = _want(doc, source, dict, "a JSON object")
    _reject_floats(doc, source)
    extra = set(doc) - set(_TOP_KEYS)
    if extra:
        _fail(source, "unknown keys %s" % ", ".join(sorted(extra)))
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        _fail(source, "format_version must be %r, got %r" % (FORMAT_VERSION, version))

    out = ProblemFile()
    if "name" in doc:
        out.name = _want(doc["name"], source + ".name", str, "a string")
    if "coalgebra" in doc:
        out.coalgebra = _parse_coalgebra(doc["coalgebra"], source + ".coalgebra")
    if "target" in doc:
        out.target = _parse_target(doc["target"], source + ".target")
    if "sullivan" in doc:
        out.sullivan = _parse_sullivan(doc["sullivan"], source + ".sullivan")
    if "mc" in doc:
        out.phi = _parse_mc(doc["mc"], source + ".mc", out.coalgebra, out.target)
    if "window" in doc:
        out.window = _parse_window(doc["window"], source + ".window")
    if "options" in doc:
        out.options = _parse_options(doc["options"], source + ".options")
    return out


def load(path: str) -> ProblemFile:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise FormatError("%s: %s" % (path, exc.strerror or exc)) from None
    return loads(text, source=path)


def _c(value: Fraction) -> str:
    return str(Fraction(value))


def _emit_coalgebra(C: DGCoalgebra):
    idx = C.space.index
    out = {"basis": [[n, d] for n, d in C.space.basis()], "counit": C.counit}
    diagonal = {}
    for name in C.space.names:
        rows = C.diagonal_table.get(name)
        if not rows:
            continue
        diagonal[name] = [
            [l, r, _c(coeff)]
            for (l, r), coeff in sorted(
                rows.items(), key=lambda kv: (idx(kv[0][0]), idx(kv[0][1]))
            )
        ]
    out["diagonal"] = diagonal
    differential = {}
    for name in C.space.names:
        col = C.differential.column(name)
        if not col.is_zero():
            differential[name] = [[t, _c(coeff)] for t, coeff in col.items()]
    if differential:
        out["differential"] = differential
    return out


def _emit_target(L: LInfinity):
    rows = []
    for arity, names, value in L.entries():
        for tgt, coeff in value.items():
            rows.append([arity, list(names), tgt, _c(coeff)])
    return {
        "basis": [[n, d] for n, d in L.space.basis()],
        "max_arity": L.max_arity,
        "brackets": rows,
    }


def _emit_sullivan(A: SullivanCDGA):
    out = {"generators": [[n, d] for n, d in A.generators.basis()]}
    differential = {}
    for gen in A.generators.names:
        rows = A.d_generator(gen)
        if rows:
            differential[gen] = [
                [list(word), _c(coeff)] for word, coeff in sorted(rows.items())
            ]
    if differential:
        out["differential"] = differential
    return out


def _emit_mc(phi: GradedLinearMap, C: DGCoalgebra, L: LInfinity):
    rows = []
    for c in C.space.names:
        for x, coeff in phi.column(c).items():
            rows.append([c, x, _c(coeff)])
    return rows


def dumps(pf: ProblemFile) -> str:
    doc = {"format_version": pf.format_version}
    if pf.name is not None:
        doc["name"] = pf.name
    if pf.coalgebra is not None:
        doc["coalgebra"] = _emit_coalgebra(pf.coalgebra)
    if pf.target is not None:
        doc["target"] = _emit_target(pf.target)
    if pf.sullivan is not None:
        doc["sullivan"] = _emit_sullivan(pf.sullivan)
    if pf.phi is not None:
        rows = _emit_mc(pf.phi, pf.coalgebra, pf.target)
        if rows:
            doc["mc"] = rows
    if pf.window is not None:
        doc["window"] = [pf.window.lo, pf.window.hi]
    if pf.options is not None:
        doc["options"] = {
            "max_arity": pf.options.max_arity,
            "j_max": pf.options.j_max,
            "pointed": pf.options.pointed,
        }
    return json.dumps(doc, indent=2) + "\n"


def dump(pf: ProblemFile, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(pf))


def from_example(ex: Example) -> ProblemFile:
    return ProblemFile(
        name=ex.name,
        coalgebra=ex.coalgebra,
        target=ex.target,
        phi=ex.phi if ex.phi.columns else None,
    )
