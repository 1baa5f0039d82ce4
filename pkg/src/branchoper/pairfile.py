"""Reading and writing pair files (JSON with canonical rational-function strings).

Layout::

    {
      "format": "branchoper-pair/1",
      "variable": "z",
      "lattice": "adapted",
      "divisor": ["0"],
      "B": {"twist": 2, "matrix": [["...", "...", "..."], ...]},
      "D": [["...", "...", "..."], ...],
      "frames": {"0": [[l2], [l1], [l0]]}        (optional)
    }

Entries are expressions in the variable with + - * / ^ and parentheses, scalars
are Gaussian rationals written like "1/2-3*i". Writing always emits the
canonical form, so read -> write is byte stable after one pass.
"""

from __future__ import annotations

import json

from .branched import PairBD
from .errors import ParseError
from .jets import BundleSymbol, JetFrame
from .linalg import Mat
from .logconn import BranchDivisor, LogConnection, lattice_tag
from .oper import BilinearTwisted
from .parsing import parse_ratfunc, parse_scalar
from .polys import RatFunc

FORMAT = "branchoper-pair/1"


def _locate(text, needle):
    """(line, col) of the first occurrence of needle in text, 1-based."""
    k = text.find(needle)
    if k < 0:
        return None, None
    line = text.count("\n", 0, k) + 1
    col = k - (text.rfind("\n", 0, k) + 1) + 1
    return line, col


def _fail(text, msg, value=None):
    line, col = _locate(text, json.dumps(value)) if value is not None else (None, None)
    raise ParseError(msg, line, col)


def _matrix(text, raw, var, what):
    if not isinstance(raw, list) or len(raw) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in raw):
        _fail(text, f"{what} must be a 3x3 array")
    rows = []
    for r in raw:
        row = []
        for entry in r:
            if not isinstance(entry, str):
                _fail(text, f"{what} entries must be strings", entry)
            try:
                row.append(parse_ratfunc(entry, var))
            except ParseError as exc:
                line, col = _locate(text, json.dumps(entry))
                if line is not None and exc.col is not None:
                    col += exc.col  # skip the opening quote
                raise ParseError(f"bad {what} entry {entry!r}: {exc.args[0].split(' (line')[0]}", line, col) from None
            except ZeroDivisionError:
                _fail(text, f"bad {what} entry {entry!r}: division by zero", entry)
        rows.append(row)
    return Mat._raw(rows)


def loads(text: str) -> PairBD:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise ParseError("pair file must be a JSON object", 1, 1)
    if obj.get("format", FORMAT) != FORMAT:
        _fail(text, f"unsupported format (expected {FORMAT})", obj["format"])
    for key in ("divisor", "B", "D"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}", 1, 1)
    var = obj.get("variable", "z")
    if not isinstance(var, str) or not var.isidentifier() or var == "i":
        _fail(text, "variable must be an identifier other than i", var)
    try:
        tag = lattice_tag(obj.get("lattice", "raw"))
    except ValueError as exc:
        _fail(text, str(exc), obj.get("lattice"))
    pts = []
    if not isinstance(obj["divisor"], list):
        _fail(text, "divisor must be a list")
    for s in obj["divisor"]:
        try:
            pts.append(parse_scalar(s))
        except (ParseError, TypeError, AttributeError):
            _fail(text, f"bad divisor point {s!r}", s)
    try:
        divisor = BranchDivisor(tuple(pts))
    except ValueError as exc:
        _fail(text, str(exc))
    Braw = obj["B"]
    if not isinstance(Braw, dict) or "matrix" not in Braw:
        _fail(text, "B must be an object with a matrix")
    twist = Braw.get("twist", 0)
    if not isinstance(twist, int):
        _fail(text, "twist must be an integer", twist)
    Bm = _matrix(text, Braw["matrix"], var, "B")
    if Bm != Bm.T:
        raise ParseError("B must be symmetric", *_locate(text, '"matrix"'))
    Dm = _matrix(text, obj["D"], var, "D")
    frames = {}
    for key, vecs in (obj.get("frames") or {}).items():
        try:
            frames[parse_scalar(key)] = tuple(tuple(parse_scalar(x) for x in v) for v in vecs)
        except (ParseError, TypeError, AttributeError):
            _fail(text, f"bad frames entry for {key!r}", key)
    D = LogConnection(Dm, divisor, JetFrame(var, BundleSymbol(-1, 1), tag))
    return PairBD(BilinearTwisted(Bm, twist), D, var, frames)


def load(path) -> PairBD:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _fmt(M, var):
    return [[RatFunc.coerce(x).format(var) for x in r] for r in M]


def _mat_text(rows, indent):
    pad = " " * indent
    inner = (",\n" + pad + "  ").join(json.dumps(r) for r in rows)
    return "[\n" + pad + "  " + inner + "\n" + pad + "]"


def dumps(pair: PairBD) -> str:
    """Canonical text: fixed key order, one matrix row per line."""
    var = pair.variable
    lattice = "adapted" if pair.D.frame.tag == "adapted" else "raw"
    lines = [
        "{",
        f'  "B": {{"twist": {pair.B.twist}, "matrix": {_mat_text(_fmt(pair.B.Bmat, var), 2)}}},',
        f'  "D": {_mat_text(_fmt(pair.D.A, var), 2)},',
        f'  "divisor": {json.dumps([p.format() for p in pair.divisor.points])},',
    ]
    if pair.frames:
        fr = {k.format(): [[x.format() for x in v] for v in vecs] for k, vecs in pair.frames.items()}
        lines.append(f'  "frames": {json.dumps(fr, sort_keys=True)},')
    lines += [
        f'  "format": {json.dumps(FORMAT)},',
        f'  "lattice": {json.dumps(lattice)},',
        f'  "variable": {json.dumps(var)}',
        "}",
    ]
    return "\n".join(lines) + "\n"


def dump(pair: PairBD, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(pair))
