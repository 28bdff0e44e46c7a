"""JSON documents for complexes, wallspaces and automorphisms.

All three carry ``formatVersion`` (currently 1). Serialisation is canonical:
fixed key order, vertices sorted as bit-strings, weights as normalised
decimal strings and omitted when every weight is 1.
"""

import json
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from importlib import resources

from .complex import CubeComplex, MAX_HYPERPLANES, normalise_weight
from .duality import WallSpace
from .errors import CubicalError, InvariantViolation, ParseError

FORMAT_VERSION = 1


def _load(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"line {e.lineno} column {e.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "document")
    version = doc.get("formatVersion")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported formatVersion {version!r}", "formatVersion")
    return doc


def _field(doc, name, kind):
    if name not in doc:
        raise ParseError("missing field", name)
    value = doc[name]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ParseError(f"expected an integer, got {value!r}", name)
    if kind is list and not isinstance(value, list):
        raise ParseError(f"expected an array, got {type(value).__name__}", name)
    return value


def _dump(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- weights -------------------------------------------------------------------


def format_weight(w):
    """Shortest decimal spelling of a weight; ``p/q`` when no finite decimal exists."""
    q = Fraction(w)
    d = q.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    text = format(Decimal(q.numerator) / Decimal(q.denominator), "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def parse_weight(value, where):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"weights are decimal strings, got {value!r}", where)
    try:
        if isinstance(value, str) and "/" in value:
            w = Fraction(value)
        else:
            w = Decimal(str(value))
            if not w.is_finite():
                raise InvalidOperation
        return normalise_weight(w)
    except (InvalidOperation, ValueError, ZeroDivisionError):
        raise InvariantViolation("positive-weight", f"{value!r} is not a positive number", where) from None


# -- complexes -----------------------------------------------------------------


def parse_complex(text):
    """Read a complex document. Shapes are checked here; the CAT(0) certificate is not."""
    doc = _load(text)
    n = _field(doc, "n_hyperplanes", int)
    if n < 0:
        raise InvariantViolation("non-negative-count", "n_hyperplanes is negative", "n_hyperplanes")
    raw = _field(doc, "vertices", list)
    if not raw:
        raise InvariantViolation("non-empty", "no vertices", "vertices")
    vertices = []
    for k, s in enumerate(raw):
        where = f"vertices[{k}]"
        if not isinstance(s, str) or any(c not in "01" for c in s):
            raise ParseError(f"expected a bit-string, got {s!r}", where)
        if len(s) != n:
            raise InvariantViolation("bit-string-length", f"{s!r} has length {len(s)}, expected {n}", where)
        vertices.append(s)
    weights = None
    if doc.get("weights") is not None:
        ws = _field(doc, "weights", list)
        if len(ws) != n:
            raise InvariantViolation("weight-count", f"{len(ws)} weights for {n} hyperplanes", "weights")
        weights = [parse_weight(w, f"weights[{k}]") for k, w in enumerate(ws)]
    return CubeComplex(n, vertices, weights, wide=n > MAX_HYPERPLANES)


def complex_document(X):
    doc = {"formatVersion": FORMAT_VERSION, "n_hyperplanes": X.n}
    if X.is_weighted:
        doc["weights"] = [format_weight(w) for w in X.weights]
    doc["vertices"] = [X.bits(v) for v in X.sorted_vertices]
    return doc


def serialize_complex(X):
    return _dump(complex_document(X))


# -- wallspaces ----------------------------------------------------------------


def parse_wallspace(text):
    """Read a wallspace document; returns ``(WallSpace, base_point)``."""
    doc = _load(text)
    size = _field(doc, "ground_size", int)
    walls = _field(doc, "walls", list)
    blocks = []
    for k, w in enumerate(walls):
        where = f"walls[{k}]"
        if not isinstance(w, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in w):
            raise ParseError("each wall is an array of point indices", where)
        blocks.append(w)
    base = doc.get("base_point", 0)
    if isinstance(base, bool) or not isinstance(base, int) or not 0 <= base < size:
        raise InvariantViolation("base-point-in-ground", f"base point {base!r} is not a ground point", "base_point")
    try:
        ws = WallSpace(size, tuple(blocks))
    except CubicalError as e:
        raise InvariantViolation("proper-distinct-walls", str(e), f"walls[{e.witness}]") from None
    return ws, base


def serialize_wallspace(ws, base_point=0):
    doc = {
        "formatVersion": FORMAT_VERSION,
        "ground_size": ws.ground_size,
        "walls": [sorted(b) for b in ws.walls],
        "base_point": base_point,
    }
    return _dump(doc)


# -- automorphisms -------------------------------------------------------------


def parse_automorphism(text):
    """Read the signed one-based halfspace map of an automorphism document."""
    doc = _load(text)
    entries = _field(doc, "halfspace_map", list)
    for k, e in enumerate(entries):
        if isinstance(e, bool) or not isinstance(e, int) or e == 0:
            raise ParseError(f"entries are nonzero signed integers, got {e!r}", f"halfspace_map[{k}]")
    if sorted(abs(e) for e in entries) != list(range(1, len(entries) + 1)):
        raise InvariantViolation("permutation", "underlying index map is not a permutation", "halfspace_map")
    return entries


def serialize_automorphism(g):
    return _dump({"formatVersion": FORMAT_VERSION, "halfspace_map": g.halfspace_map})


def canonicalise(text, kind="complex"):
    """Re-serialise a document in canonical form."""
    if kind == "complex":
        return serialize_complex(parse_complex(text))
    if kind == "wallspace":
        return serialize_wallspace(*parse_wallspace(text))
    if kind == "automorphism":
        entries = parse_automorphism(text)
        return _dump({"formatVersion": FORMAT_VERSION, "halfspace_map": entries})
    raise ValueError(f"unknown document kind {kind!r}")


# -- fixtures ------------------------------------------------------------------


FIXTURES = ("p1", "p2", "p3", "q2", "t3", "cube3", "p5", "ladder", "threesquares", "star4")


def fixture_text(name):
    return resources.files("cubical.fixtures").joinpath(f"{name}.json").read_text(encoding="utf-8")


def load_fixture(name):
    """One of the bundled example complexes, by name (see ``FIXTURES``)."""
    return parse_complex(fixture_text(name))
