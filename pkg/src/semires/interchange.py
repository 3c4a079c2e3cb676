"""JSON interchange for fields, algebras, modules, maps, shapes,
diagrams and differential modules.

Documents carry ``"schema": "semires/v1"`` and a ``"kind"``.  Scalars over
a prime field serialize as integers in ``0..p-1``; rational scalars as
``"num/den"`` strings, so every value survives a round trip bit for bit.
Matrices are row-major lists of rows with explicit ``rows``/``cols`` so
empty shapes are unambiguous.  Decoding is strict: any malformed field
raises InputError naming the JSON path of the offending value.

Canonical bytes (sorted keys, tight separators, one trailing newline)
make equal documents byte-identical, which the command line layer relies
on for reproducible outputs; ``digest`` names documents in error
messages.
"""

import hashlib
import json
from fractions import Fraction

from .algebra import Module, ModuleMap, QuiverAlgebra
from .diagrams import Diagram, DiagramMap
from .diffmod import DifferentialModule
from .errors import InputError
from .fields import FieldSpec
from .matrix import Matrix
from .shape import Shape

SCHEMA = "semires/v1"


def canonical_bytes(doc) -> bytes:
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


def digest(doc) -> str:
    return hashlib.sha256(canonical_bytes(doc)).hexdigest()[:12]


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(
            f"parse-error at line {e.lineno} column {e.colno}: {e.msg}"
        ) from None


def _bad(path, msg):
    raise InputError(f"parse-error at {path}: {msg}")


def _get(doc, key, path, types=None):
    if not isinstance(doc, dict):
        _bad(path, "expected an object")
    if key not in doc:
        _bad(path, f"missing field {key!r}")
    val = doc[key]
    if types is not None and not isinstance(val, types):
        _bad(f"{path}.{key}", f"expected {types}, got {type(val).__name__}")
    return val


def _pairs(doc, key, path):
    val = _get(doc, key, path, list)
    for i, item in enumerate(val):
        if not isinstance(item, list) or len(item) != 2:
            _bad(f"{path}.{key}[{i}]", "expected a [key, value] pair")
    return val


# -- scalars and fields ------------------------------------------------------


def encode_field(field: FieldSpec):
    if field.is_prime_field:
        return {"kind": "prime", "p": field.p}
    return {"kind": "rationals"}


def decode_field(doc, path="field") -> FieldSpec:
    kind = _get(doc, "kind", path, str)
    if kind == "prime":
        return FieldSpec.prime(_get(doc, "p", path, int))
    if kind == "rationals":
        return FieldSpec.rationals()
    _bad(f"{path}.kind", f"unknown field kind {kind!r}")


def encode_scalar(field: FieldSpec, x):
    if field.is_prime_field:
        return int(x)
    fr = Fraction(x)
    return f"{fr.numerator}/{fr.denominator}"


def decode_scalar(field: FieldSpec, doc, path="scalar"):
    if field.is_prime_field:
        if not isinstance(doc, int) or isinstance(doc, bool):
            _bad(path, "prime-field scalar must be an integer")
        if not 0 <= doc < field.p:
            _bad(path, f"scalar {doc} out of range 0..{field.p - 1}")
        return doc
    if isinstance(doc, int) and not isinstance(doc, bool):
        return Fraction(doc)
    if isinstance(doc, str):
        try:
            num, _, den = doc.partition("/")
            return Fraction(int(num), int(den)) if den else Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            _bad(path, f"malformed rational {doc!r}")
    _bad(path, "rational scalar must be an integer or 'num/den' string")


# -- matrices ----------------------------------------------------------------


def encode_matrix(m: Matrix):
    data = m.copy_data()
    return {
        "rows": m.rows,
        "cols": m.cols,
        "data": [
            [encode_scalar(m.field, data[i, j]) for j in range(m.cols)]
            for i in range(m.rows)
        ],
    }


def decode_matrix(field: FieldSpec, doc, path="matrix") -> Matrix:
    rows = _get(doc, "rows", path, int)
    cols = _get(doc, "cols", path, int)
    if rows < 0 or cols < 0:
        _bad(path, "negative matrix shape")
    data = _get(doc, "data", path, list)
    if rows == 0 or cols == 0:
        # the degenerate shapes accept both [] and a list of empty rows
        if data and data != [[] for _ in range(rows)]:
            _bad(f"{path}.data", "nonempty data for an empty matrix shape")
        return Matrix.zeros(field, rows, cols)
    if len(data) != rows:
        _bad(f"{path}.data", f"expected {rows} rows, got {len(data)}")
    out = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            _bad(f"{path}.data[{i}]", f"expected a row of {cols} entries")
        out.append(
            [decode_scalar(field, x, f"{path}.data[{i}][{j}]")
             for j, x in enumerate(row)]
        )
    return Matrix.from_rows(field, out)


# -- algebras ----------------------------------------------------------------


def _check_vertex_label(v, path):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        _bad(path, "vertex labels must be integers or strings")
    return v


def encode_algebra(alg: QuiverAlgebra):
    return {
        "field": encode_field(alg.field),
        "vertices": list(alg.vertices),
        "arrows": [[n, s, t] for (n, s, t) in alg.arrows],
        "relations": [
            [[encode_scalar(alg.field, c), list(p)] for (c, p) in rel]
            for rel in alg.relations
        ],
    }


def decode_algebra(doc, path="algebra") -> QuiverAlgebra:
    field = decode_field(_get(doc, "field", path), f"{path}.field")
    vertices = [
        _check_vertex_label(v, f"{path}.vertices[{i}]")
        for i, v in enumerate(_get(doc, "vertices", path, list))
    ]
    arrows = []
    for i, a in enumerate(_get(doc, "arrows", path, list)):
        if not isinstance(a, list) or len(a) != 3 or not isinstance(a[0], str):
            _bad(f"{path}.arrows[{i}]", "expected [name, source, target]")
        arrows.append((a[0], _check_vertex_label(a[1], f"{path}.arrows[{i}]"),
                       _check_vertex_label(a[2], f"{path}.arrows[{i}]")))
    relations = []
    for i, rel in enumerate(_get(doc, "relations", path, list)):
        if not isinstance(rel, list):
            _bad(f"{path}.relations[{i}]", "expected a list of terms")
        terms = []
        for j, term in enumerate(rel):
            tp = f"{path}.relations[{i}][{j}]"
            if not isinstance(term, list) or len(term) != 2 \
                    or not isinstance(term[1], list):
                _bad(tp, "expected [coefficient, [arrow names]]")
            terms.append((decode_scalar(field, term[0], tp),
                          [str(n) for n in term[1]]))
        relations.append(terms)
    return QuiverAlgebra(field, vertices, arrows, relations)


# -- modules and maps --------------------------------------------------------


def encode_module(m: Module, with_algebra=True):
    doc = {
        "dims": [[v, m.dims[v]] for v in m.algebra.vertices],
        "maps": [[n, encode_matrix(m.maps[n])] for (n, _s, _t) in m.algebra.arrows],
    }
    if with_algebra:
        doc["algebra"] = encode_algebra(m.algebra)
    return doc


def decode_module(doc, path="module", algebra=None) -> Module:
    if algebra is None:
        algebra = decode_algebra(_get(doc, "algebra", path), f"{path}.algebra")
    field = algebra.field
    dims = {}
    for i, pair in enumerate(_pairs(doc, "dims", path)):
        v, d = pair
        v = _check_vertex_label(v, f"{path}.dims[{i}]")
        if v not in algebra.vertices:
            _bad(f"{path}.dims[{i}]", f"unknown vertex {v!r}")
        if not isinstance(d, int) or d < 0:
            _bad(f"{path}.dims[{i}]", "dimension must be a nonnegative integer")
        dims[v] = d
    maps = {}
    arrow_names = {n for (n, _s, _t) in algebra.arrows}
    for i, pair in enumerate(_pairs(doc, "maps", path)):
        n, mat = pair
        if n not in arrow_names:
            _bad(f"{path}.maps[{i}]", f"unknown arrow {n!r}")
        maps[n] = decode_matrix(field, mat, f"{path}.maps[{i}][1]")
    try:
        return Module(algebra, dims, maps)
    except InputError as e:
        _bad(path, str(e))


def encode_map_blocks(f: ModuleMap):
    alg = f.source.algebra
    return [[v, encode_matrix(f.blocks[v])] for v in alg.vertices]


def decode_map_blocks(doc, source: Module, target: Module, path="map") -> ModuleMap:
    alg = source.algebra
    field = alg.field
    if not isinstance(doc, list):
        _bad(path, "expected a list")
    blocks = {}
    for i, pair in enumerate(doc):
        if not isinstance(pair, list) or len(pair) != 2:
            _bad(f"{path}[{i}]", "expected a [vertex, matrix] pair")
        v, mat = pair
        if v not in alg.vertices:
            _bad(f"{path}[{i}]", f"unknown vertex {v!r}")
        blocks[v] = decode_matrix(field, mat, f"{path}[{i}][1]")
    for v in alg.vertices:
        blocks.setdefault(v, Matrix.zeros(field, target.dims[v], source.dims[v]))
    try:
        return ModuleMap(source, target, blocks)
    except InputError as e:
        _bad(path, str(e))


# -- shapes ------------------------------------------------------------------


def encode_shape(shape: Shape):
    kind = "loop" if shape.num_objects == 1 else "cyclic"
    return {"kind": kind, "m": shape.num_objects, "N": shape.nilpotency}


def decode_shape(doc, path="shape") -> Shape:
    kind = _get(doc, "kind", path, str)
    if kind not in ("loop", "cyclic"):
        _bad(f"{path}.kind", f"unknown shape kind {kind!r}")
    m = _get(doc, "m", path, int) if "m" in doc else 1
    n = _get(doc, "N", path, int)
    if kind == "loop" and m != 1:
        _bad(f"{path}.m", "loop shape has exactly one object")
    try:
        return Shape.cyclic(m, n)
    except InputError as e:
        _bad(path, str(e))


# -- differential modules ----------------------------------------------------


def encode_diffmod(d: DifferentialModule):
    return {
        "schema": SCHEMA,
        "kind": "differential-module",
        "module": encode_module(d.underlying),
        "differential": encode_map_blocks(d.differential),
    }


def decode_diffmod(doc, path="document") -> DifferentialModule:
    m = decode_module(_get(doc, "module", path), f"{path}.module")
    diff = decode_map_blocks(
        _get(doc, "differential", path, list), m, m, f"{path}.differential"
    )
    try:
        return DifferentialModule(m, diff)
    except InputError as e:
        _bad(path, str(e))


# -- diagrams ----------------------------------------------------------------


def encode_diagram(x: Diagram):
    return {
        "schema": SCHEMA,
        "kind": "diagram",
        "shape": encode_shape(x.shape),
        "base": encode_algebra(x.base),
        "values": [
            [o, encode_module(x.value_at(o), with_algebra=False)]
            for o in x.shape.objects
        ],
        "steps": [
            [o, encode_map_blocks(x.step_map(o))] for o in x.shape.objects
        ],
    }


def decode_diagram(doc, path="document") -> Diagram:
    shape = decode_shape(_get(doc, "shape", path), f"{path}.shape")
    base = decode_algebra(_get(doc, "base", path), f"{path}.base")
    values = {}
    for i, pair in enumerate(_pairs(doc, "values", path)):
        o, mdoc = pair
        if not isinstance(o, int) or o not in shape.objects:
            _bad(f"{path}.values[{i}]", f"unknown shape object {o!r}")
        values[o] = decode_module(mdoc, f"{path}.values[{i}][1]", algebra=base)
    for o in shape.objects:
        if o not in values:
            _bad(f"{path}.values", f"missing value at object {o}")
    steps = {}
    for i, pair in enumerate(_pairs(doc, "steps", path)):
        o, blocks = pair
        if not isinstance(o, int) or o not in shape.objects:
            _bad(f"{path}.steps[{i}]", f"unknown shape object {o!r}")
        steps[o] = decode_map_blocks(
            blocks, values[o], values[shape.step(o)], f"{path}.steps[{i}][1]"
        )
    for o in shape.objects:
        if o not in steps:
            _bad(f"{path}.steps", f"missing step at object {o}")
    try:
        # the category-algebra relations include step nilpotency, so this
        # rejects steps whose N-fold composite is nonzero
        return Diagram.from_values(shape, base, values, steps)
    except InputError as e:
        _bad(path, str(e))


def encode_diagram_map(f: DiagramMap):
    return {
        "source": encode_diagram(f.source),
        "target": encode_diagram(f.target),
        "components": [
            [o, encode_map_blocks(f.component_at(o))] for o in f.source.shape.objects
        ],
    }


def encode_module_doc(m: Module):
    return {"schema": SCHEMA, "kind": "module", "module": encode_module(m)}


# -- top level ---------------------------------------------------------------


def validate_header(doc, path="document"):
    schema = _get(doc, "schema", path, str)
    if schema != SCHEMA:
        _bad(f"{path}.schema", f"unsupported schema {schema!r}, expected {SCHEMA!r}")
    return _get(doc, "kind", path, str)


def decode_document(doc, path="document"):
    """Dispatch on kind; returns the decoded object."""
    kind = validate_header(doc, path)
    if kind == "module":
        return decode_module(_get(doc, "module", path), f"{path}.module")
    if kind == "differential-module":
        return decode_diffmod(doc, path)
    if kind == "diagram":
        return decode_diagram(doc, path)
    _bad(f"{path}.kind", f"no decoder for document kind {kind!r}")
