"""Round trips and strictness of the JSON interchange layer."""

from fractions import Fraction

import numpy as np
import pytest

from semires import interchange as ix
from semires.algebra import QuiverAlgebra
from semires.diffmod import DifferentialModule, bzh, from_diagram
from semires.errors import InputError
from semires.fields import FieldSpec
from semires.generators import rand_graded_diagram, rand_module, standard_bases
from semires.matrix import Matrix
from semires.shape import Shape

F5 = FieldSpec.prime(5)
QQ = FieldSpec.rationals()
LOOP = Shape.loop()


def test_scalar_codec_frozen():
    assert ix.encode_scalar(F5, 3) == 3
    assert ix.decode_scalar(F5, 3) == 3
    assert ix.encode_scalar(QQ, Fraction(-2, 3)) == "-2/3"
    assert ix.decode_scalar(QQ, "-2/3") == Fraction(-2, 3)
    assert ix.decode_scalar(QQ, 7) == Fraction(7)
    with pytest.raises(InputError, match="out of range"):
        ix.decode_scalar(F5, 7)
    with pytest.raises(InputError, match="must be an integer"):
        ix.decode_scalar(F5, "3")
    with pytest.raises(InputError, match="malformed rational"):
        ix.decode_scalar(QQ, "1/0")
    with pytest.raises(InputError, match="malformed rational"):
        ix.decode_scalar(QQ, "a/b")
    # booleans are not scalars even though bool subclasses int
    with pytest.raises(InputError):
        ix.decode_scalar(F5, True)


def test_field_codec():
    assert ix.decode_field(ix.encode_field(F5)) == F5
    assert ix.decode_field(ix.encode_field(QQ)) == QQ
    with pytest.raises(InputError, match="unknown field kind"):
        ix.decode_field({"kind": "galois"})
    with pytest.raises(InputError, match="not prime"):
        ix.decode_field({"kind": "prime", "p": 6})


def test_matrix_codec():
    m = Matrix.from_rows(F5, [[0, 1, 2], [3, 4, 0]])
    doc = ix.encode_matrix(m)
    assert doc == {"rows": 2, "cols": 3, "data": [[0, 1, 2], [3, 4, 0]]}
    back = ix.decode_matrix(F5, doc)
    assert (back - m).is_zero()
    # both encodings of an empty shape decode
    for data in ([], [[]]):
        z = ix.decode_matrix(F5, {"rows": 1, "cols": 0, "data": data})
        assert z.rows == 1 and z.cols == 0
    with pytest.raises(InputError, match="expected 2 rows"):
        ix.decode_matrix(F5, {"rows": 2, "cols": 1, "data": [[1]]})
    with pytest.raises(InputError, match="row of 3"):
        ix.decode_matrix(F5, {"rows": 1, "cols": 3, "data": [[1, 2]]})
    with pytest.raises(InputError, match="nonempty data"):
        ix.decode_matrix(F5, {"rows": 0, "cols": 2, "data": [[1, 1]]})


def test_algebra_roundtrip_with_relations():
    rel = [[(1, ["a", "b"])]]
    alg = QuiverAlgebra(F5, [1, 2, 3], [("a", 1, 2), ("b", 2, 3)], rel)
    doc = ix.encode_algebra(alg)
    back = ix.decode_algebra(doc)
    assert back == alg
    assert doc["relations"] == [[[1, ["a", "b"]]]]
    with pytest.raises(InputError, match="unknown arrow"):
        bad = dict(doc, relations=[[[1, ["a", "z"]]]])
        ix.decode_algebra(bad)


def test_module_roundtrip_and_byte_stability():
    rng = np.random.default_rng(5)
    for field in (F5, QQ):
        for name in ("a2", "a3", "triangle"):
            alg = standard_bases(field)[name]
            m = rand_module(alg, rng)
            doc = ix.encode_module_doc(m)
            raw = ix.canonical_bytes(doc)
            m2 = ix.decode_document(ix.loads(raw.decode()))
            assert m2.dims == m.dims
            for n, _s, _t in alg.arrows:
                assert (m2.maps[n] - m.maps[n]).is_zero()
            assert ix.canonical_bytes(ix.encode_module_doc(m2)) == raw
            assert len(ix.digest(doc)) == 12


def test_diffmod_roundtrip_preserves_homology():
    rng = np.random.default_rng(7)
    alg = standard_bases(F5)["a2"]
    for _ in range(5):
        d = from_diagram(rand_graded_diagram(LOOP, alg, rng, gens=2, cut_cols=2))
        doc = ix.encode_diffmod(d)
        d2 = ix.decode_document(ix.loads(ix.canonical_bytes(doc).decode()))
        assert isinstance(d2, DifferentialModule)
        assert d2.underlying.dims == d.underlying.dims
        assert bzh(d2).homology.dims == bzh(d).homology.dims
        assert ix.canonical_bytes(ix.encode_diffmod(d2)) == ix.canonical_bytes(doc)


def test_diffmod_decode_rejects_bad_square():
    alg = standard_bases(F5)["a2"]
    doc = {
        "schema": ix.SCHEMA,
        "kind": "differential-module",
        "module": {
            "algebra": ix.encode_algebra(alg),
            "dims": [[1, 1], [2, 0]],
            "maps": [["a", {"rows": 0, "cols": 1, "data": []}]],
        },
        "differential": [[1, {"rows": 1, "cols": 1, "data": [[1]]}]],
    }
    with pytest.raises(InputError, match="square"):
        ix.decode_document(doc)


def test_diagram_roundtrip_cyclic():
    rng = np.random.default_rng(11)
    alg = standard_bases(F5)["a3"]
    sh = Shape.cyclic(3, 2)
    x = rand_graded_diagram(sh, alg, rng, gens=2, cut_cols=2)
    doc = ix.encode_diagram(x)
    x2 = ix.decode_document(ix.loads(ix.canonical_bytes(doc).decode()))
    assert x2.module.dims == x.module.dims
    for o in sh.objects:
        diff = x2.step_map(o) - x.step_map(o)
        assert diff.is_zero()
    assert ix.canonical_bytes(ix.encode_diagram(x2)) == ix.canonical_bytes(doc)


def test_diagram_decode_rejects_non_nilpotent_steps():
    triv_alg = standard_bases(F5)["a2"]
    ident = {"rows": 1, "cols": 1, "data": [[1]]}
    doc = {
        "schema": ix.SCHEMA,
        "kind": "diagram",
        "shape": {"kind": "loop", "m": 1, "N": 2},
        "base": ix.encode_algebra(triv_alg),
        "values": [[0, {"dims": [[1, 0], [2, 1]],
                        "maps": [["a", {"rows": 1, "cols": 0, "data": []}]]}]],
        "steps": [[0, [[2, ident]]]],
    }
    with pytest.raises(InputError):
        ix.decode_document(doc)


def test_parse_diagnostics_name_the_path():
    with pytest.raises(InputError, match=r"missing field 'module'"):
        ix.decode_document({"schema": ix.SCHEMA, "kind": "module"})
    with pytest.raises(InputError, match=r"line 1 column"):
        ix.loads("{nope")
    alg_doc = ix.encode_algebra(standard_bases(F5)["a2"])
    bad = {
        "schema": ix.SCHEMA,
        "kind": "module",
        "module": {"algebra": alg_doc, "dims": [[9, 1]], "maps": []},
    }
    with pytest.raises(InputError, match=r"dims\[0\].*unknown vertex"):
        ix.decode_document(bad)
    with pytest.raises(InputError, match="unsupported schema"):
        ix.decode_document({"schema": "semires/v0", "kind": "module"})
    with pytest.raises(InputError, match="no decoder"):
        ix.decode_document({"schema": ix.SCHEMA, "kind": "mystery"})


def test_canonical_bytes_are_order_independent():
    a = {"b": 1, "a": [1, 2], "c": {"y": 0, "x": 1}}
    b = {"c": {"x": 1, "y": 0}, "a": [1, 2], "b": 1}
    assert ix.canonical_bytes(a) == ix.canonical_bytes(b)
    assert ix.digest(a) == ix.digest(b)
    assert ix.canonical_bytes(a).endswith(b"\n")
