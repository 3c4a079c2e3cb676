"""End-to-end command line tests, run through subprocesses the way a
user would invoke them.  Covers the shipped fixtures, byte-identical
reruns, the recheck loop, and every exit code."""

import json
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from semires import interchange as ix
from semires.algebra import injective, simple
from semires.diagrams import coinduce, diagram_direct_sum, stalk
from semires.fields import FieldSpec
from semires.generators import standard_bases
from semires.shape import Shape

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures" / "v1"
F5 = FieldSpec.prime(5)


def run_cli(*args, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "semires.cli", *args],
        capture_output=True, text=True, cwd=ROOT,
    )
    assert proc.returncode == expect, (
        f"exit {proc.returncode} != {expect}\nstdout: {proc.stdout}"
        f"\nstderr: {proc.stderr}"
    )
    return proc


def test_homology_on_shift_fixture_is_zero():
    proc = run_cli("homology", str(FIXTURES / "shift_k2.json"))
    doc = json.loads(proc.stdout)
    assert doc["kind"] == "homology-report"
    assert doc["table"] == [[0, 1, [0]]]


def test_rz_k_on_s2_fixture(tmp_path):
    out = tmp_path / "j.json"
    run_cli("rz", "k", str(FIXTURES / "s2_a2.json"), "--output", str(out))
    doc = json.loads(out.read_text())
    assert doc["kind"] == "differential-module"
    assert doc["module"]["dims"] == [[1, 2], [2, 1]]
    diff = {v: mat for v, mat in doc["differential"]}
    assert diff[1]["data"] == [[0, 0], [1, 0]]
    run_cli("recheck", str(out))


def test_rz_round_trip_through_files(tmp_path):
    j = tmp_path / "j.json"
    h = tmp_path / "h.json"
    run_cli("rz", "k", str(FIXTURES / "s2_a2.json"), "--output", str(j))
    run_cli("rz", "h", str(j), "--output", str(h))
    proc = run_cli("iso", str(h), str(FIXTURES / "s2_a2.json"))
    doc = json.loads(proc.stdout)
    assert doc["verdict"] is True and doc["witness"] is not None
    run_cli("recheck", str(h))


def test_resolve_fixture_certificates_and_bytes(tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run_cli("resolve", str(FIXTURES / "s2_stalk_diff.json"), "--output", str(out1))
    run_cli("resolve", str(FIXTURES / "s2_stalk_diff.json"), "--output", str(out2))
    assert out1.read_bytes() == out2.read_bytes()
    doc = json.loads(out1.read_text())
    assert doc["certificates"] == {
        "weak-equivalence": True,
        "termwise-injective": True,
        "no-exact-summand": True,
        "socle-in-kernel": True,
    }
    target = doc["target-differential-module"]
    assert target["module"]["dims"] == [[1, 2], [2, 1]]
    run_cli("recheck", str(out1))
    # a different seed is a different job, but still reproducible
    out3, out4 = tmp_path / "r3.json", tmp_path / "r4.json"
    run_cli("resolve", str(FIXTURES / "s2_stalk_diff.json"), "--seed", "5",
            "--output", str(out3))
    run_cli("resolve", str(FIXTURES / "s2_stalk_diff.json"), "--seed", "5",
            "--output", str(out4))
    assert out3.read_bytes() == out4.read_bytes()


def test_resolve_of_exact_input_is_zero(tmp_path):
    out = tmp_path / "r.json"
    run_cli("resolve", str(FIXTURES / "shift_k2.json"), "--output", str(out))
    doc = json.loads(out.read_text())
    dims = dict(doc["target-differential-module"]["module"]["dims"])
    assert dims == {"*": 0}


def test_split_and_check_minimal_flow(tmp_path):
    res = tmp_path / "res.json"
    run_cli("resolve", str(FIXTURES / "s2_stalk_diff.json"), "--output", str(res))
    target_doc = json.loads(res.read_text())["target"]
    # pad the minimal target with an exact injective object
    minimal = ix.decode_diagram(target_doc, "target")
    alg = standard_bases(F5)["a2"]
    padded, _i, _p = diagram_direct_sum(
        [minimal, coinduce(Shape.loop(), alg, 0, injective(alg, 1))]
    )
    tfile = tmp_path / "target.json"
    pfile = tmp_path / "padded.json"
    tfile.write_bytes(ix.canonical_bytes(ix.encode_diagram(minimal)))
    pfile.write_bytes(ix.canonical_bytes(ix.encode_diagram(padded)))

    run_cli("check-minimal", str(tfile))
    proc = run_cli("check-minimal", str(pfile), expect=1)
    doc = json.loads(proc.stdout)
    assert doc["verdict"] is False
    assert doc["criteria"]["socle-in-kernel"] is False

    sout = tmp_path / "split.json"
    run_cli("split", str(pfile), "--output", str(sout))
    sdoc = json.loads(sout.read_text())
    min_dims = dict(sdoc["minimal-part"]["values"][0][1]["dims"])
    ex_dims = dict(sdoc["exact-part"]["values"][0][1]["dims"])
    assert min_dims == {"1": 2, "2": 1} or min_dims == {1: 2, 2: 1}
    assert sum(ex_dims.values()) == padded.total_dim() - 3
    run_cli("recheck", str(sout))


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": "semires/v1", "kind": ')
    proc = run_cli("homology", str(bad), expect=2)
    assert "parse-error at line" in proc.stderr

    # wrong document kind for the command
    proc = run_cli("rz", "h", str(FIXTURES / "s2_a2.json"), expect=2)
    assert "differential-module" in proc.stderr

    proc = run_cli("homology", str(tmp_path / "missing.json"), expect=2)
    assert "cannot read" in proc.stderr

    # bound exhaustion is an honest negative: exit 1
    alg = standard_bases(F5)["a2"]
    x = stalk(Shape.cyclic(2, 3), alg, 0, simple(alg, 2))
    xfile = tmp_path / "n3.json"
    xfile.write_bytes(ix.canonical_bytes(ix.encode_diagram(x)))
    proc = run_cli("resolve", str(xfile), "--bound", "1", expect=1)
    assert "resolution-not-found-within-bound" in proc.stderr


def test_recheck_catches_tampering(tmp_path):
    res = tmp_path / "res.json"
    run_cli("resolve", str(FIXTURES / "s2_stalk_diff.json"), "--output", str(res))
    doc = json.loads(res.read_text())
    doc["certificates"]["no-exact-summand"] = False
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(doc))
    proc = run_cli("recheck", str(tampered), expect=3)
    assert "re-verification" in proc.stderr

    # zeroing the structural map kills the quasi-isomorphism outright
    doc = json.loads(res.read_text())
    for _o, blocks in doc["map"]:
        for _v, mat in blocks:
            mat["data"] = [[0] * mat["cols"] for _ in range(mat["rows"])]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(doc))
    proc = run_cli("recheck", str(broken), expect=3)
    assert "weak-equivalence" in proc.stderr

    # a forged homology table is caught by recomputation
    h = tmp_path / "h.json"
    run_cli("homology", str(FIXTURES / "shift_k2.json"), "--output", str(h))
    hdoc = json.loads(h.read_text())
    hdoc["table"][0][2] = [9]
    forged = tmp_path / "forged.json"
    forged.write_text(json.dumps(hdoc))
    proc = run_cli("recheck", str(forged), expect=3)
    assert "does not reproduce" in proc.stderr


def test_iso_negative_verdict(tmp_path):
    alg = standard_bases(F5)["a2"]
    s1 = tmp_path / "s1.json"
    s1.write_bytes(ix.canonical_bytes(ix.encode_module_doc(simple(alg, 1))))
    proc = run_cli("iso", str(s1), str(FIXTURES / "s2_a2.json"), expect=1)
    doc = json.loads(proc.stdout)
    assert doc["verdict"] is False and doc["witness"] is None
    out = tmp_path / "iso.json"
    run_cli("iso", str(s1), str(FIXTURES / "s2_a2.json"),
            "--output", str(out), expect=1)
    run_cli("recheck", str(out))


def test_hom_derived_command(tmp_path):
    proc = run_cli(
        "hom-derived",
        str(FIXTURES / "s2_stalk_diff.json"),
        str(FIXTURES / "s2_stalk_diff.json"),
        "--output", str(tmp_path / "hd.json"),
    )
    doc = json.loads((tmp_path / "hd.json").read_text())
    assert doc["dimension"] == 1
    assert len(doc["representatives"]) == 1
    run_cli("recheck", str(tmp_path / "hd.json"))


def test_summary_format():
    proc = run_cli("homology", str(FIXTURES / "shift_k2.json"),
                   "--format", "summary")
    assert "object 0 amplitude 1: dims [0]" in proc.stdout
    proc = run_cli("check-minimal", str(FIXTURES / "shift_k2.json"), expect=1)
    doc = json.loads(proc.stdout)
    assert doc["verdict"] is False


def test_selftest_tiny_under_a_minute(tmp_path):
    out = tmp_path / "st.json"
    start = time.monotonic()
    run_cli("selftest", "--scale", "tiny", "--output", str(out))
    elapsed = time.monotonic() - start
    assert elapsed < 60, f"tiny selftest took {elapsed:.1f}s"
    doc = json.loads(out.read_text())
    assert doc["passed"] is True
    assert all(c["ok"] for c in doc["checks"])
    assert len(doc["checks"]) == 10
    run_cli("recheck", str(out))


def test_selftest_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_cli("selftest", "--scale", "tiny", "--seed", "3", "--output", str(a))
    run_cli("selftest", "--scale", "tiny", "--seed", "3", "--output", str(b))
    assert a.read_bytes() == b.read_bytes()
