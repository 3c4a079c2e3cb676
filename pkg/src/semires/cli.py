"""Command line front end.

Every invocation is described by a JobSpec (command, inputs, seed,
bounds, output); outputs are canonical JSON, so one JobSpec always
produces the same bytes.  Verdict-style outputs embed the evidence they
rest on (witness matrices, certificate booleans) together with the full
input documents, and ``recheck`` re-validates any output document and
re-verifies those certificates from scratch.

Exit codes: 0 pass, 1 verdict-false (including honest negative results
such as a bound running out or a non-split sequence), 2 input-error,
3 internal-certificate-failure.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import interchange as ix
from .algebra import Module, socle
from .decomp import is_isomorphic
from .diagrams import (
    Diagram,
    DiagramMap,
    hom_in_derived,
    homology_dims,
    is_weak_equivalence,
)
from .diffmod import DifferentialModule, from_diagram, to_diagram
from .errors import (
    CertificateFailure,
    DoesNotSplit,
    Inconclusive,
    InputError,
    NotFoundWithinBound,
    SemiresError,
    UnsupportedError,
)
from .fields import FieldSpec
from .resolve import (
    DEFAULT_BOUND,
    is_minimal_semiinjective,
    resolve_min,
    split_injective_part,
)
from . import selftest as selftest_mod

EXIT_PASS = 0
EXIT_VERDICT_FALSE = 1
EXIT_INPUT_ERROR = 2
EXIT_CERT_FAILURE = 3

DEFAULT_RETRIES = 6


@dataclass(frozen=True)
class JobSpec:
    command: str
    inputs: tuple = ()
    seed: int = 0
    bound: int = DEFAULT_BOUND
    retries: int = DEFAULT_RETRIES
    field: str | None = None
    output: str | None = None
    fmt: str = "json"
    scale: str = "tiny"
    direction: str | None = None


def _job_block(job: JobSpec, input_docs):
    return {
        "command": job.command,
        "seed": job.seed,
        "bound": job.bound,
        "retries": job.retries,
        "field": job.field,
        "inputs": [ix.digest(d) for d in input_docs],
    }


_SEEN_DIGESTS: list = []


def _read_doc(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read input {path}: {e.strerror}") from None
    doc = ix.loads(text)
    try:
        _SEEN_DIGESTS.append(ix.digest(doc))
    except TypeError:
        pass
    return doc


def _field_from_flag(name: str | None):
    if name is None:
        return None
    if name in ("q", "Q", "rationals"):
        return FieldSpec.rationals()
    try:
        return FieldSpec.prime(int(name))
    except ValueError:
        raise InputError(f"--field must be a prime or 'q', got {name!r}") from None


def _as_diagram(obj):
    if isinstance(obj, DifferentialModule):
        return to_diagram(obj)
    if isinstance(obj, Diagram):
        return obj
    raise InputError("expected a diagram or differential-module document")


def _encode_components(f: DiagramMap):
    return [[o, ix.encode_map_blocks(f.component_at(o))]
            for o in f.source.shape.objects]


def _decode_components(doc, x: Diagram, y: Diagram, path):
    if not isinstance(doc, list):
        raise InputError(f"parse-error at {path}: expected a list")
    comps = {}
    for i, pair in enumerate(doc):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(f"parse-error at {path}[{i}]: expected [object, blocks]")
        o, blocks = pair
        comps[o] = ix.decode_map_blocks(
            blocks, x.value_at(o), y.value_at(o), f"{path}[{i}][1]"
        )
    for o in x.shape.objects:
        if o not in comps:
            raise InputError(f"parse-error at {path}: missing component at {o}")
    return DiagramMap.from_components(x, y, comps)


def _homology_table(x: Diagram):
    return [
        [q, amp, list(homology_dims(x, q, amp))]
        for q in x.shape.objects
        for amp in x.shape.amplitudes()
    ]


def _socle_criterion(x: Diagram):
    """Loop-shape cross-check: differential kills the socle.  None on
    other shapes."""
    if not x.shape.is_loop:
        return None
    _soc, soc_incl = socle(x.value_at(0))
    return bool((x.step_map(0) @ soc_incl).is_zero())


# -- commands ----------------------------------------------------------------


def cmd_homology(job: JobSpec):
    doc = _read_doc(job.inputs[0])
    x = _as_diagram(ix.decode_document(doc))
    out = {
        "schema": ix.SCHEMA,
        "kind": "homology-report",
        "job": _job_block(job, [doc]),
        "input": doc,
        "shape": ix.encode_shape(x.shape),
        "table": _homology_table(x),
    }
    return out, EXIT_PASS


def cmd_resolve(job: JobSpec):
    doc = _read_doc(job.inputs[0])
    obj = ix.decode_document(doc)
    x = _as_diagram(obj)
    r = resolve_min(x, seed=job.seed, bound=job.bound)
    out = {
        "schema": ix.SCHEMA,
        "kind": "resolution",
        "job": _job_block(job, [doc]),
        "input": doc,
        "target": ix.encode_diagram(r.target),
        "map": _encode_components(r.map),
        "certificates": {
            "weak-equivalence": r.certified.weq,
            "termwise-injective": r.certified.semiinjective,
            "no-exact-summand": r.certified.minimal,
            "socle-in-kernel": _socle_criterion(r.target),
        },
    }
    if isinstance(obj, DifferentialModule):
        out["target-differential-module"] = ix.encode_diffmod(from_diagram(r.target))
    return out, EXIT_PASS


def cmd_split(job: JobSpec):
    doc = _read_doc(job.inputs[0])
    x = _as_diagram(ix.decode_document(doc))
    ip, jp, iso = split_injective_part(x, seed=job.seed)
    out = {
        "schema": ix.SCHEMA,
        "kind": "split",
        "job": _job_block(job, [doc]),
        "input": doc,
        "minimal-part": ix.encode_diagram(ip),
        "exact-part": ix.encode_diagram(jp),
        "witness": _encode_components(iso),
    }
    return out, EXIT_PASS


def cmd_check_minimal(job: JobSpec):
    doc = _read_doc(job.inputs[0])
    x = _as_diagram(ix.decode_document(doc))
    verdict = is_minimal_semiinjective(x, seed=job.seed)
    socle_ok = _socle_criterion(x)
    out = {
        "schema": ix.SCHEMA,
        "kind": "verdict",
        "question": "minimal-semiinjective",
        "job": _job_block(job, [doc]),
        "input": doc,
        "verdict": verdict,
        "criteria": {
            "no-exact-summand": verdict,
            "socle-in-kernel": socle_ok,
        },
    }
    return out, EXIT_PASS if verdict else EXIT_VERDICT_FALSE


def _iso_inputs(job: JobSpec):
    docs = [_read_doc(p) for p in job.inputs]
    objs = [ix.decode_document(d) for d in docs]
    mods = []
    for obj in objs:
        if isinstance(obj, Module):
            mods.append(obj)
        elif isinstance(obj, DifferentialModule):
            mods.append(to_diagram(obj).module)
        else:
            raise InputError(
                "iso compares module or differential-module documents"
            )
    return docs, mods


def cmd_iso(job: JobSpec):
    docs, (m, n) = _iso_inputs(job)
    witness = is_isomorphic(m, n, seed=job.seed, budget=job.retries)
    out = {
        "schema": ix.SCHEMA,
        "kind": "iso",
        "job": _job_block(job, docs),
        "inputs": docs,
        "verdict": witness is not None,
        "witness": None if witness is None else ix.encode_map_blocks(witness),
    }
    return out, EXIT_PASS if witness is not None else EXIT_VERDICT_FALSE


def cmd_hom_derived(job: JobSpec):
    docs = [_read_doc(p) for p in job.inputs]
    x, y = (_as_diagram(ix.decode_document(d)) for d in docs)
    dim, reps = hom_in_derived(x, y)
    # representatives live between internally built objects, so they are
    # stored self-contained with their own endpoints
    out = {
        "schema": ix.SCHEMA,
        "kind": "hom-derived",
        "job": _job_block(job, docs),
        "inputs": docs,
        "dimension": dim,
        "representatives": [ix.encode_diagram_map(f) for f in reps],
    }
    return out, EXIT_PASS


def cmd_rz(job: JobSpec):
    from .diffmod import rz_H, rz_K

    doc = _read_doc(job.inputs[0])
    obj = ix.decode_document(doc)
    if job.direction == "h":
        if not isinstance(obj, DifferentialModule):
            raise InputError("rz h needs a differential-module document")
        m = rz_H(obj, seed=job.seed)
        out = ix.encode_module_doc(m)
    else:
        if not isinstance(obj, Module):
            raise InputError("rz k needs a module document")
        d = rz_K(obj, seed=job.seed)
        out = ix.encode_diffmod(d)
    out["job"] = _job_block(job, [doc])
    out["input"] = doc
    return out, EXIT_PASS


def cmd_selftest(job: JobSpec):
    field = _field_from_flag(job.field)
    ok, results = selftest_mod.run(job.scale, seed=job.seed, field=field)
    out = {
        "schema": ix.SCHEMA,
        "kind": "selftest-report",
        "job": _job_block(job, []),
        "scale": job.scale,
        "passed": ok,
        "checks": results,
    }
    return out, EXIT_PASS if ok else EXIT_VERDICT_FALSE


# -- recheck -----------------------------------------------------------------


def _recheck_resolution(doc, job: JobSpec, notes):
    x = _as_diagram(ix.decode_document(ix._get(doc, "input", "document")))
    target = ix.decode_diagram(ix._get(doc, "target", "document"), "document.target")
    rmap = _decode_components(
        ix._get(doc, "map", "document", list), x, target, "document.map"
    )
    rmap.validate()
    seed = doc.get("job", {}).get("seed", job.seed)
    from .resolve import is_semiinjective

    certs = ix._get(doc, "certificates", "document", dict)
    checks = {
        "weak-equivalence": is_weak_equivalence(rmap),
        "termwise-injective": is_semiinjective(target),
        "no-exact-summand": is_minimal_semiinjective(target, seed=seed),
        "socle-in-kernel": _socle_criterion(target),
    }
    for name, got in checks.items():
        stored = certs.get(name)
        if stored != got:
            raise CertificateFailure(
                f"stored certificate {name}={stored} but re-verification got {got}"
            )
        notes.append(f"{name}: re-verified")


def _recheck_split(doc, job: JobSpec, notes):
    from .diagrams import diagram_direct_sum, is_exact

    x = _as_diagram(ix.decode_document(ix._get(doc, "input", "document")))
    ip = ix.decode_diagram(ix._get(doc, "minimal-part", "document"), "document.minimal-part")
    jp = ix.decode_diagram(ix._get(doc, "exact-part", "document"), "document.exact-part")
    tot, _incls, _projs = diagram_direct_sum([ip, jp])
    iso = _decode_components(
        ix._get(doc, "witness", "document", list), x, tot, "document.witness"
    )
    iso.validate()
    if not iso.is_iso():
        raise CertificateFailure("stored splitting witness is not invertible")
    if not is_exact(jp):
        raise CertificateFailure("stored exact part has nonzero homology")
    seed = doc.get("job", {}).get("seed", job.seed)
    if ip.total_dim() > 0 and not is_minimal_semiinjective(ip, seed=seed):
        raise CertificateFailure("stored minimal part still has an exact summand")
    notes.append("witness: invertible; parts: re-verified")


def _recheck_verdict(doc, job: JobSpec, notes):
    x = _as_diagram(ix.decode_document(ix._get(doc, "input", "document")))
    seed = doc.get("job", {}).get("seed", job.seed)
    verdict = is_minimal_semiinjective(x, seed=seed)
    if verdict != ix._get(doc, "verdict", "document", bool):
        raise CertificateFailure(
            f"stored verdict {doc['verdict']} but re-verification got {verdict}"
        )
    if _socle_criterion(x) != doc.get("criteria", {}).get("socle-in-kernel"):
        raise CertificateFailure("stored socle criterion does not reproduce")
    notes.append("verdict: re-verified")


def _recheck_homology(doc, job: JobSpec, notes):
    x = _as_diagram(ix.decode_document(ix._get(doc, "input", "document")))
    if _homology_table(x) != ix._get(doc, "table", "document", list):
        raise CertificateFailure("stored homology table does not reproduce")
    notes.append("table: re-verified")


def _recheck_iso(doc, job: JobSpec, notes):
    docs = ix._get(doc, "inputs", "document", list)
    objs = [ix.decode_document(d, f"document.inputs[{i}]") for i, d in enumerate(docs)]
    mods = [
        to_diagram(o).module if isinstance(o, DifferentialModule) else o
        for o in objs
    ]
    witness_doc = doc.get("witness")
    if witness_doc is not None:
        w = ix.decode_map_blocks(witness_doc, mods[0], mods[1], "document.witness")
        w.validate()
        if not w.is_iso():
            raise CertificateFailure("stored isomorphism witness is not invertible")
        notes.append("witness: invertible, structure-compatible")
    else:
        seed = doc.get("job", {}).get("seed", job.seed)
        retries = doc.get("job", {}).get("retries", job.retries)
        if is_isomorphic(mods[0], mods[1], seed=seed, budget=retries) is not None:
            raise CertificateFailure("stored negative verdict but an isomorphism exists")
        notes.append("negative verdict: re-verified")


def _recheck_hom_derived(doc, job: JobSpec, notes):
    docs = ix._get(doc, "inputs", "document", list)
    x, y = (
        _as_diagram(ix.decode_document(d, f"document.inputs[{i}]"))
        for i, d in enumerate(docs)
    )
    dim, _reps = hom_in_derived(x, y)
    if dim != ix._get(doc, "dimension", "document", int):
        raise CertificateFailure(
            f"stored dimension {doc['dimension']} but recomputation got {dim}"
        )
    reps = ix._get(doc, "representatives", "document", list)
    if len(reps) != dim:
        raise CertificateFailure(
            f"stored {len(reps)} representatives for dimension {dim}"
        )
    for i, rep in enumerate(reps):
        p = f"document.representatives[{i}]"
        src = ix.decode_diagram(ix._get(rep, "source", p), f"{p}.source")
        tgt = ix.decode_diagram(ix._get(rep, "target", p), f"{p}.target")
        f = _decode_components(
            ix._get(rep, "components", p, list), src, tgt, f"{p}.components"
        )
        f.validate()
    notes.append(f"dimension {dim}: re-verified; representatives validate")


def _recheck_selftest(doc, job: JobSpec, notes):
    scale = ix._get(doc, "scale", "document", str)
    seed = doc.get("job", {}).get("seed", 0)
    fname = doc.get("job", {}).get("field")
    ok, results = selftest_mod.run(scale, seed=seed, field=_field_from_flag(fname))
    if ok != ix._get(doc, "passed", "document", bool):
        raise CertificateFailure("stored selftest outcome does not reproduce")
    stored = {c["name"]: c["ok"] for c in doc.get("checks", [])}
    fresh = {c["name"]: c["ok"] for c in results}
    if stored != fresh:
        raise CertificateFailure("per-check selftest outcomes do not reproduce")
    notes.append(f"selftest {scale}: reproduced")


def _recheck_plain(doc, job: JobSpec, notes):
    ix.decode_document(doc)
    notes.append("document: decodes and validates")


RECHECKERS = {
    "resolution": _recheck_resolution,
    "split": _recheck_split,
    "verdict": _recheck_verdict,
    "homology-report": _recheck_homology,
    "iso": _recheck_iso,
    "hom-derived": _recheck_hom_derived,
    "selftest-report": _recheck_selftest,
    "module": _recheck_plain,
    "differential-module": _recheck_plain,
    "diagram": _recheck_plain,
}


def cmd_recheck(job: JobSpec):
    doc = _read_doc(job.inputs[0])
    kind = ix.validate_header(doc)
    handler = RECHECKERS.get(kind)
    if handler is None:
        raise InputError(f"no recheck handler for document kind {kind!r}")
    notes = []
    try:
        handler(doc, job, notes)
    except InputError as e:
        # past the header, the document claims to be a verified output;
        # parts that no longer decode mean its certificates do not stand
        raise CertificateFailure(f"stored document fails re-validation: {e}") from None
    out = {
        "schema": ix.SCHEMA,
        "kind": "recheck-report",
        "job": _job_block(job, [doc]),
        "target-kind": kind,
        "target-digest": ix.digest(doc),
        "ok": True,
        "notes": notes,
    }
    return out, EXIT_PASS


COMMANDS = {
    "homology": cmd_homology,
    "resolve": cmd_resolve,
    "split": cmd_split,
    "check-minimal": cmd_check_minimal,
    "iso": cmd_iso,
    "hom-derived": cmd_hom_derived,
    "rz": cmd_rz,
    "selftest": cmd_selftest,
    "recheck": cmd_recheck,
}


# -- output and driver -------------------------------------------------------


def _summary_lines(doc):
    kind = doc.get("kind", "?")
    if kind == "homology-report":
        yield f"homology of {doc['job']['inputs'][0]}"
        for q, amp, dims in doc["table"]:
            yield f"  object {q} amplitude {amp}: dims {dims}"
    elif kind == "resolution":
        certs = doc["certificates"]
        yield f"resolution of {doc['job']['inputs'][0]}"
        yield "  certificates: " + ", ".join(
            f"{k}={v}" for k, v in sorted(certs.items())
        )
    elif kind == "verdict":
        yield f"{doc['question']}: {'yes' if doc['verdict'] else 'no'}"
        for k, v in sorted(doc["criteria"].items()):
            yield f"  {k}: {v}"
    elif kind == "split":
        yield "split into minimal + exact parts; witness verified at build time"
    elif kind == "iso":
        yield f"isomorphic: {'yes' if doc['verdict'] else 'no'}"
    elif kind == "hom-derived":
        yield f"derived hom dimension: {doc['dimension']}"
    elif kind == "selftest-report":
        yield f"selftest {doc['scale']}: {'pass' if doc['passed'] else 'FAIL'}"
        for c in doc["checks"]:
            yield f"  {'pass' if c['ok'] else 'FAIL'} {c['name']}: {c['detail']}"
    elif kind == "recheck-report":
        yield f"recheck {doc['target-kind']} {doc['target-digest']}: ok"
        for n in doc["notes"]:
            yield f"  {n}"
    elif kind in ("module", "differential-module", "diagram"):
        yield f"{kind} document {ix.digest(doc)}"
    else:
        yield f"{kind} document"


def _emit(doc, job: JobSpec):
    if job.fmt == "summary":
        text = "\n".join(_summary_lines(doc)) + "\n"
        payload = text.encode()
    else:
        payload = ix.canonical_bytes(doc)
    if job.output:
        Path(job.output).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode())


def build_parser():
    p = argparse.ArgumentParser(
        prog="semires",
        description="Exact minimal semiinjective resolutions over path algebras.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="coinduction search bound for resolve")
        sp.add_argument("--retries", type=int, default=DEFAULT_RETRIES,
                        help="randomized-certificate retry budget")
        sp.add_argument("--field", default=None,
                        help="field for generated corpora: a prime, or 'q'")
        sp.add_argument("--output", default=None, help="write here instead of stdout")
        sp.add_argument("--format", dest="fmt", choices=("json", "summary"),
                        default="json")

    for name, inputs in (
        ("homology", 1), ("resolve", 1), ("split", 1), ("check-minimal", 1),
        ("iso", 2), ("hom-derived", 2), ("recheck", 1),
    ):
        sp = sub.add_parser(name)
        for i in range(inputs):
            sp.add_argument("input" if i == 0 else "input2")
        common(sp)

    sp = sub.add_parser("rz")
    sp.add_argument("direction", choices=("h", "k"))
    sp.add_argument("input")
    common(sp)

    sp = sub.add_parser("selftest")
    sp.add_argument("--scale", choices=sorted(selftest_mod.SCALES), default="tiny")
    common(sp)

    return p


def _jobspec(ns) -> JobSpec:
    inputs = []
    for attr in ("input", "input2"):
        val = getattr(ns, attr, None)
        if val is not None:
            inputs.append(val)
    return JobSpec(
        command=ns.command,
        inputs=tuple(inputs),
        seed=ns.seed,
        bound=ns.bound,
        retries=ns.retries,
        field=ns.field,
        output=ns.output,
        fmt=ns.fmt,
        scale=getattr(ns, "scale", "tiny"),
        direction=getattr(ns, "direction", None),
    )


def _object_tag() -> str:
    return f" (object {_SEEN_DIGESTS[-1]})" if _SEEN_DIGESTS else ""


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    job = _jobspec(ns)
    _SEEN_DIGESTS.clear()
    try:
        doc, code = COMMANDS[job.command](job)
    except (InputError, UnsupportedError) as e:
        print(f"error: {e.code}: {e}{_object_tag()}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (DoesNotSplit, NotFoundWithinBound) as e:
        print(f"verdict-false: {e.code}: {e}{_object_tag()}", file=sys.stderr)
        return EXIT_VERDICT_FALSE
    except (CertificateFailure, Inconclusive) as e:
        print(f"certificate-failure: {e.code}: {e}{_object_tag()}", file=sys.stderr)
        return EXIT_CERT_FAILURE
    except SemiresError as e:  # any future error class: treat as internal
        print(f"certificate-failure: {e.code}: {e}{_object_tag()}", file=sys.stderr)
        return EXIT_CERT_FAILURE
    _emit(doc, job)
    return code


if __name__ == "__main__":
    sys.exit(main())
