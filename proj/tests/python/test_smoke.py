"""End-to-end smoke test of the Python bindings.

Runs standalone (``python3 test_smoke.py``) and under pytest. Each check
mirrors a guarantee the C++ suite pins down in depth; here we only verify
that the binding layer preserves it.
"""

import hashlib
import json
import os
import tempfile

import mathrepro as mr


def test_version():
    assert mr.__version__ == "0.1.0"


def test_integer_interop():
    assert mr.Integer(42) == 42
    assert int(mr.Integer("-123")) == -123
    assert str(mr.Integer(2) ** 100) == "1267650600228229401496703205376"
    assert mr.Integer(10) + 5 == 15
    assert 5 + mr.Integer(10) == 15
    assert mr.Integer(3) * mr.Integer(-4) == -12


def test_field_arithmetic():
    F = mr.GF(7, 2)
    assert F.characteristic == 7
    assert F.degree == 2
    assert F.order == 49
    assert str(F) == "GF(7^2)"
    o = F.generator()
    assert str(o * o) == "6"  # defining polynomial is x^2 + 1
    a = F.from_integer(3) + o
    assert str(a) == "o + 3"
    assert (a * a.inverse()) == F.one()
    assert str((o + F.from_integer(3)) * (o + F.from_integer(4))) == "4"
    # Fermat: x^(q-1) = 1 for x != 0.
    assert (o + F.from_integer(5)) ** 48 == F.one()


def test_identity_vs_structure():
    F1 = mr.GF(7, 2)
    F2 = mr.GF(7, 2)
    assert F1.same_structure(F2)
    assert F1 != F2  # parents compare by identity
    assert F1.one() == F2.one()  # values compare structurally
    try:
        F1.one() + F2.one()
        raise AssertionError("expected MathreproError")
    except mr.MathreproError as e:
        assert "ParentMismatch" in str(e)


def test_polynomials():
    F = mr.GF(7, 2)
    R, (x, y) = mr.polynomial_ring(F, ["x", "y"])
    p = (x + y) ** 2
    assert str(p) == "x^2 + 2*x*y + y^2"
    assert p.total_degree == 2
    exps = [e for e, _ in p.terms()]
    assert exps == [[2, 0], [1, 1], [0, 2]]
    pt = [F.from_integer(2), F.from_integer(3)]
    assert p.evaluate(pt) == (x + y).evaluate(pt) ** 2

    R2, (x2, y2) = mr.polynomial_ring(F, ["x", "y"])
    assert R != R2
    assert x == x2  # structural
    try:
        x + x2
        raise AssertionError("expected MathreproError")
    except mr.MathreproError as e:
        assert "ParentMismatch" in str(e)


def test_snf_cross_certification():
    m = mr.IntMatrix([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    s = mr.snf(m)
    assert s == mr.snf_generic(m)
    assert [int(s.at(i, i)) for i in range(3)] == [2, 2, 156]


def test_save_load_sessions():
    F = mr.GF(7, 2)
    R, (x, y) = mr.polynomial_ring(F, ["x", "y"])
    p = (x + y) ** 2
    q = x * y
    with tempfile.TemporaryDirectory() as tmp:
        pp = os.path.join(tmp, "p.mrdi")
        qq = os.path.join(tmp, "q.mrdi")
        mr.save(pp, p)
        mr.save(qq, q)

        one = mr.Session()
        lp = mr.load(pp, one)
        lq = mr.load(qq, one)
        assert str(lp + lq) == "x^2 + 3*x*y + y^2"

        s1, s2 = mr.Session(), mr.Session()
        ap = mr.load(pp, s1)
        aq = mr.load(qq, s2)
        try:
            ap + aq
            raise AssertionError("expected MathreproError")
        except mr.MathreproError as e:
            assert "ParentMismatch" in str(e)

        # The file format is canonical JSON plus one newline.
        raw = open(pp, "rb").read()
        assert raw.endswith(b"\n")
        assert raw[:-1] == mr.canonical_bytes(p)
        doc = json.loads(raw)
        assert doc["_format"] == 2
        assert doc["_ns"]["name"] == "mathrepro"


def test_content_id_golden():
    F = mr.GF(7, 2)
    R, (x, y) = mr.polynomial_ring(F, ["x", "y"])
    p = (x + y) ** 2
    assert mr.content_id(p) == "29cc9bae-3403-881a-a13b-277691529ccc"
    assert mr.content_id(R) == "0961fc18-b554-8ca5-bba0-716c953595eb"
    assert (
        mr.canonical_bytes(mr.Integer(42))
        == b'{"_format":2,"_ns":{"name":"mathrepro","version":"0.1.0"},'
        b'"_refs":{},"_type":"Integer","data":"42"}'
    )


def test_validate_and_upgrade_files():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "v.mrdi")
        mr.save(path, mr.Integer(7))
        assert mr.validate_file(path) == []
        before = open(path, "rb").read()
        mr.upgrade_file(path, 2)  # already current: byte no-op
        assert open(path, "rb").read() == before

        doc = json.loads(before)
        doc["data"] = "007"
        doc["junk"] = 1
        with open(os.path.join(tmp, "bad.mrdi"), "w") as f:
            json.dump(doc, f)
        violations = mr.validate_file(os.path.join(tmp, "bad.mrdi"))
        assert any("schema" in v for v in violations)


def tree_hash_reference(root):
    """Independent reimplementation of the directory digest."""

    def file_hash(path):
        with open(path, "rb") as f:
            return hashlib.sha256(b"blob\n" + f.read()).hexdigest()

    def dir_hash(path):
        lines = []
        for name in sorted(os.listdir(path)):
            child = os.path.join(path, name)
            if os.path.islink(child):
                continue
            if os.path.isdir(child):
                h = dir_hash(child)
                if h is None:
                    continue
            elif os.path.isfile(child):
                h = file_hash(child)
            else:
                continue
            lines.append(f"{h} {name}\n")
        if not lines:
            return None
        return hashlib.sha256("".join(lines).encode()).hexdigest()

    h = dir_hash(root)
    return h if h is not None else hashlib.sha256(b"").hexdigest()


def test_tree_hash_matches_reference():
    with tempfile.TemporaryDirectory() as tmp:
        os.makedirs(os.path.join(tmp, "sub", "deep"))
        with open(os.path.join(tmp, "a.txt"), "wb") as f:
            f.write(b"alpha\n")
        with open(os.path.join(tmp, "sub", "deep", "b.bin"), "wb") as f:
            f.write(bytes(range(32)))
        assert mr.tree_hash(tmp) == tree_hash_reference(tmp)

        empty = os.path.join(tmp, "sub", "empty")
        os.makedirs(empty)
        assert mr.tree_hash(empty) == hashlib.sha256(b"").hexdigest()


def test_run_cli_in_process():
    code, out, err = mr.run_cli(["versioninfo"])
    assert code == 0
    assert out.startswith("tool: mathrepro ")
    code, out, err = mr.run_cli(["definitely-not-a-command"])
    assert code == 2
    assert out == ""
    assert err != ""


def test_versioninfo_string():
    text = mr.versioninfo()
    assert text.startswith("tool: mathrepro ")
    assert "timestamp: " in text
    assert "memory" not in text
    assert "memory: " in mr.versioninfo(full=True)


def main():
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"ok   {name}")
            except Exception as e:  # noqa: BLE001 - report and continue
                failures += 1
                print(f"FAIL {name}: {e!r}")
    if failures:
        raise SystemExit(f"{failures} smoke test(s) failed")
    print("python smoke tests passed")


if __name__ == "__main__":
    main()
