import os
import pathlib

import pytest

import qmonadic as q

FIXTURES = pathlib.Path(os.environ.get("QMON_FIXTURES", pathlib.Path(__file__).parents[2] / "fixtures"))


def test_boolean_lattice_basics():
    b = q.boolean(2)
    assert len(b) == 4
    assert b.meet(1, 2) == b.zero
    assert b.join(1, 2) == b.one
    assert b.ortho(1) == 2
    assert q.ol_violations(b) == []
    assert q.is_orthomodular(b)


def test_round_trip_on_mo2():
    l = q.mo(2)
    for s in q.subalgebras(l):
        e = q.quantifier_from_subalgebra(l, s)
        assert q.is_quantifier(l, e)
        assert q.fixpoints(e) == s


def test_hexagon_is_not_orthomodular():
    assert not q.is_orthomodular(q.hexagon())


def test_json_round_trip():
    l = q.mo(3)
    again = q.Lattice.from_json(l.to_json())
    assert len(again) == len(l) and again.labels == l.labels


def test_check_fixture_quantifier():
    r = q.check("quantifier", FIXTURES / "mo2_quantifier.json")
    assert r["exit_code"] == 0


def test_check_refuses_malformed_lattice():
    with pytest.raises(q.QmonError):
        q.check("lattice", FIXTURES / "not_a_lattice.json")


def test_repro_q6():
    r = q.repro("q6")
    assert r["exit_code"] == 0


def test_exists_over_bell_vector_is_full():
    doc = {"factors": [2, 2], "basis": [["1", "0", "0", "1"]]}
    out = q.exists_factor(doc, 0)
    assert len(out["basis"]) == 4


def test_size_guard():
    with pytest.raises(q.SizeGuardError):
        q.search("q6", max_blocks=9)
