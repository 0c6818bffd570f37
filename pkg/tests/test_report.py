import pytest

from centrekit.finkit import FinFn, FinSet, identity_fn
from centrekit.report import LawRecord, Report


X = FinSet("X", ("a", "b"))


def test_record_line_formats():
    rec = LawRecord(law="assoc", grades=("t", "e"), ok=False, witness="a", lhs="p", rhs="q")
    line = rec.line()
    assert line.startswith("FAIL")
    assert "assoc" in line
    assert "grades=t,e" in line
    assert "witness=a" in line and "lhs=p" in line and "rhs=q" in line
    ok = LawRecord(law="unit")
    assert ok.line().startswith("pass")
    assert "witness" not in ok.line()


def test_compare_records_mismatch():
    rep = Report("demo")
    f = identity_fn(X)
    g = FinFn(X, X, {"a": "a", "b": "a"})
    rep.compare("law1", (), (), f, f)
    rep.compare("law2", ("g",), ("X",), f, g)
    assert rep.records[0].ok
    assert not rep.records[1].ok
    assert rep.records[1].witness == "b"
    assert rep.records[1].lhs == "b"
    assert rep.records[1].rhs == "a"
    assert not rep.ok
    assert [r.law for r in rep.failures()] == ["law2"]


def test_compare_requires_same_domain():
    rep = Report("demo")
    Y = FinSet("Y", ("a",))
    with pytest.raises(ValueError):
        rep.compare("law", (), (), identity_fn(X), identity_fn(Y))


def test_extend_prefixes():
    inner = Report("inner")
    inner.add(LawRecord(law="unit", ok=False))
    outer = Report("outer")
    outer.extend(inner, prefix="sub.")
    assert outer.records[0].law == "sub.unit"


def test_json_round_trip():
    rep = Report("demo")
    rep.add(LawRecord(law="a", grades=("x",), sets=("S",), ok=False, witness="w", lhs="1", rhs="2", note="n"))
    rep.add(LawRecord(law="b"))
    back = Report.from_json(rep.to_json())
    assert back.title == rep.title
    assert back.records == rep.records


def test_to_text_failures_only():
    rep = Report("demo")
    rep.add(LawRecord(law="good"))
    rep.add(LawRecord(law="bad", ok=False))
    text = rep.to_text()
    assert "bad" in text and "good" not in text
    full = rep.to_text(failures_only=False)
    assert "good" in full
