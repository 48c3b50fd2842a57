import io
import json

import pytest

from pretzelfal import cli
from pretzelfal.classify import PretzelFal
from pretzelfal.report import CacheError, ReportDocument, TraceFieldCache, build_report


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv("PRETZELFAL_CACHE", raising=False)


def test_report_round_trip_and_determinism():
    doc = build_report(PretzelFal(7), 128)
    text = doc.render_json()
    assert ReportDocument.parse(text).data == doc.data
    assert build_report(PretzelFal(7), 128).render_json() == text
    with pytest.raises(ValueError):
        ReportDocument.parse(json.dumps({"schema_version": 99}))


def test_report_precision_controls_digits():
    lo = build_report(PretzelFal(5), 64)["volume"]
    hi = build_report(PretzelFal(5), 256)["volume"]
    assert lo["digits"] < hi["digits"]
    assert hi["value"].startswith(lo["value"][:10])


def test_cache_round_trip(tmp_path):
    path = tmp_path / "fields.json"
    c = TraceFieldCache(path)
    for n in (3, 5, 7, 12):
        c.get(n)
    c.save()
    again = TraceFieldCache(path)
    assert len(again) == 4 and 12 in again
    assert str(again.get(7).min_poly) == "x^6+5*x^4+6*x^2+1"


def test_cache_on_and_off_identical(tmp_path):
    path = str(tmp_path / "c.json")
    a = run("report", "--n", "8", "--format", "json")
    b = run("report", "--n", "8", "--format", "json", "--cache", path)
    c = run("report", "--n", "8", "--format", "json", "--cache", path)
    assert a[0] == b[0] == c[0] == 0
    assert a[1] == b[1] == c[1]


def test_corrupted_cache_is_rejected(tmp_path):
    path = tmp_path / "c.json"
    assert run("fields", "--table", "--max", "6", "--cache", str(path))[0] == 0
    data = json.loads(path.read_text())
    blob = data["fields"]["5"]
    blob["min_poly"] = [2, 0, 3, 0, 1] if isinstance(blob.get("min_poly"), list) else "x^4+3*x^2+2"
    path.write_text(json.dumps(data))
    with pytest.raises(CacheError):
        TraceFieldCache(path)
    code, _, err = run("report", "--n", "5", "--cache", str(path))
    assert code == cli.EXIT_VERIFY and "cache" in err
    path.write_text("{not json")
    assert run("fields", "--equal", "3", "4", "--cache", str(path))[0] == cli.EXIT_VERIFY


def test_report_n6():
    code, out, _ = run("report", "--n", "6", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["geodesic"]["gram_entry"] == {"rational": "-10/3"}
    assert d["geodesic"]["gram_entry_integral"] is False
    assert d["arithmeticity"]["verdict"] == "non-arithmetic"
    assert d["trace_field"]["min_poly"] == "x^2+3"
    assert d["commensurability_key"] == "C6"


def test_report_n3_and_prime_family():
    d3 = json.loads(run("report", "--n", "3", "--format", "json")[1])
    assert d3["trace_field"]["min_poly"] == "x^2+1"
    assert d3["arithmeticity"]["verdict"] == "arithmetic"
    d5 = json.loads(run("report", "--n", "5", "--twists", "01111", "--format", "json")[1])
    assert d5["manifold"]["kind"] == "M'_n"
    assert d5["symmetry"]["hidden_count"] == 10
    kinds = [c["kind"] for c in d5["cusp_shapes"]]
    assert "knot-circle" in kinds and "untwisted" in kinds


def test_report_text_and_max_hidden():
    code, out, _ = run("report", "--n", "7")
    assert code == 0 and "min_poly: x^6+5*x^4+6*x^2+1" in out
    code, out, _ = run("report", "--n", "7", "--format", "json", "--max-hidden", "--v0", "0.5")
    assert code == 0 and "max_hidden_symmetries" in json.loads(out)


def test_fields_table():
    code, out, _ = run("fields", "--table", "--max", "10", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert [r["n"] for r in rows] == list(range(3, 11))
    degrees = [r["min_poly"].split("^")[1].split("+")[0] if "^" in r["min_poly"] else "1" for r in rows]
    assert [int(x) for x in degrees] == [2, 2, 4, 2, 6, 4, 6, 4]
    assert [r["phi"] for r in rows] == [2, 2, 4, 2, 6, 4, 6, 4]
    code, csv_out, _ = run("fields", "--table", "--max", "5", "--format", "csv")
    assert csv_out.splitlines()[0] == "n,phi,min_poly,conductor,stabilizer_order"


def test_fields_table_parallel_matches_serial():
    a = run("fields", "--table", "--max", "14", "--format", "json")[1]
    b = run("fields", "--table", "--max", "14", "--format", "json", "--jobs", "2")[1]
    assert a == b


def test_fields_equal():
    code, out, _ = run("fields", "--equal", "3", "6")
    assert code == 0 and out.startswith("false")
    d = json.loads(run("fields", "--equal", "3", "6", "--format", "json")[1])
    assert d["level"] == 12 and d["stabilizers"] == {"3": [1, 5], "6": [1, 7]}
    assert run("fields", "--equal", "7", "7")[1].startswith("true")


def test_classify_range():
    code, out, _ = run("classify", "--range", "3..10", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and [r["n"] for r in rows] == list(range(3, 11))
    arith = [r["n"] for r in rows if r["verdict"] == "arithmetic"]
    assert arith == [3, 4]
    fs = [float(r["f"]) for r in rows]
    assert all(a < b for a, b in zip(fs, fs[1:]))
    by_n = {r["n"]: r for r in rows}
    assert by_n[8]["evidence"] == "degree"
    assert by_n[6]["evidence"] == "degree+vinberg"
    assert by_n[7]["corroboration"] == "unavailable"


def test_classify_missing_table_warns(tmp_path):
    code, out, err = run("classify", "--range", "7..8", "--nr-table", str(tmp_path / "none.json"))
    assert code == 0 and "warning" in err and out


def test_exit_codes():
    assert run("report", "--n", "5", "--twists", "011")[0] == cli.EXIT_USAGE
    assert run("report", "--n", "2")[0] == cli.EXIT_USAGE
    assert run("report", "--n", "7", "--max-hidden")[0] == cli.EXIT_MISSING
    assert run("report", "--n", "7", "--precision", "8")[0] == cli.EXIT_USAGE
    assert run("classify", "--range", "9..4")[0] == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        run("classify", "--range", "nonsense")
    assert exc.value.code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        run("bogus")
    assert exc.value.code == cli.EXIT_USAGE


def test_verify_graphs_suite():
    code, out, _ = run("verify", "--suite", "graphs")
    assert code == 0
    assert "[PASS]  8 crushtacean criterion" in out and "1 passed, 0 failed" in out
