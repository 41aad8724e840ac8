import io
import json
import subprocess
import sys
from itertools import combinations

import pytest

from fibrous.cli import (
    EXIT_INVALID_COMPLEX,
    EXIT_IO,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_RESOLUTION,
    EXIT_SCHEMA,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    main,
    resum_json,
)
from fibrous import Catalog, CatalogEntry, CatalogRef, Finite, Param


def run(*argv, catalog=None):
    out, err = io.StringIO(), io.StringIO()
    kwargs = {"catalog": catalog} if catalog else {}
    code = main(list(argv), out=out, err=err, **kwargs)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return write


# -- eval ----------------------------------------------------------------------


def test_eval_rosette_surface():
    code, out, _ = run("eval", "p(S^1)rosette(4)")
    assert code == EXIT_OK
    assert out.strip() == "chi(p(S^1)rosette(4)) = -2"


def test_eval_point():
    assert run("eval", "p")[1].strip() == "chi(p) = 1"


def test_eval_klein_bottle():
    assert run("eval", "S^1(S^1)S^1")[1].strip().endswith("= 0")


def test_explain_writes_the_alternating_sums():
    code, out, _ = run("eval", "M_3", "--explain")
    assert code == EXIT_OK
    assert "p(S^1)chain(4)(4*S^1)chain(4)(S^1)p = 1 - 0 + (-3) - 0 + (-3) - 0 + 1 = -4" in out
    assert "level (1,2): - 4*S^1 = 4 x 0 = 0" in out
    assert "level 0: + p = 1  [finite-count]" in out


def test_explain_example_two_arithmetic():
    out = run("eval", "rosette(3)", "--explain")[1]
    assert "rosette(2)(2p)p = (-1) - 2 + 1 = -2" in out


def test_json_output_round_trips():
    code, out, _ = run("eval", "S^1(S^1)chain(2)(2*S^1)2*S^1", "--json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert set(data) == {"expr", "chi", "derivation"}
    assert data["chi"] == -1
    root = data["derivation"]
    assert root["rule"] == "alternating-sum"
    assert [c["sign"] for c in root["children"]] == [1, -1, 1, -1, 1]
    assert [c["level"] for c in root["children"]] == [0, [0, 1], 1, [1, 2], 2]
    assert resum_json(root) == data["chi"]


def test_resum_detects_tampering():
    data = json.loads(run("eval", "p(S^0)p", "--json")[1])
    data["derivation"]["chi"] = 5
    with pytest.raises(ValueError):
        resum_json(data["derivation"])


def test_eval_with_oracle():
    code, out, _ = run("eval", "N_1", "--oracle")
    assert code == EXIT_OK
    assert "oracle faces: 1 match" in out
    assert "oracle betti: 1 match" in out
    data = json.loads(run("eval", "2*S^2+T^3", "--oracle", "--json")[1])
    assert data["oracle"] == [{"route": "cells", "chi": 4}]
    assert data["match"] is True
    assert "no realization" in run("eval", "p(S^0)p", "--oracle")[1]


def test_eval_parse_error():
    code, out, err = run("eval", "p(S^0)(S^0)p")
    assert code == EXIT_PARSE
    assert out == ""
    assert "two running fibers" in err and "6:7" in err


def test_eval_resolution_error():
    code, _, err = run("eval", "p(T^4)p")
    assert code == EXIT_RESOLUTION
    assert "1 <= n <= 3" in err and "2:5" in err


def test_depth_bound_is_a_resolution_error():
    loop = CatalogEntry("loop", "call", (Param("k"),), lambda k: CatalogRef("loop", (k,)))
    code, _, err = run("eval", "loop(1)", catalog=Catalog((loop,)))
    assert code == EXIT_RESOLUTION
    assert "exceeded depth" in err


# -- verify --------------------------------------------------------------------


def _rows(out):
    return [line.split() for line in out.splitlines()[1:-1]]


def test_verify_spheres():
    code, out, _ = run("verify", "S", "--max", "6")
    assert code == EXIT_OK
    rows = _rows(out)
    assert [(r[0], int(r[1])) for r in rows] == [(f"S^{n}", 2 if n % 2 == 0 else 0) for n in range(7)]
    assert all(r[-1] == "PASS" for r in rows)


def test_verify_projective_spaces():
    code, out, _ = run("verify", "RP", "--max", "5")
    assert code == EXIT_OK
    assert [int(r[1]) for r in _rows(out)] == [1, 0, 1, 0, 1, 0]


def test_verify_surfaces():
    code, out, _ = run("verify", "M", "--max", "4")
    assert code == EXIT_OK
    assert [int(r[1]) for r in _rows(out)] == [2, 0, -2, -4, -6]


def test_verify_json_and_single_tuple():
    code, out, _ = run("verify", "cw", "--params", "4,6,4", "--json")
    assert code == EXIT_OK
    (row,) = json.loads(out)
    assert row == {"params": [4, 6, 4], "space": "cw(4,6,4)", "chi": 2, "expected": 2,
                   "alternatives": [], "oracles": [{"route": "cells", "chi": 2}], "pass": True}


def test_verify_default_sweep_covers_everything():
    for name in ("S", "rosette", "chain", "M", "N", "RP", "D", "T", "cw"):
        assert run("verify", name)[0] == EXIT_OK


def test_verify_reports_failures():
    wrong = CatalogEntry("bad", "^", (Param("n"),), lambda n: Finite(n), expected_chi=lambda n: n + 1)
    code, out, _ = run("verify", "bad", "--max", "2", catalog=Catalog((wrong,)))
    assert code == EXIT_VERIFY_FAILED
    assert out.count("FAIL") == 3


def test_verify_errors():
    assert run("verify", "Q")[0] == EXIT_RESOLUTION
    code, _, err = run("verify", "T", "--min", "5")
    assert code == EXIT_USAGE and "empty parameter range" in err
    assert run("verify", "S", "--params", "1,x")[0] == EXIT_USAGE


# -- complex -------------------------------------------------------------------


def test_complex_sphere(files):
    path = files("s2.json", {"maximal_simplices": [list(s) for s in combinations(range(4), 3)]})
    code, out, _ = run("complex", "chi", path)
    assert code == EXIT_OK
    assert "chi_by_faces = 2" in out and "chi_by_betti = 2" in out and "match" in out
    code, out, _ = run("complex", "betti", path)
    assert out.strip() == "betti = [1, 0, 1]"


def test_complex_cycle(files):
    path = files("c.json", {"maximal_simplices": [[0, 1], [1, 2], [0, 2]]})
    assert "chi_by_faces = 0" in run("complex", "chi", path)[1]


def test_complex_torsion_listing(files):
    from fibrous.catalog import RP2_TRIANGLES

    path = files("rp2.json", {"maximal_simplices": [list(t) for t in RP2_TRIANGLES]})
    code, out, _ = run("complex", "betti", path)
    assert code == EXIT_OK
    assert "torsion H_1: Z/2" in out
    data = json.loads(run("complex", "betti", path, "--json")[1])
    assert data == {"betti": [1, 0, 0], "torsion": [[], [2], []]}


def test_complex_cell_counts(files):
    path = files("t3.json", {"cell_counts": [1, 3, 3, 1]})
    assert run("complex", "chi", path)[1].strip() == "chi_by_cells = 0"
    assert run("complex", "betti", path)[0] == EXIT_SCHEMA


def test_complex_error_codes(files, tmp_path):
    assert run("complex", "chi", files("bad.json", "{not json"))[0] == EXIT_SCHEMA
    assert run("complex", "chi", files("wrong.json", {"simplices": []}))[0] == EXIT_SCHEMA
    assert run("complex", "chi", files("dup.json", {"maximal_simplices": [[0, 0, 1]]}))[0] == EXIT_INVALID_COMPLEX
    assert run("complex", "chi", files("cw0.json", {"cell_counts": [1, 0]}))[0] == EXIT_INVALID_COMPLEX
    assert run("complex", "chi", str(tmp_path / "missing.json"))[0] == EXIT_IO


# -- catalog -------------------------------------------------------------------


def test_catalog_listing():
    code, out, _ = run("catalog")
    assert code == EXIT_OK
    assert "S^n = p(S^(n-1))p" in out
    assert "N_h = 2-h" in out
    assert "example:       S^2 = p(S^1)p" in out
    assert run("catalog")[1] == out


def test_catalog_json():
    rows = json.loads(run("catalog", "--json")[1])
    assert [r["name"] for r in rows] == ["S", "rosette", "chain", "M", "N", "RP", "D", "T", "cw"]


def test_help_exits_cleanly():
    assert run("--help")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fibrous", "eval", "T^3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "chi(T^3) = 0"
    proc = subprocess.run([sys.executable, "-m", "fibrous", "--help"], capture_output=True, text=True)
    assert "3  DSL parse error" in proc.stdout
