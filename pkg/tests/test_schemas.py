import json
from pathlib import Path

import pytest

from sigvar.paths import AxisPath, PLPath, signature_pl
from sigvar.polytopes import very_ample_hole
from sigvar.toric import rigid_square

jsonschema = pytest.importorskip("jsonschema")

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def check(name, instance):
    schema = json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    jsonschema.validate(instance, schema)


def test_outputs_match_schemas():
    path = PLPath(2, ((1, 0), (0, "1/2")))
    check("path", path.to_json())
    check("axis_path", AxisPath((1, 2, 1), (1, 2, -3)).to_json())
    check("tensor", signature_pl(path, 3).to_json())
    check("weighted_polytope", {"weights": [1, 2, 3], "k": 6})
    check("hole_certificate", very_ample_hole((1, 6, 10, 15), 30, 60).certificate.to_json())
    check("rigid_square", rigid_square(4).to_json())


def test_schema_rejects_bad_input():
    with pytest.raises(jsonschema.ValidationError):
        check("axis_path", {"shape": [], "lengths": []})


def test_report_envelope(capsys):
    from sigvar.cli import run

    run(["liedim", "--d", "2", "--m", "3", "--report"])
    check("report", json.loads(capsys.readouterr().out))
