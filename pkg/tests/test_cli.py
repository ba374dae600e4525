import json
import random
import subprocess
import sys
from fractions import Fraction as Q

import pytest

from cactilab import cacti, framed_discs
from cactilab.cli import main
from cactilab.loop_algebra import GROUPS, random_loop
from cactilab.serialize import cactus_to_json, discs_to_json, dumps, loop_to_json, segments_to_json
from cactilab.segments import SegmentConfig


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else dumps(obj))
        return str(p)
    return write


def test_validate_base_cactus(files, capsys):
    path = files("base2.json", cactus_to_json(cacti.base_cactus(2)))
    assert main(["validate", "--kind", "cactus", path]) == 0
    assert capsys.readouterr().out.strip() == "ok"


def test_validate_failure_and_parse_error(files, capsys):
    bad = files("bad.json", cactus_to_json(cacti.from_cell([1, 2, 1, 2], 2, [Q(1, 4)] * 4)))
    assert main(["validate", "--kind", "cactus", bad]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["kind"] == "treelike" and report["witness"][:2] == ["1", "2"]
    noncanon = files("nc.json", '{"n": 1, "coords": [{"t": ["0", "2/2"], "v": ["0", "1"]}]}')
    assert main(["validate", "--kind", "cactus", noncanon]) == 2
    assert main(["validate", "--kind", "cactus", "--no-strict", noncanon]) == 0
    assert main(["validate", "--kind", "cactus", files("junk.json", "{")]) == 2


def test_validate_discs_and_segments(files):
    a = files("a.json", discs_to_json(framed_discs.base_config(2, Q(1, 4))))
    assert main(["validate", "--kind", "discs", a]) == 0
    s = files("s.json", segments_to_json(SegmentConfig(((Q(0),), (Q(3),)))))
    assert main(["validate", "--kind", "segments", s]) == 1


def test_validate_loop(files):
    good = files("l.json", loop_to_json(random_loop(random.Random(0), GROUPS["ut3"]), GROUPS["ut3"]))
    assert main(["validate", "--kind", "loop", "--group", "ut3", good]) == 0


def test_compose(files, tmp_path):
    b = files("b.json", cactus_to_json(cacti.base_cactus(2)))
    out = tmp_path / "out.json"
    assert main(["compose", "--kind", "cactus", "--index", "1", b, b, "-o", str(out)]) == 0
    got = json.loads(out.read_text())
    assert got == cactus_to_json(cacti.compose_cacti(cacti.base_cactus(2), 1, cacti.base_cactus(2)))
    assert main(["compose", "--kind", "cactus", b, b]) == 2
    d = files("d.json", discs_to_json(framed_discs.base_config(2, Q(1, 4))))
    assert main(["compose", "--kind", "discs", d, d, d, "-o", str(out)]) == 0
    assert json.loads(out.read_text())["n"] == 4


def test_cells_csv(capsys):
    assert main(["cells", "--n", "2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ["sequence,dimension", "1 2,0", "2 1,0", "1 2 1,1", "2 1 2,1"]


def test_braid_images(capsys):
    assert main(["braid", "--n", "2", "--word", "s1 s1", "--show-images"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "x1 -> x1 x2 x1 x2^-1 x1^-1"
    assert out[1] == "x2 -> x1 x2 x1^-1"
    assert out[2] == "pure: yes"
    assert main(["braid", "--n", "2", "--word", "s9"]) == 2
    assert main(["braid", "--n", "2", "--word", "s1 z1"]) == 1


def test_axioms_report(tmp_path):
    out = tmp_path / "r.json"
    code = main(["axioms", "--operad", "cacti", "--trials", "3", "--samples", "8", "-o", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    names = {r["axiom"] for r in report["realization"]["results"]}
    assert {"axiom1_unit", "axiom6_pasting_associativity"} <= names
    assert all(r["pass"] for r in report["operad"]["results"])


def test_omega_pontrjagin(files, tmp_path):
    s1 = GROUPS["s1"]
    rng = random.Random(4)
    f, g = random_loop(rng, s1), random_loop(rng, s1)
    c = files("p.json", cactus_to_json(cacti.pontrjagin_cactus()))
    out = tmp_path / "w.json"
    assert main(["omega", "--group", "s1", c, files("f.json", loop_to_json(f, s1)),
                 files("g.json", loop_to_json(g, s1)), "-o", str(out)]) == 0
    assert set(json.loads(out.read_text())) == {"t", "v"}
    assert main(["omega", "--group", "s1", c, files("f2.json", loop_to_json(f, s1))]) == 2


def test_adapted_path(files, capsys):
    cfg = files("cfg.json", segments_to_json(SegmentConfig(((Q(0),), (Q(1, 2),)))))
    assert main(["adapted-path", cfg, "--from", "0,0", "--to", "1/2,1"]) == 0
    got = json.loads(capsys.readouterr().out)
    assert got["speed"] == "3/2"
    assert [p["interval"] for p in got["pieces"]] == [["0", "1/3"], ["1/3", "1"]]
    assert main(["adapted-path", cfg, "--from", "1,1", "--to", "0,0"]) == 1


def test_render_is_deterministic(files, tmp_path):
    c = files("c.json", cactus_to_json(cacti.base_cactus(4)))
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["render", "--kind", "cactus", c, "-o", str(a)]) == 0
    assert main(["render", "--kind", "cactus", c, "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as e:
        main(["cells"])
    assert e.value.code == 2


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "cactilab.cli", "cells", "--n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[1] == "1,0"
