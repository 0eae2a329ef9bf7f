from __future__ import annotations

import subprocess
import sys

import pytest

from cobcalc.cli import main
from cobcalc.demo import demo_presentation
from cobcalc.planar import diagram_to_text
from cobcalc.presentation_io import write_presentation
from cobcalc.words import surgery


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


def test_validate_demo(capsys):
    code, out, _ = call(capsys, "validate")
    assert code == 0
    assert out == ["valid presentation objects=3 generators=2 triangles=0 nullcobs=0"]


def test_shadow_word(capsys):
    assert call(capsys, "shadow", "(gen g1)")[:2] == (0, ["shadow=1/2"])
    assert call(capsys, "shadow", "(id A)")[1] == ["shadow=0/1"]


def test_shadow_bare_diagram(capsys, tmp_path):
    f = tmp_path / "d.txt"
    f.write_text(diagram_to_text(surgery(demo_presentation(), "A", "B", ["x"]).diagram))
    code, out, _ = call(capsys, "shadow", "--input", str(f))
    assert code == 0 and out == ["shadow=0/1"]


def test_equiv(capsys):
    code, out, _ = call(capsys, "equiv", "(surgery A B (x) 0)", "(surgery A B (y) 0)")
    assert code == 0 and out == ["equivalent witness={z}"]
    assert call(capsys, "equiv", "(surgery A B (x) 0)", "(surgery A B () 0)")[1] == ["inequivalent"]


def test_k0_and_omega_agree(capsys):
    _, k, _ = call(capsys, "k0")
    _, o, _ = call(capsys, "omega")
    assert k[0].startswith("k0 dim=1") and o[0].startswith("omega dim=1")
    assert k[1:] == o[1:]


def test_dist(capsys):
    code, out, _ = call(capsys, "dist", "A", "B")
    assert out == ["value=1/2 bound=3 certificate=(gen g1)"]
    assert call(capsys, "dist", "A", "B", "--family", "C")[1][0].startswith("value=1/4")


def test_theta_and_rotate(capsys):
    code, out, _ = call(capsys, "theta", "(surgery A B (x) 0)")
    assert out == ["theta=[x]", "hom=A->B", "zero=0"]
    code, out, _ = call(capsys, "rotate", "(surgery A B (x) 0)")
    assert "source=B" in out and "ends=A,[A#x#B]" in out


def test_check_axioms_exit(capsys):
    code, out, _ = call(capsys, "check-axioms")
    assert code == 0 and out[-1] == "result=PASS"


def test_exit_codes(capsys):
    code, _, err = call(capsys, "shadow", "(compose (gen g1)")
    assert code == 2 and err.startswith("parse error: line 1, column 1")
    code, _, err = call(capsys, "compose", "(gen g1)", "(gen g1)")
    assert code == 1 and "EndMismatch" in err
    code, _, _ = call(capsys, "surgery", "A", "B", "--points", "z")
    assert code == 1


def test_bad_input_file(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("[objects]\nA\n[wobble]\n")
    code, _, err = call(capsys, "validate", "--input", str(f))
    assert code == 2 and "line 3" in err


def test_input_presentation(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text(write_presentation(demo_presentation()))
    code, out, _ = call(capsys, "validate", "--input", str(f), "--report")
    assert code == 0 and out[0] == "command=validate" and out[-1] == "status=0"
    assert out[1].startswith("input=") and out[1] != "input=builtin"


def test_render_to_file(capsys, tmp_path):
    f = tmp_path / "s.svg"
    code, out, _ = call(capsys, "render", "(surgery A B (x) 0)", "--svg-out", str(f))
    assert code == 0 and out == [f"svg={f}"]
    first = f.read_bytes()
    assert first.startswith(b"<?xml") and b'class="crossing"' in first
    call(capsys, "render", "(surgery A B (x) 0)", "--svg-out", str(f))
    assert f.read_bytes() == first


@pytest.mark.parametrize("argv", [["k0"], ["dist", "A", "B"], ["check-axioms"]])
def test_repeat_runs_identical(argv):
    runs = [
        subprocess.run([sys.executable, "-m", "cobcalc", *argv], capture_output=True).stdout
        for _ in range(2)
    ]
    assert runs[0] == runs[1] and runs[0]


def test_seeded_presentation(capsys):
    code, out, _ = call(capsys, "validate", "--seed", "3")
    assert code == 0 and out[0].startswith("valid presentation")
