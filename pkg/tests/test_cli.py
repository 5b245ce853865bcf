import subprocess
import sys

import pytest

from planarsplit.cli import main
from planarsplit.gen import fixtures


@pytest.fixture()
def k5_file(tmp_path):
    path = tmp_path / "k5.1pl"
    path.write_text(fixtures()["k5"].serialize(), encoding="utf-8")
    return path


def test_partition_k5_verify(k5_file, tmp_path, capsys):
    out = tmp_path / "part.txt"
    rc = main(["partition", str(k5_file), "--out", str(out), "--verify"])
    assert rc == 0
    lines = out.read_text().strip().splitlines()
    forest = [l for l in lines if l.startswith("forest ")]
    planar = [l for l in lines if l.startswith("planar ")]
    assert len(forest) == 1
    assert len(planar) == 9


def test_partition_planar_input(tmp_path):
    from planarsplit.gen import gen_triangulation

    path = tmp_path / "tri.1pl"
    path.write_text(gen_triangulation(12, 1).serialize(), encoding="utf-8")
    out = tmp_path / "part.txt"
    rc = main(["partition", str(path), "--out", str(out), "--verify"])
    assert rc == 0
    assert not [
        l for l in out.read_text().splitlines() if l.startswith("forest ")
    ]


def test_partition_output_deterministic(k5_file, tmp_path):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    assert main(["partition", str(k5_file), "--out", str(a)]) == 0
    assert main(["partition", str(k5_file), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_partition_stats_block(k5_file, tmp_path):
    out = tmp_path / "part.txt"
    assert main(["partition", str(k5_file), "--out", str(out), "--stats"]) == 0
    text = out.read_text()
    assert "# stats" in text
    assert "forest_size=1" in text
    assert "crossing_count=1" in text


def test_malformed_file_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.1pl"
    bad.write_text(
        "n 3\ncrossings 0\nrot 0: 1 2\nrot 1: 2 0\nrot 2: 0 1\n", encoding="utf-8"
    )
    rc = main(["partition", str(bad)])
    captured = capsys.readouterr()
    assert rc == 2
    assert "crossing degree" in captured.err


def test_missing_file_exit_2(capsys):
    assert main(["partition", "/nonexistent/x.1pl"]) == 2


def test_gen_then_partition_then_verify(tmp_path):
    drawing = tmp_path / "g.1pl"
    part = tmp_path / "g.part"
    assert main(["gen", "--n", "60", "--cross", "0.3", "--seed", "7",
                 "--out", str(drawing)]) == 0
    assert main(["partition", str(drawing), "--out", str(part), "--verify"]) == 0
    assert main(["verify", str(drawing), str(part)]) == 0


def test_verify_detects_tampering(tmp_path, capsys):
    drawing = tmp_path / "g.1pl"
    part = tmp_path / "g.part"
    main(["gen", "--n", "30", "--cross", "0.3", "--seed", "1", "--out", str(drawing)])
    main(["partition", str(drawing), "--out", str(part)])
    lines = part.read_text().strip().splitlines()
    forest = [l for l in lines if l.startswith("forest ")]
    planar = [l for l in lines if l.startswith("planar ")]
    # swap one forest edge into the planar side
    moved = forest[0].replace("forest", "planar")
    tampered = "\n".join(forest[1:] + planar + [moved]) + "\n"
    part.write_text(tampered, encoding="utf-8")
    rc = main(["verify", str(drawing), str(part)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "FAIL" in out
    assert "one_chord_per_crossing" in out


def test_verify_unknown_edge_exit_2(tmp_path, capsys):
    drawing = tmp_path / "g.1pl"
    part = tmp_path / "g.part"
    main(["gen", "--n", "20", "--cross", "0.2", "--seed", "3", "--out", str(drawing)])
    main(["partition", str(drawing), "--out", str(part)])
    part.write_text(part.read_text() + "forest 0 19999\n", encoding="utf-8")
    assert main(["verify", str(drawing), str(part)]) == 2


def test_usage_error_exit_2():
    assert main(["partition"]) == 2
    assert main(["bogus-command"]) == 2
    assert main(["gen", "--n", "2"]) == 2


def test_bench_smoke(capsys):
    rc = main(["bench", "--sizes", "100,200", "--seeds", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    lines = out.strip().splitlines()
    assert len(lines) == 3
    assert "ratio" in lines[0]


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "planarsplit.cli", "gen", "--n", "10", "--seed", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("n 1")
