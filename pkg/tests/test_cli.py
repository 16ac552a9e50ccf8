"""CLI commands: exit codes, JSON payloads, determinism."""

import json
import subprocess
import sys

import pytest

from matroid_arena import cli

from conftest import CATALOG


@pytest.fixture()
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return {
        "u12": write("u12.json", {"type": "uniform", "n": 2, "r": 1}),
        "u13": write("u13.json", {"type": "uniform", "n": 3, "r": 1}),
        "u24": write("u24.json", {"type": "uniform", "n": 4, "r": 2}),
        "k4": write(
            "k4.json",
            {
                "type": "graphic",
                "vertices": 4,
                "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
            },
        ),
        "k5": write(
            "k5.json",
            {
                "type": "graphic",
                "vertices": 5,
                "edges": [[i, j] for i in range(5) for j in range(i + 1, 5)],
            },
        ),
        "loopy": write("loopy.json", {"type": "graphic", "vertices": 2, "edges": [[1, 1]]}),
        "w1x6": write("w1x6.json", {"w": [1] * 6}),
        "l2x6": write("l2x6.json", {"l": [2] * 6}),
        "w1x3": write("w1x3.json", {"w": [1] * 3}),
        "l2x3": write("l2x3.json", {"l": [2] * 3}),
        "l2x2": write("l2x2.json", {"l": [2, 2]}),
        "wbig": write("wbig.json", {"w": [2, 1, 1, 1]}),
        "l1x4": write("l1x4.json", {"l": [1, 2, 2, 2]}),
        "lists12": write("lists12.json", {"lists": [[1, 2], [2, 3]]}),
        "lists13": write("lists13.json", {"lists": [[1, 2], [1, 2], [1, 2]]}),
        "tmp": tmp_path,
    }


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_chroma_k4(capsys, files):
    code, out = run(capsys, ["chroma", "--matroid", files["k4"]])
    assert code == 0
    payload = json.loads(out)
    assert payload["chi"] == 2
    assert len(payload["cover"]["parts"]) == 2
    assert sorted(e for p in payload["cover"]["parts"] for e in p) == list(range(6))


def test_chroma_u13(capsys, files):
    code, out = run(capsys, ["chroma", "--matroid", files["u13"]])
    assert code == 0 and json.loads(out)["chi"] == 3


def test_chroma_loop_exit2(capsys, files):
    code, _ = run(capsys, ["chroma", "--matroid", files["loopy"]])
    assert code == 2


def test_wcover_feasible(capsys, files):
    code, out = run(
        capsys,
        ["wcover", "--matroid", files["k4"], "--weights", files["w1x6"], "--lists", files["l2x6"]],
    )
    assert code == 0 and "cover" in json.loads(out)


def test_wcover_witness(capsys, files):
    code, out = run(
        capsys, ["wcover", "--matroid", files["u13"], "--lists", files["l2x3"]]
    )
    assert code == 1
    assert json.loads(out)["witness"]["A"] == [0, 1, 2]


def test_wcover_list_below_weight(capsys, files):
    code, out = run(
        capsys,
        ["wcover", "--matroid", files["u24"], "--weights", files["wbig"], "--lists", files["l1x4"]],
    )
    assert code == 1
    assert json.loads(out)["witness"]["A"] == [0]


def test_play_u12(capsys, files):
    out_file = files["tmp"] / "t.json"
    code, out = run(
        capsys,
        ["play", "--matroid", files["u12"], "--lists", files["l2x2"], "--out", str(out_file)],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["result"] == "alice" and len(payload["rounds"]) == 2
    assert json.loads(out_file.read_text()) == payload


def test_play_bob_wins_exit1(capsys, files):
    code, out = run(
        capsys, ["play", "--matroid", files["u13"], "--lists", files["l2x3"]]
    )
    assert code == 1 and json.loads(out)["result"] == "bob"


def test_play_unknown_bob_exit2(capsys, files):
    code, _ = run(
        capsys,
        ["play", "--matroid", files["u12"], "--lists", files["l2x2"], "--bob", "nope"],
    )
    assert code == 2


def test_verify_exhaustive(capsys, files):
    code, out = run(
        capsys, ["verify", "--matroid", files["u12"], "--k", "2", "--mode", "exhaustive"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["winner"] == "alice" and payload["counterexample"] is None


def test_verify_minimax_bob(capsys, files):
    code, out = run(
        capsys, ["verify", "--matroid", files["u12"], "--k", "1", "--mode", "minimax"]
    )
    assert code == 1
    payload = json.loads(out)
    assert payload["winner"] == "bob"
    assert payload["counterexample"]["result"] == "bob"


def test_verify_too_large_exit2(capsys, files):
    code, _ = run(
        capsys, ["verify", "--matroid", files["k5"], "--k", "3", "--mode", "exhaustive"]
    )
    assert code == 2


def test_exchange_check_exhaustive(capsys, files):
    code, out = run(capsys, ["exchange-check", "--matroid", files["u24"], "--exhaustive"])
    assert code == 0
    payload = json.loads(out)
    assert payload["failed"] == 0 and payload["checked"] == 363


def test_exchange_check_zero_samples(capsys, files):
    code, out = run(capsys, ["exchange-check", "--matroid", files["k4"]])
    assert code == 0 and json.loads(out)["checked"] == 0


def test_exchange_check_sampled(capsys, files):
    code, out = run(
        capsys,
        ["exchange-check", "--matroid", files["k4"], "--samples", "300", "--seed", "1"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {"checked": 300, "passed": 300, "failed": 0}


def test_list_color(capsys, files):
    code, out = run(
        capsys, ["list-color", "--matroid", files["u12"], "--lists", files["lists12"]]
    )
    assert code == 0
    w = json.loads(out)["W"]
    assert len(w[0]) == 1 and len(w[1]) == 1


def test_list_color_infeasible_exit1(capsys, files):
    code, out = run(
        capsys, ["list-color", "--matroid", files["u13"], "--lists", files["lists13"]]
    )
    assert code == 1 and "witness" in json.loads(out)


def test_missing_file_exit2(capsys, files):
    code, _ = run(capsys, ["chroma", "--matroid", str(files["tmp"] / "absent.json")])
    assert code == 2


def test_determinism_byte_identical(capsys, files):
    argv = ["play", "--matroid", files["k4"], "--lists", files["l2x6"], "--bob", "random", "--seed", "9"]
    first = run(capsys, argv)
    second = run(capsys, argv)
    assert first == second


def test_serve_occupied_port_exit2(capsys):
    import socket

    sock = socket.socket()
    sock.bind(("127.0.0.1", 0))
    port = sock.getsockname()[1]
    try:
        code, _ = run(capsys, ["serve", "--port", str(port)])
        assert code == 2
    finally:
        sock.close()


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "matroid_arena.cli", "chroma", "--matroid", files["u13"]],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["chi"] == 3
