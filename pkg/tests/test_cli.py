"""The command line end to end, in process: outputs, exit codes, determinism."""

import io
import json
import socket

import pytest

from graphnim import load_graph
from graphnim.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- gen -----------------------------------------------------------------------

def test_gen_writes_a_cube(tmp_path, capsys):
    path = tmp_path / "q3.json"
    code, out, _ = run(capsys, "gen", "--cube", "3", "--out", str(path))
    assert code == 0
    assert out == f"wrote {path}: 8 vertices, 12 edges\n"
    g = load_graph(path)
    assert g.name == "Q3" and len(g.edges) == 12


def test_gen_truncated(tmp_path, capsys):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, "gen", "--cube", "5", "--truncate", "2", "--out", str(path))
    assert code == 0
    assert "16 vertices, 25 edges" in out


def test_gen_rejects_dimension_zero(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "--cube", "0", "--out", str(tmp_path / "x.json"))
    assert code == 2
    assert "dimension must be >= 1" in err


def test_gen_rejects_oversized_cube(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "--cube", "25", "--out", str(tmp_path / "x.json"))
    assert code == 3
    assert "exceeds the cap" in err


def test_gen_rejects_bad_truncation(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "--cube", "3", "--truncate", "-1",
                       "--out", str(tmp_path / "x.json"))
    assert code == 2


# -- solve -----------------------------------------------------------------------

@pytest.fixture
def q3_file(tmp_path, capsys):
    path = tmp_path / "q3.json"
    assert main(["gen", "--cube", "3", "--out", str(path)]) == 0
    capsys.readouterr()
    return str(path)


def test_solve_q3(q3_file, capsys):
    code, out, err = run(capsys, "solve", "--graph", q3_file)
    assert code == 0
    verdict, stats = out.splitlines()
    assert verdict == "P1 wins"
    doc = json.loads(stats)
    assert doc == {"outcome": "MoverWins", "bestMove": {"to": "1", "amount": 1},
                   "nodesExpanded": 26, "tableEntries": 26, "kernel": doc["kernel"]}
    assert err.startswith("elapsed ") and err.rstrip().endswith("s")


def test_solve_stdout_is_reproducible(q3_file, capsys):
    first = run(capsys, "solve", "--graph", q3_file)
    second = run(capsys, "solve", "--graph", q3_file)
    assert first[0] == second[0] == 0
    assert first[1] == second[1]  # byte for byte; timing lives on stderr


def test_solve_p2_board(tmp_path, capsys):
    path = tmp_path / "q2.json"
    main(["gen", "--cube", "2", "--out", str(path)])
    capsys.readouterr()
    code, out, _ = run(capsys, "solve", "--graph", str(path))
    assert code == 0
    assert out.splitlines()[0] == "P2 wins"
    assert json.loads(out.splitlines()[1])["bestMove"] is None


def test_solve_node_limit_abort(q3_file, capsys):
    code, out, _ = run(capsys, "solve", "--graph", q3_file, "--nodes", "5")
    assert code == 4
    verdict, stats = out.splitlines()
    assert verdict == "aborted: node-limit"
    assert json.loads(stats)["nodesExpanded"] == 6


def test_solve_missing_file(capsys):
    code, _, err = run(capsys, "solve", "--graph", "/nonexistent.json")
    assert code == 2
    assert "cannot read file" in err


# -- verify -----------------------------------------------------------------------

def test_verify_q3_all(capsys):
    code, out, _ = run(capsys, "verify", "--cube", "3", "--strategy", "p1odd")
    assert code == 0
    verdict, stats = out.splitlines()
    assert verdict == "verified"
    doc = json.loads(stats)
    assert doc["quantifier"] == "AllCompliant"
    assert doc["linesExplored"] == 6
    assert doc["maxGameLength"] == 7
    assert doc["nodesExpanded"] == 55


def test_verify_exists_quantifier(capsys):
    code, out, _ = run(capsys, "verify", "--cube", "3", "--strategy", "p1odd",
                       "--quantifier", "exists")
    assert code == 0
    assert json.loads(out.splitlines()[1])["quantifier"] == "ExistsCompliant"


def test_verify_wrong_parity_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--cube", "4", "--strategy", "p1odd")
    assert code == 2
    assert "odd dimension" in err


def test_verify_abort_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--cube", "5", "--strategy", "p1odd",
                       "--nodes", "100")
    assert code == 4
    assert out.splitlines()[0] == "aborted: node-limit"


def test_verify_stdout_reproducible(capsys):
    args = ("verify", "--cube", "5", "--strategy", "p1odd", "--quantifier", "exists")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


# -- playouts -----------------------------------------------------------------------

def test_playouts_even_cube(capsys):
    code, out, _ = run(capsys, "playouts", "--cube", "4", "--games", "20", "--seed", "7")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 21
    per_game = [json.loads(line) for line in lines[:-1]]
    assert all(g["pass"] and g["stuck"] == "P1" for g in per_game)
    assert [g["seed"] for g in per_game] == list(range(7, 27))
    summary = json.loads(lines[-1])
    assert summary["games"] == 20 and summary["passed"] == 20 and summary["failed"] == 0
    assert summary["stuck"] == {"P1": 20, "P2": 0}


def test_playouts_odd_cube_strategy(capsys):
    code, out, _ = run(capsys, "playouts", "--cube", "3", "--games", "30", "--seed", "0",
                       "--p1", "p1odd")
    assert code == 0
    summary = json.loads(out.splitlines()[-1])
    assert summary["stuck"] == {"P1": 0, "P2": 30}
    assert summary["maxMoves"] == 7


def test_playouts_stdout_reproducible(capsys):
    args = ("playouts", "--cube", "4", "--games", "10", "--seed", "3")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


# -- play -----------------------------------------------------------------------

def play_script(monkeypatch, capsys, text, *argv):
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    return run(capsys, "play", *argv)


def test_play_hot_seat_full_game(monkeypatch, capsys):
    code, out, _ = play_script(monkeypatch, capsys, "move v4 4\nmove v2 2\nquit\n")
    assert code == 0
    assert "demo: hot seat, P1 to move" in out
    assert "v1 -- v4: 5" in out  # fresh board rendering
    assert "v1 -- v4: 1 *" in out  # last move marked, weight updated
    assert "P1: -> v4 (removed 4, 1 left)" in out
    assert "P2: -> v2 (removed 2, 0 left)" in out
    assert "P1 resigns; P2 wins" in out
    # the drained v2-v4 edge disappears from later renders
    assert out.count("v2 -- v4") == 2


def test_play_rejects_illegal_and_garbage_input(monkeypatch, capsys):
    code, out, _ = play_script(monkeypatch, capsys,
                               "move v1 9\nmove v2 3\nhello\nmove v2 1\nresign\n")
    assert code == 0
    assert "illegal: no edge between 'v1' and 'v1'" in out
    assert "illegal: amount 3 exceeds weight 2" in out
    assert "expected: move <vertex> <amount>" in out
    assert "P1: -> v2 (removed 1, 1 left)" in out


def test_play_eof_resigns(monkeypatch, capsys):
    code, out, _ = play_script(monkeypatch, capsys, "")
    assert code == 0
    assert "P1 resigns; P2 wins" in out


def test_play_engine_game_to_the_end(monkeypatch, capsys):
    # optimal engine second on the demo board always wins
    code, out, _ = play_script(monkeypatch, capsys,
                               "move v2 2\nmove v3 3\nmove v4 4\nmove v2 2\n",
                               "--engine", "optimal")
    assert code == 0
    assert "you are P1, engine (optimal) is P2" in out
    assert "is stuck" in out


def test_play_engine_first(monkeypatch, capsys):
    code, out, _ = play_script(monkeypatch, capsys, "quit\n",
                               "--engine", "optimal", "--engine-first")
    assert code == 0
    assert "engine (P1): ->" in out


# -- serve -----------------------------------------------------------------------

def test_serve_reports_busy_port(capsys):
    blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    blocker.bind(("127.0.0.1", 0))
    port = blocker.getsockname()[1]
    try:
        code, _, err = run(capsys, "serve", "--port", str(port))
        assert code == 3
        assert "cannot bind" in err
    finally:
        blocker.close()


# -- parser ----------------------------------------------------------------------

def test_missing_subcommand_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
