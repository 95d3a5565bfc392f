import json

import pytest

from fgf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestWordCommands:
    def test_reduce(self, capsys):
        code, out = run(capsys, "reduce", "x1 x2 x2- x1")
        assert code == 0 and out == "x1 x1\n"

    def test_multiply(self, capsys):
        code, out = run(capsys, "multiply", "x1 x2", "x2- x3", "--rank", "3")
        assert code == 0 and out == "x1 x3\n"

    def test_invert_word(self, capsys):
        code, out = run(capsys, "invert-word", "x1 x2")
        assert code == 0 and out == "x2- x1-\n"

    def test_root(self, capsys):
        code, out = run(capsys, "root", "x1 x2 x1 x2 x1 x2")
        assert code == 0 and out == "x1 x2 ^ 3\n"

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as err:
            main(["reduce"])
        assert err.value.code == 2


class TestMapCommands:
    def test_apply_and_compose(self, capsys, tmp_path):
        swap = tmp_path / "swap.map"
        swap.write_text("x1 -> x2\nx2 -> x1\n")
        code, out = run(capsys, "apply", "--auto", str(swap), "x1 x2")
        assert code == 0 and out == "x2 x1\n"
        code, out = run(capsys, "compose", str(swap), str(swap))
        assert code == 0 and out == "x1 -> x1\nx2 -> x2\n"

    def test_invert_auto(self, capsys, tmp_path):
        shear = tmp_path / "shear.map"
        shear.write_text("x1 -> x1 x2\nx2 -> x2\n")
        code, out = run(capsys, "invert-auto", "--auto", str(shear))
        assert code == 0 and out == "x1 -> x1 x2-\nx2 -> x2\n"

    def test_order(self, capsys, tmp_path):
        rot = tmp_path / "rot.map"
        rot.write_text("x1 -> x2\nx2 -> x2- x1-\n")
        code, out = run(capsys, "order", "--auto", str(rot))
        assert code == 0 and out == "3\n"

    def test_is_inner(self, capsys, tmp_path):
        inner = tmp_path / "inner.map"
        inner.write_text("x1 -> x1 x2 x1 x2- x1-\nx2 -> x1 x2 x1-\n")
        code, out = run(capsys, "is-inner", "--auto", str(inner))
        assert code == 0 and out == "x1 x2\n"
        outer = tmp_path / "outer.map"
        outer.write_text("x1 -> x1-\nx2 -> x2\n")
        code, out = run(capsys, "is-inner", "--auto", str(outer))
        assert code == 1 and out == "not inner\n"


class TestPrimitivityCommands:
    def test_is_primitive_yes(self, capsys):
        code, out = run(capsys, "is-primitive", "x1 x2")
        assert code == 0 and out == "primitive\n"

    def test_is_primitive_no(self, capsys):
        code, out = run(capsys, "is-primitive", "x1 x1")
        assert code == 1 and out == "not primitive\n"

    def test_minimize(self, capsys):
        code, out = run(capsys, "minimize", "x1 x2 x1-")
        lines = out.splitlines()
        assert code == 0 and lines[0] == "x2"

    def test_two_primitives(self, capsys):
        code, out = run(capsys, "two-primitives", "x1 x1")
        assert code == 0 and out == "x2\nx2- x1 x1\n"


class TestInvolutionCommands:
    def test_realize_classify(self, capsys, tmp_path):
        data = tmp_path / "quasi.cd"
        data.write_text("U:\nZ:\nblocks: [x1 | x2]\n")
        code, out = run(capsys, "realize", str(data))
        assert code == 0 and out == "x1 -> x1-\nx2 -> x1 x2 x1-\n"
        code, out = run(capsys, "classify", str(data))
        assert code == 0
        assert out == "fixed_rank=0 swap_count=0 block_sizes=2\n"

    def test_conjugator(self, capsys, tmp_path):
        first = tmp_path / "a.cd"
        second = tmp_path / "b.cd"
        first.write_text("U: x1\nZ:\nblocks: [x2 |]\n")
        second.write_text("U: x2\nZ:\nblocks: [x1 |]\n")
        code, out = run(capsys, "conjugator", str(first), str(second))
        assert code == 0 and out == "x1 -> x2\nx2 -> x1\n"

    def test_sqrt_bead(self, capsys, tmp_path):
        data = tmp_path / "bead.cd"
        data.write_text("U:\nZ:\nblocks: [x1 |] [x2 |]\n")
        code, out = run(capsys, "sqrt-bead", str(data))
        assert code == 0 and out == "x1 -> x2-\nx2 -> x1\n"

    def test_snake_cert(self, capsys, tmp_path):
        data = tmp_path / "quasi.cd"
        data.write_text("U:\nZ:\nblocks: [x1 | x2]\n")
        code, out = run(capsys, "snake-cert", str(data))
        assert code == 0
        payload = json.loads(out)
        assert payload["block_leader"] == 1
        assert payload["eigenline_dimension"] == 1

    def test_decompose_inverted(self, capsys, tmp_path):
        data = tmp_path / "quasi.cd"
        data.write_text("U:\nZ:\nblocks: [x1 | x2]\n")
        code, out = run(capsys, "decompose-inverted", str(data), "x1-")
        assert code == 0 and out == "block w: x1 leader: x1\n"
        code, out = run(capsys, "decompose-inverted", str(data), "e")
        assert code == 0 and out == "coboundary w: e\n"


class TestGraphCommands:
    def test_graph_summary(self, capsys):
        code, out = run(capsys, "graph", "--gens", "x1", "x2")
        assert code == 0 and out == "vertices=1 edges=2 rank=2\n"

    def test_dump_graph(self, capsys):
        code, out = run(capsys, "dump-graph", "--gens", "x1")
        assert code == 0 and out == "*0 --x1--> *0\n"

    def test_member(self, capsys):
        code, out = run(capsys, "member", "--gens", "x1 x1", "--", "x1")
        assert code == 1 and out == "no\n"
        code, out = run(capsys, "member", "--gens", "x1 x1", "--", "x1 x1 x1 x1")
        assert code == 0 and out == "yes\n"

    def test_rank(self, capsys):
        code, out = run(
            capsys, "rank", "--gens", "x1 x2 x1-", "x1 x2 x2 x1-"
        )
        assert code == 0 and out == "1\n"

    def test_intersect(self, capsys):
        code, out = run(
            capsys,
            "intersect",
            "--rank",
            "3",
            "--gens-a",
            "x1",
            "x2",
            "--gens-b",
            "x1",
            "x3",
        )
        assert code == 0
        assert out.splitlines()[0] == "rank=1"

    def test_factor_rel(self, capsys, tmp_path):
        whole = tmp_path / "whole.cd"
        whole.write_text("U: x1 x2\nZ:\nblocks: [x3 |]\n")
        left = tmp_path / "left.cd"
        left.write_text("U: x1\nZ:\nblocks: [x2 | x3]\n")
        right = tmp_path / "right.cd"
        right.write_text("U: x2\nZ:\nblocks: [x1 | x3]\n")
        code, out = run(
            capsys, "factor-rel", "--rank", "3", str(whole), str(left), str(right)
        )
        assert code == 0 and out == "yes\n"
        code, out = run(
            capsys, "factor-rel", "--rank", "3", str(whole), str(left), str(left)
        )
        assert code == 1 and out == "no\n"


class TestInterpretationCommands:
    def test_extract_basis(self, capsys):
        code, out = run(capsys, "extract-basis", "--rank", "4")
        assert code == 0 and out == "x3\nx4\n"

    def test_encode_decode_round_trip(self, capsys, tmp_path):
        code, out = run(capsys, "encode-fn", "--m", "3", "--table", "2,3,1")
        assert code == 0
        encoded = tmp_path / "fn.map"
        encoded.write_text(out)
        code, out = run(capsys, "decode-fn", "--m", "3", "--auto", str(encoded))
        assert code == 0 and out == "2,3,1\n"


class TestVerify:
    def test_single_suite_report(self, capsys, tmp_path):
        report_path = tmp_path / "report.json"
        code, out = run(
            capsys,
            "verify",
            "anti-commutativity",
            "--rank",
            "2",
            "--samples",
            "50",
            "--seed",
            "7",
            "--report",
            str(report_path),
        )
        assert code == 0
        assert out.startswith("[PASS] anti-commutativity")
        payload = json.loads(report_path.read_text())
        assert payload["schema"] == "fgf-report/1"
        assert payload["pass"] is True
        assert payload["config"]["seed"] == 7

    def test_byte_identical_reruns(self, capsys, tmp_path):
        args = [
            "verify",
            "primitive-power-conjugations",
            "--rank",
            "3",
            "--samples",
            "30",
            "--seed",
            "5",
        ]
        first_path = tmp_path / "first.json"
        second_path = tmp_path / "second.json"
        code1, out1 = run(capsys, *args, "--report", str(first_path))
        code2, out2 = run(capsys, *args, "--report", str(second_path))
        assert code1 == code2 == 0
        assert out1 == out2
        assert first_path.read_bytes() == second_path.read_bytes()

    def test_verify_all(self, capsys, tmp_path):
        report_path = tmp_path / "all.json"
        code, out = run(
            capsys,
            "verify",
            "all",
            "--samples",
            "20",
            "--seed",
            "3",
            "--report",
            str(report_path),
        )
        assert code == 0
        payload = json.loads(report_path.read_text())
        assert payload["pass"] is True
        assert len(payload["suites"]) == 5

    def test_env_seed(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("FGF_SEED", "99")
        report_path = tmp_path / "env.json"
        code, _ = run(
            capsys,
            "verify",
            "anti-commutativity",
            "--rank",
            "2",
            "--samples",
            "20",
            "--report",
            str(report_path),
        )
        assert code == 0
        assert json.loads(report_path.read_text())["config"]["seed"] == 99

    def test_config_file_precedence(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"seed": 55, "samples": 25}))
        report_path = tmp_path / "cfg.json"
        code, _ = run(
            capsys,
            "--config",
            str(config),
            "verify",
            "anti-commutativity",
            "--rank",
            "2",
            "--report",
            str(report_path),
        )
        assert code == 0
        payload = json.loads(report_path.read_text())
        assert payload["config"]["seed"] == 55
        assert payload["config"]["sample_count"] == 25
