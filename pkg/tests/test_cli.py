import json

import pytest

from symshift.cli import run
from symshift.core import load_sft
from symshift.graphs import save_presentation
from symshift.localmaps import load_rule
from symshift.shifts import build_higher_block, presentation

GOLDEN_SFT = "# golden mean\nalphabet: 0 1\nforbidden: 1 1\n"
ANTI_SFT = "alphabet: 0 1\nforbidden: 0 1\n"
FULL2_SFT = "alphabet: 0 1\n"
EMPTY_SFT = "alphabet: 0 1\nforbidden: 0\nforbidden: 1\n"

XOR_RULE = """radius: 1
map: 0 0 0 -> 0
map: 0 0 1 -> 1
map: 0 1 0 -> 0
map: 0 1 1 -> 1
map: 1 0 0 -> 1
map: 1 0 1 -> 0
map: 1 1 0 -> 1
map: 1 1 1 -> 0
"""

CONST0_RULE = "radius: 1\n" + "".join(
    f"map: {a} {b} {c} -> 0\n"
    for a in "01"
    for b in "01"
    for c in "01"
)


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


class TestShiftCommands:
    def test_check(self, write, capsys):
        assert run(["shift", "check", write("g.sft", GOLDEN_SFT)]) == 0
        out = capsys.readouterr().out
        assert "alphabet: 0 1" in out
        assert "memory: 1" in out
        assert "empty: no" in out

    def test_check_json(self, write, capsys):
        assert run(["shift", "check", write("g.sft", GOLDEN_SFT), "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc == {
            "alphabet": ["0", "1"],
            "memory": 1,
            "forbidden": ["11"],
            "empty": False,
        }

    def test_empty(self, write, capsys):
        assert run(["shift", "empty", write("g.sft", GOLDEN_SFT)]) == 1
        assert capsys.readouterr().out.strip() == "no"
        assert run(["shift", "empty", write("e.sft", EMPTY_SFT)]) == 0
        assert capsys.readouterr().out.strip() == "yes"

    def test_member(self, write, capsys):
        path = write("g.sft", GOLDEN_SFT)
        assert run(["shift", "member", path, "1,1"]) == 1
        assert capsys.readouterr().out.strip() == "no"
        assert run(["shift", "member", path, "0101"]) == 0
        assert capsys.readouterr().out.strip() == "yes"

    def test_irreducible_and_mixing(self, write):
        golden = write("g.sft", GOLDEN_SFT)
        anti = write("a.sft", ANTI_SFT)
        assert run(["shift", "irreducible", golden]) == 0
        assert run(["shift", "irreducible", anti]) == 1
        assert run(["shift", "mixing", golden]) == 0

    def test_dense_periodic(self, write, capsys):
        assert run(["shift", "dense-periodic", write("g.sft", GOLDEN_SFT)]) == 0
        assert capsys.readouterr().out.strip() == "yes"
        assert run(["shift", "dense-periodic", write("a.sft", ANTI_SFT)]) == 1
        assert capsys.readouterr().out.strip() == "no"

    def test_periodic_table(self, write, capsys):
        assert run(["shift", "periodic", write("g.sft", GOLDEN_SFT), "--max-n", "4"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "n p_n q_n"
        assert lines[1:] == ["1 1 1", "2 3 2", "3 4 3", "4 7 4"]

    def test_periodic_list_and_json_round_trip(self, write, capsys):
        path = write("g.sft", GOLDEN_SFT)
        assert run(["shift", "periodic", path, "--max-n", "2", "--list"]) == 0
        text = capsys.readouterr().out
        assert "configs: 0" in text and "0 01 10" in text
        assert run(["shift", "periodic", path, "--max-n", "2", "--list", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["census"][1] == {"n": 2, "p": 3, "q": 2, "configs": ["0", "01", "10"]}

    def test_periodic_list_cap(self, write, capsys):
        # p_14 = 16384 for the full binary shift, beyond the listing cap
        assert run(["shift", "periodic", write("f.sft", FULL2_SFT), "--max-n", "14", "--list"]) == 2
        assert "cap" in capsys.readouterr().err

    def test_multicharacter_symbols(self, write, capsys):
        path = write("tones.sft", "alphabet: lo hi\nforbidden: hi hi\n")
        assert run(["shift", "member", path, "lo,hi,lo"]) == 0
        capsys.readouterr()
        assert run(["shift", "member", path, "hi,hi"]) == 1
        capsys.readouterr()
        assert run(["shift", "periodic", path, "--max-n", "2", "--list"]) == 0
        assert "lo,hi" in capsys.readouterr().out


class TestSoficCommands:
    def test_equal_and_counterexample(self, write, tmp_path, capsys):
        golden = load_sft(write("g.sft", GOLDEN_SFT))
        full = load_sft(write("f.sft", FULL2_SFT))
        a1 = tmp_path / "a1.pres"
        a2 = tmp_path / "a2.pres"
        b = tmp_path / "b.pres"
        save_presentation(build_higher_block(golden, 1).graph, a1)
        save_presentation(build_higher_block(golden, 2).graph, a2)
        save_presentation(presentation(full), b)
        assert run(["sofic", "equal", str(a1), str(a2)]) == 0
        assert capsys.readouterr().out.strip() == "yes"
        assert run(["sofic", "equal", str(a1), str(b)]) == 1
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "no"
        assert "counterexample: 11" in out

    def test_counterexample_reverifies_via_member(self, write, tmp_path, capsys):
        golden_path = write("g.sft", GOLDEN_SFT)
        golden = load_sft(golden_path)
        full = load_sft(write("f.sft", FULL2_SFT))
        a = tmp_path / "a.pres"
        b = tmp_path / "b.pres"
        save_presentation(presentation(golden), a)
        save_presentation(presentation(full), b)
        run(["sofic", "equal", str(a), str(b), "--json"])
        doc = json.loads(capsys.readouterr().out)
        witness = doc["witness"]
        assert run(["shift", "member", golden_path, witness]) == 1


class TestMapCommands:
    def test_apply(self, write, capsys):
        spec = write("f.sft", FULL2_SFT)
        rule = write("xor.rule", XOR_RULE)
        assert run(["map", "apply", spec, rule, "--word", "1"]) == 0
        out = capsys.readouterr().out
        assert "image: 0" in out and "period: 1" in out
        assert run(["map", "apply", spec, rule, "--word", "011"]) == 0
        assert "image: 011" in capsys.readouterr().out

    def test_apply_json(self, write, capsys):
        spec = write("f.sft", FULL2_SFT)
        rule = write("xor.rule", XOR_RULE)
        # over 0010: neighbors sum to 0 1 0 1 cyclically, which normalizes to 01
        assert run(["map", "apply", spec, rule, "--word", "0010", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc == {"image": "01", "period": 2}

    def test_image_emits_loadable_presentation(self, write, tmp_path, capsys):
        spec = write("f.sft", FULL2_SFT)
        rule = write("xor.rule", XOR_RULE)
        out_path = tmp_path / "image.pres"
        assert run(["map", "image", spec, rule, "--out", str(out_path)]) == 0
        assert "wrote" in capsys.readouterr().out
        full = load_sft(spec)
        full_pres = tmp_path / "full.pres"
        save_presentation(presentation(full), full_pres)
        assert run(["sofic", "equal", str(out_path), str(full_pres)]) == 0

    def test_surjective_injective_preinjective(self, write, capsys):
        spec = write("f.sft", FULL2_SFT)
        rule = write("xor.rule", XOR_RULE)
        assert run(["map", "surjective", spec, rule]) == 0
        assert capsys.readouterr().out.strip() == "yes"
        assert run(["map", "injective", spec, rule]) == 1
        assert capsys.readouterr().out.strip() == "no"
        assert run(["map", "preinjective", spec, rule]) == 0
        assert capsys.readouterr().out.strip() == "yes"

    def test_goe_witness_and_reverification(self, write, capsys):
        spec_path = write("f.sft", FULL2_SFT)
        rule_path = write("c0.rule", CONST0_RULE)
        assert run(["map", "goe", spec_path, rule_path, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["answer"] == "yes" and doc["witness"] == "1"
        # the witness is a target word but not an image word
        assert run(["shift", "member", spec_path, doc["witness"]]) == 0
        capsys.readouterr()
        spec = load_sft(spec_path)
        rule = load_rule(rule_path, spec)
        from symshift.graphs import determinize_factor_acceptor, essential_form
        from symshift.localmaps import build_image_presentation

        image_dfa = determinize_factor_acceptor(
            essential_form(build_image_presentation(rule).graph)
        )
        assert not image_dfa.accepts(spec.alphabet.parse_word(doc["witness"]))

    def test_goe_none_when_surjective(self, write, capsys):
        spec = write("f.sft", FULL2_SFT)
        rule = write("xor.rule", XOR_RULE)
        assert run(["map", "goe", spec, rule]) == 1
        assert capsys.readouterr().out.strip() == "no"

    def test_surjective_onto_smaller_target_is_error(self, write, capsys):
        spec = write("f.sft", FULL2_SFT)
        golden = write("g.sft", GOLDEN_SFT)
        rule = write("xor.rule", XOR_RULE)
        assert run(["map", "surjective", spec, rule, "--onto", golden]) == 2
        assert "E_NOT_A_SELFMAP" in capsys.readouterr().err

    def test_audit(self, write, capsys):
        spec = write("f.sft", FULL2_SFT)
        assert run(["map", "audit", spec, "--radius", "0"]) == 0
        out = capsys.readouterr().out
        assert "rules: 4" in out and "violations: 0" in out

    def test_audit_limit_refusal(self, write, capsys):
        spec = write("f.sft", FULL2_SFT)
        assert run(["map", "audit", spec, "--radius", "1", "--limit", "100"]) == 2
        assert "limit" in capsys.readouterr().err


class TestErrorHandling:
    def test_missing_file(self, capsys):
        assert run(["shift", "check", "/nonexistent/x.sft"]) == 2
        assert "error" in capsys.readouterr().err

    def test_malformed_spec_names_file_and_line(self, write, capsys):
        path = write("bad.sft", "alphabet: 0 1\nforbidden: 2\n")
        assert run(["shift", "check", path]) == 2
        err = capsys.readouterr().err
        assert "line 2" in err and "bad.sft" in err

    def test_malformed_rule_names_file_and_line(self, write, capsys):
        spec = write("f.sft", FULL2_SFT)
        rule = write("bad.rule", "radius: 1\nmap: 0 0 -> 0\n")
        assert run(["map", "injective", spec, rule]) == 2
        err = capsys.readouterr().err
        assert "line 2" in err and "bad.rule" in err

    def test_unknown_subcommand(self, capsys):
        assert run(["shift", "frobnicate"]) == 2

    def test_bad_word_symbol(self, write, capsys):
        path = write("g.sft", GOLDEN_SFT)
        assert run(["shift", "member", path, "02"]) == 2

    def test_verdict_json_fields(self, write, capsys):
        path = write("g.sft", GOLDEN_SFT)
        run(["shift", "dense-periodic", path, "--json"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["question"] == "dense-periodic"
        assert doc["answer"] == "yes"
        assert doc["witness"] is None
        assert doc["elapsed_ms"] >= 0

    def test_empty_shift_precondition_is_input_error(self, write, capsys):
        path = write("e.sft", EMPTY_SFT)
        assert run(["shift", "irreducible", path]) == 2
        assert "E_EMPTY_SHIFT" in capsys.readouterr().err
