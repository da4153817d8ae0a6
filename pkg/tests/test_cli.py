import json

import pytest

from bollyrics.cli import main
from bollyrics.ngram import TrigramModel
from bollyrics.rhyme import RhymeIndex, SoundGroup


def run(capsys, *argv):
    capsys.readouterr()  # drop anything printed by fixtures
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestStats:
    def test_text_output(self, capsys, sample_corpus_path):
        code, out, err = run(capsys, "stats", sample_corpus_path)
        assert code == 0 and err == ""
        assert "songs" in out and "5" in out
        assert "3.60" in out  # avg lines per song
        assert "1995-2016" in out

    def test_json_output(self, capsys, sample_corpus_path):
        code, out, _ = run(capsys, "stats", sample_corpus_path, "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["song_count"] == 5
        assert doc["line_count"] == 18
        assert doc["token_count"] == 53
        assert doc["unique_token_count"] == 32
        assert doc["per_year_histogram"] == {"1995": 2, "2015": 1, "2016": 1}

    def test_histogram_csv(self, capsys, sample_corpus_path, tmp_path):
        out_csv = tmp_path / "hist.csv"
        code, _, _ = run(capsys, "stats", sample_corpus_path, "--histogram", out_csv)
        assert code == 0
        assert out_csv.read_text().splitlines() == [
            "year,count",
            "1995,2",
            "2015,1",
            "2016,1",
        ]

    def test_missing_file(self, capsys, tmp_path):
        code, out, err = run(capsys, "stats", tmp_path / "nope.jsonl")
        assert code != 0
        assert err.startswith("error:")


@pytest.fixture
def trained_model(tmp_path_factory, sample_corpus_path):
    out = tmp_path_factory.mktemp("model") / "model.json"
    code = main(["train", str(sample_corpus_path), "-o", str(out)])
    assert code == 0
    return out


class TestTrain:
    def test_writes_model_and_sidecar(self, capsys, sample_corpus_path, tmp_path):
        out = tmp_path / "model.json"
        code, stdout, _ = run(capsys, "train", sample_corpus_path, "-o", out)
        assert code == 0
        assert out.exists()
        sidecar = tmp_path / "model.rhyme.json"
        assert sidecar.exists()
        assert "vocab size" in stdout and "trainable lines" in stdout
        model = TrigramModel.load(out)
        index = RhymeIndex.load(sidecar)
        assert len(model.tokens) > 1
        assert index.total_pairs() > 0

    def test_json_summary(self, capsys, sample_corpus_path, tmp_path):
        code, stdout, _ = run(
            capsys, "train", sample_corpus_path, "-o", tmp_path / "m.json", "--json"
        )
        assert code == 0
        doc = json.loads(stdout)
        assert doc["trainable_lines"] == 18
        assert doc["vocab_size"] == 33  # 32 corpus tokens + start sentinel

    def test_custom_rules_override(self, capsys, sample_corpus_path, tmp_path):
        rules = tmp_path / "rules.json"
        rules.write_text(
            json.dumps(
                {
                    "version": 1,
                    "whole_words": {"main": "E"},
                    "suffixes": [{"pattern": "-n", "group": "U"}],
                }
            )
        )
        out = tmp_path / "m.json"
        code, _, _ = run(capsys, "train", sample_corpus_path, "-o", out, "--rules", rules)
        assert code == 0
        index = RhymeIndex.load(tmp_path / "m.rhyme.json")
        finals = {p.final for p in index.groups[SoundGroup.E]}
        assert "main" in finals  # whole-word override takes effect

    def test_untrainable_corpus(self, capsys, tmp_path):
        corpus = tmp_path / "c.jsonl"
        corpus.write_text('{"title": "Solo", "year": null, "lyrics": ["ek", "do"]}\n')
        code, _, err = run(capsys, "train", corpus, "-o", tmp_path / "m.json")
        assert code != 0 and "error:" in err


class TestGenerate:
    def test_shape_and_determinism(self, capsys, trained_model):
        args = (
            "generate",
            "--model",
            trained_model,
            "--scheme",
            "ABAB",
            "--paragraphs",
            "4",
            "--seed",
            "7",
        )
        code_a, out_a, _ = run(capsys, *args)
        code_b, out_b, _ = run(capsys, *args)
        assert code_a == code_b == 0
        assert out_a == out_b
        paragraphs = out_a.strip("\n").split("\n\n")
        assert len(paragraphs) == 4
        assert all(len(p.split("\n")) == 4 for p in paragraphs)

    def test_different_seeds_differ(self, capsys, trained_model):
        _, out_a, _ = run(
            capsys, "generate", "--model", trained_model, "--scheme", "AABB", "--seed", "1"
        )
        _, out_b, _ = run(
            capsys, "generate", "--model", trained_model, "--scheme", "AABB", "--seed", "2"
        )
        assert out_a != out_b

    def test_json_output_schema(self, capsys, trained_model):
        code, out, _ = run(
            capsys,
            "generate",
            "--model",
            trained_model,
            "--scheme",
            "ab",
            "--paragraphs",
            "2",
            "--seed",
            "3",
            "--json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["scheme"] == "AB"
        assert set(doc["allocation"]) == {"A", "B"}
        assert len(doc["paragraphs"]) == 2
        assert all(len(p) == 2 for p in doc["paragraphs"])

    def test_show_start_prefix(self, capsys, trained_model):
        code, out, _ = run(
            capsys,
            "generate",
            "--model",
            trained_model,
            "--scheme",
            "AA",
            "--seed",
            "4",
            "--show-start",
        )
        assert code == 0
        assert all(line.startswith("<start> ") for line in out.strip().split("\n") if line)

    def test_too_many_letters(self, capsys, trained_model):
        code, _, err = run(
            capsys, "generate", "--model", trained_model, "--scheme", "ABCDEFGHIJKLMN"
        )
        assert code != 0 and "error:" in err

    def test_more_letters_than_nonempty_groups(self, capsys, trained_model):
        code, _, err = run(
            capsys,
            "generate",
            "--model",
            trained_model,
            "--scheme",
            "ABCDEFGHIJ",
            "--seed",
            "5",
        )
        assert code != 0 and "error:" in err


class TestKappa:
    def test_perfect_agreement(self, capsys, tmp_path):
        ann = tmp_path / "ann.csv"
        ann.write_text(
            "#categories: MakesSense,DoesNotMakeSense\n"
            + "MakesSense,MakesSense,MakesSense,MakesSense\n" * 3
            + "DoesNotMakeSense,DoesNotMakeSense,DoesNotMakeSense,DoesNotMakeSense\n" * 3
        )
        code, out, _ = run(capsys, "kappa", ann)
        assert code == 0
        assert "kappa: 1.0000" in out
        assert "makes-sense rate: 0.5000" in out

    def test_regression_constant(self, capsys, tmp_path):
        ann = tmp_path / "ann.csv"
        rows = ["M,M,M,M", "D,D,D,D", "M,M,D,D", "M,M,M,D"]
        ann.write_text("#categories: M,D\n" + "\n".join(rows) + "\n")
        code, out, _ = run(capsys, "kappa", ann)
        assert code == 0
        assert f"kappa: {11 / 27:.4f}" in out

    def test_degenerate_is_undefined(self, capsys, tmp_path):
        ann = tmp_path / "ann.csv"
        ann.write_text("#categories: M,D\nM,M,M,M\nM,M,M,M\n")
        code, _, err = run(capsys, "kappa", ann)
        assert code != 0
        assert "undefined" in err

    def test_json_output(self, capsys, tmp_path):
        ann = tmp_path / "ann.csv"
        ann.write_text("#categories: M,D\nM,M,M,D\nD,D,D,M\n")
        code, out, _ = run(capsys, "kappa", ann, "--json")
        assert code == 0
        doc = json.loads(out)
        assert set(doc) == {"kappa", "makes_sense_rate"}
        assert doc["makes_sense_rate"] == 0.5


class TestExport:
    def test_creates_interchange_files(self, capsys, sample_corpus_path, tmp_path):
        code, out, _ = run(
            capsys, "export", sample_corpus_path, "--out-dir", tmp_path, "--context-len", "2"
        )
        assert code == 0
        vocab = json.loads((tmp_path / "vocab.json").read_text())
        assert vocab["tokens"][0] == "<start>"
        lines = (tmp_path / "sequences.jsonl").read_text().splitlines()
        assert lines
        record = json.loads(lines[0])
        assert set(record) == {"context", "target"}
        assert len(record["context"]) == 2

    def test_worked_example_window_count(self, capsys, tmp_path):
        corpus = tmp_path / "c.jsonl"
        corpus.write_text(
            '{"title": "Agar Tum Saath Ho", "year": null, "lyrics": ["Kaise Tumhe Roka Karun"]}\n'
        )
        code, out, _ = run(
            capsys, "export", corpus, "--out-dir", tmp_path, "--context-len", "2", "--json"
        )
        assert code == 0
        assert json.loads(out)["windows"] == 3

    def test_context_len_zero_rejected(self, capsys, sample_corpus_path, tmp_path):
        code, _, err = run(
            capsys, "export", sample_corpus_path, "--out-dir", tmp_path, "--context-len", "0"
        )
        assert code != 0 and "error:" in err


class TestRender:
    def test_round_trip_from_generate_json(self, capsys, trained_model, tmp_path):
        code, out, _ = run(
            capsys,
            "generate",
            "--model",
            trained_model,
            "--scheme",
            "AABB",
            "--paragraphs",
            "2",
            "--seed",
            "11",
            "--json",
        )
        assert code == 0
        song_file = tmp_path / "song.json"
        song_file.write_text(out)
        code, text, _ = run(capsys, "render", song_file)
        assert code == 0
        assert len(text.strip("\n").split("\n\n")) == 2

    def test_malformed_song(self, capsys, tmp_path):
        bad = tmp_path / "song.json"
        bad.write_text('{"scheme": "AB"}')
        code, _, err = run(capsys, "render", bad)
        assert code != 0 and "error:" in err
