import json
import subprocess
import sys

import pytest

from amrpara.tree import token_stream

from helpers import FIG1, LISTING_Z3

CLI = [sys.executable, "-m", "amrpara.cli"]


def run_cli(args, stdin=""):
    return subprocess.run(CLI + args, input=stdin, capture_output=True, text=True)


class TestRefocusCommand:
    def test_forced_focus_reproduces_listing(self):
        result = run_cli(["refocus", "--focus", "z3"], stdin=FIG1)
        assert result.returncode == 0
        body = "\n".join(l for l in result.stdout.splitlines() if not l.startswith("#"))
        assert token_stream(body) == token_stream(LISTING_Z3)

    def test_seeded_runs_identical(self):
        a = run_cli(["refocus", "--foci", "3", "--seed", "7"], stdin=FIG1)
        b = run_cli(["refocus", "--foci", "3", "--seed", "7"], stdin=FIG1)
        assert a.returncode == b.returncode == 0
        assert a.stdout == b.stdout
        assert a.stdout.count("# ::focus") == 3

    def test_malformed_input_nonzero_exit(self):
        result = run_cli(["refocus"], stdin="(a / alpha :mod")
        assert result.returncode == 2
        assert "line 1" in result.stderr

    def test_metadata_preserved(self):
        text = "# ::id 7\n# ::snt some sentence\n" + FIG1
        result = run_cli(["refocus", "--focus", "z4"], stdin=text)
        assert result.stdout.startswith("# ::id 7\n# ::snt some sentence\n# ::focus z4\n")

    def test_file_io(self, tmp_path):
        inp = tmp_path / "in.penman"
        outp = tmp_path / "out.penman"
        inp.write_text(FIG1 + "\n")
        result = run_cli(["refocus", "-i", str(inp), "-o", str(outp), "--focus", "z3"])
        assert result.returncode == 0
        assert "z3 / need" in outp.read_text()


class TestMetricsCommand:
    def test_identical_pairs_zero_diversity(self, tmp_path):
        pairs = tmp_path / "pairs.tsv"
        pairs.write_text("I know this.\tI know this.\n")
        result = run_cli(["metrics", "--pairs", str(pairs)])
        assert result.returncode == 0
        scores = json.loads(result.stdout.splitlines()[0])
        assert scores["lex_bleu"] == 0.0
        assert scores["lex_jaccard"] == 0.0

    def test_parses_without_embeddings(self, tmp_path):
        pairs = tmp_path / "pairs.tsv"
        pairs.write_text("I know.\tThey need it.\n")
        src = tmp_path / "src.trees"
        tgt = tmp_path / "tgt.trees"
        src.write_text("(ROOT (S (NP) (VP)))\n")
        tgt.write_text("(ROOT (S (NP) (VP (NP))))\n")
        result = run_cli(
            ["metrics", "--pairs", str(pairs), "--source-parses", str(src), "--paraphrase-parses", str(tgt)]
        )
        assert result.returncode == 0
        scores = json.loads(result.stdout.splitlines()[0])
        assert scores["tedf"] == 1
        assert scores["semantic"] is None
        assert "Semantic Similarity  -" in result.stderr.replace("   ", "  ") or "-" in result.stderr

    def test_mismatched_counts(self, tmp_path):
        pairs = tmp_path / "pairs.tsv"
        pairs.write_text("a\tb\nc\td\n")
        src = tmp_path / "src.trees"
        src.write_text("(ROOT)\n")
        result = run_cli(["metrics", "--pairs", str(pairs), "--source-parses", str(src)])
        assert result.returncode == 2

    def test_report_columns(self, tmp_path):
        pairs = tmp_path / "pairs.tsv"
        pairs.write_text("a b c\tc d e\n")
        result = run_cli(["metrics", "--pairs", str(pairs)])
        for column in ("Semantic Similarity", "1 - BLEU", "1 - Cap/Cup", "TED-3", "TED-F"):
            assert column in result.stderr


class TestPipelineCommand:
    def test_mock_run_deterministic(self, tmp_path):
        sentences = tmp_path / "sents.txt"
        sentences.write_text("The dog barks loudly.\nShe reads many books.\n")
        runs = []
        for name in ("r1", "r2"):
            result = run_cli(
                ["pipeline", "-i", str(sentences), "-o", str(tmp_path / name), "--mock", "--foci", "2", "--seed", "5"]
            )
            assert result.returncode == 0
            runs.append((tmp_path / name / "dataset.jsonl").read_bytes())
        assert runs[0] == runs[1]

    def test_profile_binds_threshold(self, tmp_path):
        sentences = tmp_path / "sents.txt"
        sentences.write_text("A tiny example sentence.\n")
        for profile, expected in (("dataset", 120.0), ("embeddings", 110.0), ("generation", 85.0)):
            out = tmp_path / profile
            result = run_cli(["pipeline", "-i", str(sentences), "-o", str(out), "--mock", "--profile", profile])
            assert result.returncode == 0
            manifest = json.loads((out / "manifest.json").read_text())
            assert manifest["config"]["threshold"] == expected

    def test_missing_adapters_usage_error(self, tmp_path):
        sentences = tmp_path / "sents.txt"
        sentences.write_text("Hello.\n")
        result = run_cli(["pipeline", "-i", str(sentences)])
        assert result.returncode == 1
        assert "missing adapters" in result.stderr

    def test_process_adapter_flags(self, tmp_path):
        sentences = tmp_path / "sents.txt"
        sentences.write_text("The cat sleeps on the mat.\n")
        mock_cmd = f"{sys.executable} -m amrpara.cli mock-adapter"
        result = run_cli(
            [
                "pipeline", "-i", str(sentences), "-o", str(tmp_path / "out"),
                "--parser-adapter", mock_cmd,
                "--generator-adapter", mock_cmd,
                "--scorer-adapter", mock_cmd,
                "--foci", "2",
            ]
        )
        assert result.returncode == 0
        dataset = (tmp_path / "out" / "dataset.jsonl").read_text()
        assert dataset.strip()

    def test_config_file(self, tmp_path):
        sentences = tmp_path / "sents.txt"
        sentences.write_text("Words go here today.\n")
        config = tmp_path / "run.conf"
        config.write_text("foci = 2\nseed = 9\nthreshold = 95\n")
        result = run_cli(["pipeline", "-i", str(sentences), "-o", str(tmp_path / "out"), "--mock", "--config", str(config)])
        assert result.returncode == 0
        manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
        assert manifest["config"] == {"foci": 2, "seed": 9, "threshold": 95.0, "batch_size": 16}


class TestStatsCommand:
    def test_empty_dataset(self):
        result = run_cli(["stats"], stdin="")
        assert result.returncode == 0
        assert "Instances" in result.stdout
        assert " 0" in result.stdout

    def test_dataset_summary(self, tmp_path):
        record = {
            "source_id": "s1", "source": "a b", "focus": "z1 x", "linearized": "(z1 / x)",
            "paraphrase": "one two three", "perplexity": 30.0,
        }
        data = tmp_path / "d.jsonl"
        data.write_text(json.dumps(record) + "\n")
        result = run_cli(["stats", "-i", str(data)])
        assert result.returncode == 0
        assert "Avg. #Para." in result.stdout

    def test_bad_json(self):
        result = run_cli(["stats"], stdin="{broken")
        assert result.returncode == 2


def test_version_flag():
    result = run_cli(["--version"])
    assert result.returncode == 0
