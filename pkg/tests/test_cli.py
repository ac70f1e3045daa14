import json
import subprocess
import sys

import numpy as np
import pytest

from speechaug.audio_io import AudioBuffer, write_wav
from speechaug.cli import main
from speechaug.corpus import Manifest
from speechaug.features import read_fbm

from conftest import SR, make_corpus, sine


@pytest.fixture
def challenge(tmp_path):
    from speechaug.corpus import builtin_recipe

    p = tmp_path / "challenge.json"
    p.write_text(json.dumps(builtin_recipe("challenge").to_dict()))
    return p


def test_hours(challenge, capsys):
    assert main(["hours", "--recipe", str(challenge), "--base", "A=341.8", "--base", "C=55.1"]) == 0
    out = capsys.readouterr().out
    assert "396.9" in out and "690.5" in out and "Total" in out


def test_hours_json_builtin(capsys):
    assert main(["hours", "--recipe", "challenge-openslr", "--base", "A=341.8", "--base", "C=55.1",
                 "--base", "OpenSLR=1374.3", "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert abs(d["rules"][-1]["hours"] - 2776.4) <= 0.1


def test_hours_missing_base_is_data_error(challenge):
    assert main(["hours", "--recipe", str(challenge), "--base", "A=1"]) == 1


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_unknown_flag_rejected(challenge):
    with pytest.raises(SystemExit) as exc:
        main(["hours", "--recipe", str(challenge), "--base", "A=1", "--colour"])
    assert exc.value.code == 2


def test_bad_assignment_is_usage_error(challenge):
    with pytest.raises(SystemExit) as exc:
        main(["hours", "--recipe", str(challenge), "--base", "A341.8"])
    assert exc.value.code == 2


def test_augment_requires_seed(tmp_path, challenge, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["augment", "--recipe", str(challenge), "--manifest", "A=x.jsonl", "--out", str(tmp_path)])
    assert exc.value.code == 2
    assert "--seed" in capsys.readouterr().err


@pytest.mark.parametrize("cmd", [
    ["partition", "--manifest", "m.jsonl", "--speakers", "2", "--dev-out", "d", "--train-out", "t"],
    ["specaug", "--in", "a.fbm", "--out", "b.fbm"],
])
def test_randomized_commands_require_seed(cmd):
    with pytest.raises(SystemExit) as exc:
        main(cmd)
    assert exc.value.code == 2


def test_augment_end_to_end(tmp_path):
    m = make_corpus(tmp_path / "src", n_utts=3)
    m.save(tmp_path / "a.jsonl")
    recipe = tmp_path / "r.json"
    recipe.write_text(json.dumps({"rules": [
        {"sources": ["A"], "op": "speed", "params": [0.9, 1.1], "volume": True},
        {"sources": ["A"], "op": "reverb", "params": [], "volume": False},
    ]}))
    out = tmp_path / "out"
    rc = main(["augment", "--recipe", str(recipe), "--manifest", f"A={tmp_path / 'a.jsonl'}",
               "--out", str(out), "--seed", "7", "--workers", "2"])
    assert rc == 0
    res = Manifest.load(out / "manifest.jsonl")
    assert len(res) == 9
    report = json.loads((out / "report.json").read_text())
    assert report["jobs"] == 9 and report["failed"] == 0
    assert report["output_hours"] == pytest.approx(res.total_hours)


def test_augment_failure_exit_code(tmp_path):
    m = make_corpus(tmp_path / "src", n_utts=2)
    (tmp_path / "src" / "A000.wav").unlink()
    m.save(tmp_path / "a.jsonl")
    rc = main(["augment", "--recipe", "challenge", "--manifest", f"A={tmp_path / 'a.jsonl'}",
               "--manifest", f"C={tmp_path / 'a.jsonl'}", "--out", str(tmp_path / "o"), "--seed", "1"])
    # A and C share utterance ids, so the plan itself is rejected
    assert rc == 1
    recipe = tmp_path / "r.json"
    recipe.write_text(json.dumps({"rules": [{"sources": ["A"], "op": "copy"}]}))
    rc = main(["augment", "--recipe", str(recipe), "--manifest", f"A={tmp_path / 'a.jsonl'}",
               "--out", str(tmp_path / "o2"), "--seed", "1"])
    assert rc == 1
    report = json.loads((tmp_path / "o2" / "report.json").read_text())
    assert report["failed"] == 1 and report["succeeded"] == 1


def test_fbank_and_specaug(tmp_path):
    write_wav(sine(1000, 1.0), tmp_path / "t.wav")
    assert main(["fbank", "--wav", str(tmp_path / "t.wav"), "--out", str(tmp_path / "t.fbm"),
                 "--csv", str(tmp_path / "t.csv")]) == 0
    m = read_fbm(tmp_path / "t.fbm")
    assert (m.rows, m.cols) == (98, 80)
    assert len((tmp_path / "t.csv").read_text().splitlines()) == 98
    for name in ("a", "b"):
        assert main(["specaug", "--in", str(tmp_path / "t.fbm"), "--out", str(tmp_path / f"{name}.fbm"),
                     "--seed", "5"]) == 0
    assert (tmp_path / "a.fbm").read_bytes() == (tmp_path / "b.fbm").read_bytes()


def test_partition(tmp_path):
    from test_corpus import synthetic_manifest

    synthetic_manifest(30).save(tmp_path / "m.jsonl")
    args = ["partition", "--manifest", str(tmp_path / "m.jsonl"), "--speakers", "4", "--seed", "11",
            "--dev-out", str(tmp_path / "dev.jsonl"), "--train-out", str(tmp_path / "train.jsonl")]
    assert main(args) == 0
    dev, train = Manifest.load(tmp_path / "dev.jsonl"), Manifest.load(tmp_path / "train.jsonl")
    assert len(dev.speakers) == 4 and len(train.speakers) == 26
    args[4] = "31"
    assert main(args) == 1


def test_partition_preset(tmp_path):
    from test_corpus import synthetic_manifest

    synthetic_manifest(30).save(tmp_path / "m.jsonl")
    assert main(["partition", "--manifest", str(tmp_path / "m.jsonl"), "--preset", "dev-018", "--seed", "1",
                 "--dev-out", str(tmp_path / "d.jsonl"), "--train-out", str(tmp_path / "t.jsonl")]) == 0
    assert len(Manifest.load(tmp_path / "d.jsonl").speakers) == 5


def test_normalize(tmp_path):
    (tmp_path / "in.txt").write_text("u1 a>b@c\nu2 x\n", encoding="utf-8")
    (tmp_path / "map.json").write_text(json.dumps({">": "大于", "@": "艾特"}), encoding="utf-8")
    assert main(["normalize", "--input", str(tmp_path / "in.txt"), "--output", str(tmp_path / "out.txt"),
                 "--mapping", str(tmp_path / "map.json"), "--with-ids"]) == 0
    assert (tmp_path / "out.txt").read_text(encoding="utf-8") == "u1 a大于b艾特c\nu2 x\n"


def test_cer(tmp_path, capsys):
    (tmp_path / "ref").write_text("u1 ab\nu2 cd\n", encoding="utf-8")
    (tmp_path / "hyp").write_text("u1 ab\nu2 ce\n", encoding="utf-8")
    assert main(["cer", "--ref", str(tmp_path / "ref"), "--hyp", str(tmp_path / "hyp")]) == 0
    assert "CER 25.00 %" in capsys.readouterr().out
    (tmp_path / "hyp").write_text("u1 ab\n", encoding="utf-8")
    assert main(["cer", "--ref", str(tmp_path / "ref"), "--hyp", str(tmp_path / "hyp")]) == 1
    assert "missing hypothesis: u2" in capsys.readouterr().err
    assert main(["cer", "--ref", str(tmp_path / "ref"), "--hyp", str(tmp_path / "hyp"),
                 "--allow-unmatched"]) == 0
    assert "CER 50.00 %" in capsys.readouterr().out


def test_kaldi_import_export(tmp_path):
    d = tmp_path / "kd"
    d.mkdir()
    (d / "wav.scp").write_text("u1 /x/u1.wav\nu2 /x/u2.wav\n")
    (d / "text").write_text("u1 你好\nu2 再见\n", encoding="utf-8")
    (d / "utt2spk").write_text("u1 s1\nu2 s2\n")
    assert main(["import-kaldi", "--dir", str(d), "--out", str(tmp_path / "m.jsonl")]) == 0
    assert main(["export-kaldi", "--manifest", str(tmp_path / "m.jsonl"), "--dir", str(tmp_path / "e")]) == 0
    assert (tmp_path / "e" / "text").read_text(encoding="utf-8") == "u1 你好\nu2 再见\n"
    assert (tmp_path / "e" / "spk2utt").read_text() == "s1 u1\ns2 u2\n"
    assert main(["import-kaldi", "--dir", str(tmp_path / "nope"), "--out", str(tmp_path / "x")]) == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "speechaug", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "speechaug" in r.stdout
    r = subprocess.run([sys.executable, "-m", "speechaug"], capture_output=True, text=True)
    assert r.returncode == 2 and r.stdout == ""
