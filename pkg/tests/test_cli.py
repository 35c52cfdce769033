import json

from covercount.cli import Config, run


def test_config_defaults_and_validation():
    cfg = Config()
    assert (cfg.max_genus, cfg.max_degree, cfg.max_delta) == (4, 8, 6)
    assert cfg.enumeration_mode == "unlabeled_aut"
    assert cfg.workers == 1 and cfg.output == "table"
    assert cfg.aut == "unlabeled"
    import pytest

    with pytest.raises(ValueError):
        Config(workers=0)
    with pytest.raises(ValueError):
        Config(output="xml")


def test_sigma_table(capsys):
    assert run(["sigma", "--m", "1", "--delta", "2", "--a", "4"]) == 0
    assert capsys.readouterr().out.strip() == "3·T_1 + 4·T_2"


def test_count_json_deterministic(capsys):
    argv = ["--output", "json", "count", "M", "--d1", "1", "--d2", "2",
            "--n", "2"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
    records = json.loads(first)
    # M(1, 2, 2) = T_1 + 2 T_2: total mass 3 split over torsion points
    assert sum(r["coeff"][0] / r["coeff"][1] for r in records) == 3


def test_verify_theorem_exit_codes(capsys):
    assert run(["verify", "theorem", "--which", "abelian_points",
                "--g", "2", "--B", "1,1", "--delta-max", "3"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is True
    assert run(["verify", "theorem", "--which", "abelian_points",
                "--g", "2", "--B", "1,1", "--delta-max", "3",
                "--alpha", "6"]) == 1
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] is False


def test_diagrams_and_invariant(capsys):
    assert run(["--output", "json", "diagrams", "floor", "--g", "1",
                "--a", "1", "--w", "1,-1"]) == 0
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 2
    assert run(["invariant", "abelian", "--g", "2", "--B", "1,1"]) == 0
    assert capsys.readouterr().out.strip() == "2·T_1"


def test_usage_errors():
    assert run(["count", "F", "--n", "2"]) == 2
    assert run(["bogus"]) == 2
    assert run(["diagrams", "floor", "--g", "9", "--a", "1",
                "--w", "1,-1"]) == 2


def test_verify_oracles_small(capsys):
    assert run(["verify", "oracles", "--n-max", "3"]) == 0
    out = capsys.readouterr().out
    assert "passed" in out and "cotype" in out
