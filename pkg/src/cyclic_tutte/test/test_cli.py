import json

import pytest
from click.testing import CliRunner

from cyclic_tutte import bitset, corpus
from cyclic_tutte.cli import cli
from cyclic_tutte.settings import DEFAULTS, ENV_PREFIX

UNIFORM_23 = {"type": "uniform", "n": 3, "r": 2}

M1_FLATS = {
    "type": "cyclic_flats",
    "n": 6,
    "flats": [
        {"set": [], "rank": 0},
        {"set": [0, 1, 2], "rank": 2},
        {"set": [0, 3, 4], "rank": 2},
        {"set": [0, 1, 2, 3, 4, 5], "rank": 3},
    ],
}

M2_FLATS = {
    "type": "cyclic_flats",
    "n": 6,
    "flats": [
        {"set": [], "rank": 0},
        {"set": [0, 1, 2], "rank": 2},
        {"set": [3, 4, 5], "rank": 2},
        {"set": [0, 1, 2, 3, 4, 5], "rank": 3},
    ],
}

CROWDED = {
    "nodes": [{"size": 0, "rank": 0}] + [{"size": 3, "rank": 2}] * 4 + [{"size": 5, "rank": 3}],
    "leq": [[0, i] for i in range(1, 5)] + [[i, 5] for i in range(1, 5)],
}


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    # pinned so a loaded .env cannot leak between tests
    for name, value in DEFAULTS.items():
        monkeypatch.setenv(ENV_PREFIX + name, str(value))
    monkeypatch.setenv(ENV_PREFIX + "LOG_LEVEL", "WARNING")
    config_dir = tmp_path / ".cyclic_tutte"
    monkeypatch.setattr("cyclic_tutte.cli.CONFIG_DIR", config_dir)
    monkeypatch.setattr("cyclic_tutte.cli.ENV_FILE", config_dir / ".env")
    return config_dir


def write_json(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def golay_file(tmp_path):
    from importlib import resources
    text = resources.files("cyclic_tutte").joinpath("data/golay.json").read_text(encoding="utf-8")
    path = tmp_path / "golay.json"
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestConfigSet:

    def test_set_creates_env_file(self, isolated_config):
        runner = CliRunner()
        result = runner.invoke(cli, ["config", "set", "ORACLE_LIMIT", "24"])
        assert result.exit_code == 0
        assert "Saved" in result.output
        env_file = isolated_config / ".env"
        assert "CYCLIC_TUTTE_ORACLE_LIMIT=24" in env_file.read_text()

    def test_set_updates_existing_key(self, isolated_config):
        isolated_config.mkdir()
        env_file = isolated_config / ".env"
        env_file.write_text("CYCLIC_TUTTE_JOBS=1\n")

        runner = CliRunner()
        result = runner.invoke(cli, ["config", "set", "CYCLIC_TUTTE_JOBS", "4"])
        assert result.exit_code == 0
        assert "CYCLIC_TUTTE_JOBS=4" in env_file.read_text()
        assert "CYCLIC_TUTTE_JOBS=1" not in env_file.read_text()

    def test_set_preserves_other_keys(self, isolated_config):
        isolated_config.mkdir()
        env_file = isolated_config / ".env"
        env_file.write_text("CYCLIC_TUTTE_JOBS=2\nCYCLIC_TUTTE_FLAT_LIMIT=18\n")

        runner = CliRunner()
        runner.invoke(cli, ["config", "set", "oracle_limit", "20"])
        content = env_file.read_text()
        assert "CYCLIC_TUTTE_JOBS=2" in content
        assert "CYCLIC_TUTTE_FLAT_LIMIT=18" in content
        assert "CYCLIC_TUTTE_ORACLE_LIMIT=20" in content

    def test_unknown_key_warns(self):
        runner = CliRunner()
        result = runner.invoke(cli, ["config", "set", "COLOUR", "blue"])
        assert result.exit_code == 0
        assert "not a recognised setting" in result.output


class TestConfigShow:

    def test_show_no_config(self):
        runner = CliRunner()
        result = runner.invoke(cli, ["config", "show"])
        assert result.exit_code == 0
        assert "No config" in result.output

    def test_show_lists_values(self, isolated_config):
        isolated_config.mkdir()
        (isolated_config / ".env").write_text("# comment\n\nCYCLIC_TUTTE_JOBS=3\n")

        runner = CliRunner()
        result = runner.invoke(cli, ["config", "show"])
        assert result.exit_code == 0
        assert "CYCLIC_TUTTE_JOBS" in result.output
        assert "comment" not in result.output


class TestRgp:

    def test_uniform(self, tmp_path):
        path = write_json(tmp_path, "u23.json", UNIFORM_23)
        result = CliRunner().invoke(cli, ["rgp", path])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "x^2 + 3x + 3 + y"
        assert "S(1,1) = 8" in lines
        assert "T(1,1) = 3" in lines

    def test_as_tutte(self, tmp_path):
        path = write_json(tmp_path, "u23.json", UNIFORM_23)
        result = CliRunner().invoke(cli, ["rgp", "--as-tutte", path])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "x^2 + x + y"

    def test_json(self, tmp_path):
        path = write_json(tmp_path, "u23.json", UNIFORM_23)
        result = CliRunner().invoke(cli, ["rgp", "--json", path])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["terms"][0] == {"dx": 2, "dy": 0, "coeff": 1}
        assert data["s11"] == 8

    def test_bases_with_oracle(self, tmp_path):
        m = corpus.m1()
        bases = [bitset.elements(b) for b in sorted(m.bases)]
        path = write_json(tmp_path, "m1.json", {"type": "bases", "n": 6, "bases": bases})
        result = CliRunner().invoke(cli, ["rgp", "--check-oracle", path])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "x^3 + 6x^2 + 15x + 18 + 2xy + 15y + 6y^2 + y^3"

    def test_golay(self, tmp_path):
        result = CliRunner().invoke(cli, ["rgp", golay_file(tmp_path)])
        assert result.exit_code == 0
        assert "S(1,1) = 16777216" in result.stdout

    def test_remove_block(self, tmp_path):
        result = CliRunner().invoke(cli, ["rgp", "--remove-block", "3", golay_file(tmp_path)])
        assert result.exit_code == 0
        assert "S(1,1) = 16777216" in result.stdout

    def test_remove_block_needs_condensed_input(self, tmp_path):
        path = write_json(tmp_path, "u23.json", UNIFORM_23)
        result = CliRunner().invoke(cli, ["rgp", "--remove-block", "1", path])
        assert result.exit_code == 2

    def test_metadata_file(self, tmp_path):
        path = write_json(tmp_path, "m1.json", M1_FLATS)
        meta = tmp_path / "meta.json"
        result = CliRunner().invoke(cli, ["rgp", "--metadata", str(meta), path])
        assert result.exit_code == 0
        data = json.loads(meta.read_text())
        assert data["engine"] == "cloudflock"
        assert data["s11"] == 64

    def test_pmd_input(self, tmp_path):
        path = write_json(tmp_path, "fano.json", {"k": [0, 1, 3, 7]})
        result = CliRunner().invoke(cli, ["rgp", path])
        assert result.exit_code == 0
        assert "S(1,1) = 128" in result.stdout
        assert "T(1,1) = 28" in result.stdout

    def test_invalid_input(self, tmp_path):
        path = write_json(tmp_path, "bad.json", {"type": "uniform", "n": 3})
        result = CliRunner().invoke(cli, ["rgp", path])
        assert result.exit_code == 2

    def test_not_realizable(self, tmp_path):
        path = write_json(tmp_path, "crowded.json", CROWDED)
        result = CliRunner().invoke(cli, ["rgp", path])
        assert result.exit_code == 3

    def test_infeasible_pmd(self, tmp_path):
        path = write_json(tmp_path, "broken.json", {"k": [0, 1, 3, 8]})
        result = CliRunner().invoke(cli, ["rgp", path])
        assert result.exit_code == 3
        assert "56/6" in result.output

    def test_oracle_mismatch(self, tmp_path, monkeypatch):
        from cyclic_tutte.poly import BivarPoly
        monkeypatch.setattr("cyclic_tutte.engine.rgp_bruteforce", lambda m, **kwargs: BivarPoly.one())
        path = write_json(tmp_path, "u23.json", UNIFORM_23)
        result = CliRunner().invoke(cli, ["rgp", "--check-oracle", path])
        assert result.exit_code == 4
        assert "oracle: 1" in result.stdout

    def test_stdin(self):
        result = CliRunner().invoke(cli, ["rgp", "-"], input=json.dumps(UNIFORM_23))
        assert result.exit_code == 0
        assert result.stdout.startswith("x^2 + 3x + 3 + y")


class TestOracle:

    def test_uniform(self, tmp_path):
        path = write_json(tmp_path, "u23.json", UNIFORM_23)
        result = CliRunner().invoke(cli, ["oracle", path])
        assert result.exit_code == 0
        assert result.stdout.splitlines()[0] == "x^2 + 3x + 3 + y"

    def test_limit(self, tmp_path):
        path = write_json(tmp_path, "m1.json", M1_FLATS)
        result = CliRunner().invoke(cli, ["oracle", "--oracle-limit", "4", path])
        assert result.exit_code == 2

    def test_needs_matroid(self, tmp_path):
        path = write_json(tmp_path, "fano.json", {"k": [0, 1, 3, 7]})
        result = CliRunner().invoke(cli, ["oracle", path])
        assert result.exit_code == 2


class TestCyclicFlats:

    def test_table(self, tmp_path):
        path = write_json(tmp_path, "m1.json", M1_FLATS)
        result = CliRunner().invoke(cli, ["cyclic-flats", path])
        assert result.exit_code == 0
        assert "Cyclic flats (4)" in result.output

    def test_json(self, tmp_path):
        path = write_json(tmp_path, "m1.json", M1_FLATS)
        result = CliRunner().invoke(cli, ["cyclic-flats", "--json", path])
        rows = json.loads(result.stdout)
        assert [row["set"] for row in rows] == [[], [0, 1, 2], [0, 3, 4], [0, 1, 2, 3, 4, 5]]
        assert rows[1]["size"] == 3


class TestConfiguration:

    def test_twins_write_identical_files(self, tmp_path):
        out1, out2 = tmp_path / "c1.json", tmp_path / "c2.json"
        runner = CliRunner()
        r1 = runner.invoke(cli, ["configuration", write_json(tmp_path, "m1.json", M1_FLATS), "-o", str(out1)])
        r2 = runner.invoke(cli, ["configuration", write_json(tmp_path, "m2.json", M2_FLATS), "-o", str(out2)])
        assert r1.exit_code == r2.exit_code == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_reports_stripping(self, tmp_path):
        path = write_json(tmp_path, "b.json", {"type": "bases", "n": 4, "bases": [[0, 1], [0, 2], [1, 2]]})
        result = CliRunner().invoke(cli, ["configuration", path])
        assert result.exit_code == 0
        assert "Stripped 1 loop(s)" in result.output
        assert json.loads(result.stdout)["nodes"][-1] == {"size": 3, "rank": 2}

    def test_output_feeds_rgp(self, tmp_path):
        out = tmp_path / "c.json"
        runner = CliRunner()
        runner.invoke(cli, ["configuration", write_json(tmp_path, "m1.json", M1_FLATS), "-o", str(out)])
        result = runner.invoke(cli, ["rgp", str(out)])
        assert result.stdout.splitlines()[0] == "x^3 + 6x^2 + 15x + 18 + 2xy + 15y + 6y^2 + y^3"


class TestCondense:

    def test_group(self, tmp_path):
        out = tmp_path / "cc.json"
        group = write_json(tmp_path, "swap.json", {"n": 6, "generators": [list(corpus.M2_SWAP)]})
        result = CliRunner().invoke(
            cli, ["condense", write_json(tmp_path, "m2.json", M2_FLATS), "--group", group, "-o", str(out)],
        )
        assert result.exit_code == 0
        assert json.loads(out.read_text())["A"] == [[1, 1, 1], [0, 1, 2], [0, 0, 1]]

    def test_bad_group(self, tmp_path):
        group = write_json(tmp_path, "swap.json", {"n": 6, "generators": [list(corpus.M2_SWAP)]})
        result = CliRunner().invoke(cli, ["condense", write_json(tmp_path, "m1.json", M1_FLATS), "--group", group])
        assert result.exit_code == 2

    def test_coarsest(self, tmp_path):
        out = tmp_path / "cc.json"
        result = CliRunner().invoke(cli, ["condense", write_json(tmp_path, "m1.json", M1_FLATS), "-o", str(out)])
        assert result.exit_code == 0
        assert "3 blocks over 4 cyclic flats" in result.output
        assert json.loads(out.read_text())["A"] == [[1, 1, 1], [0, 1, 2], [0, 0, 1]]


class TestPmdCheck:

    def test_feasible(self, tmp_path):
        path = write_json(tmp_path, "fano.json", {"k": [0, 1, 3, 7]})
        result = CliRunner().invoke(cli, ["pmd-check", path])
        assert result.exit_code == 0
        assert "no obstruction" in result.output

    def test_infeasible(self, tmp_path):
        path = write_json(tmp_path, "broken.json", {"k": [0, 1, 3, 8]})
        result = CliRunner().invoke(cli, ["pmd-check", path])
        assert result.exit_code == 3
        assert "56/6" in result.output

    def test_batch_json(self, tmp_path):
        path = tmp_path / "batch.txt"
        path.write_text("# candidates\n0 1 3 7\n0 1 3 8\n")
        result = CliRunner().invoke(cli, ["pmd-check", "--batch", "--json", str(path)])
        assert result.exit_code == 3
        reports = json.loads(result.stdout)
        assert [r["ok"] for r in reports] == [True, False]

    def test_batch_all_ok(self, tmp_path):
        path = tmp_path / "batch.txt"
        path.write_text("0 1 3 7\n0 1 4 13\n")
        result = CliRunner().invoke(cli, ["pmd-check", "--batch", str(path)])
        assert result.exit_code == 0


class TestValidate:

    def test_valid_matroid(self, tmp_path):
        result = CliRunner().invoke(cli, ["validate", write_json(tmp_path, "m1.json", M1_FLATS)])
        assert result.exit_code == 0
        assert "Elements: 6" in result.output

    def test_invalid(self, tmp_path):
        path = write_json(tmp_path, "bad.json", {"k": [0, 2, 2]})
        result = CliRunner().invoke(cli, ["validate", path])
        assert result.exit_code == 2
        assert "1 error(s)" in result.output

    def test_invalid_configuration(self, tmp_path):
        bad = {"nodes": [{"size": 0, "rank": 0}, {"size": 2, "rank": 2}], "leq": [[0, 1]]}
        result = CliRunner().invoke(cli, ["validate", write_json(tmp_path, "bad.json", bad)])
        assert result.exit_code == 2

    def test_missing_file(self, tmp_path):
        result = CliRunner().invoke(cli, ["validate", str(tmp_path / "missing.json")])
        assert result.exit_code == 2
