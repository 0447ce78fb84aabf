import json

import pytest
from click.testing import CliRunner

from wonderful.cli import main
from wonderful.geometry import point_components
from wonderful.nested import count_divisors, enumerate_nested_sets


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def m0n5_config(tmp_path):
    path = tmp_path / "m0n5.json"
    path.write_text(
        json.dumps(
            {
                "n": 2,
                "dim_X": 1,
                "components": [
                    {"name": "c1", "dim": 0},
                    {"name": "c2", "dim": 0},
                    {"name": "c3", "dim": 0},
                ],
                "space": "XD_bracket",
            }
        )
    )
    return str(path)


def test_order_interleaved_golden(runner):
    result = runner.invoke(main, ["order", "--scheme", "interleaved", "--n", "2", "--components", "1"])
    assert result.exit_code == 0
    assert result.output == '["D:c1:{1}","D:c1:{1,2}","D:c1:{2}","Delta:{1,2}"]\n'


def test_nested_fvector_golden(runner, m0n5_config):
    result = runner.invoke(main, ["nested", "--config", m0n5_config, "--fvector"])
    assert result.exit_code == 0
    assert result.output == "1,10,15\n"


def test_fvector_csv_header(runner, m0n5_config):
    result = runner.invoke(main, ["fvector", "--config", m0n5_config, "--format", "csv"])
    assert result.output == "f0,f1,f2\n1,10,15\n"


def test_fiber_dot_golden(runner):
    result = runner.invoke(
        main,
        ["fiber", "--n", "3", "--components", "1", "--nested", "[D:c1:{1,2}]", "--format", "dot"],
    )
    assert result.exit_code == 0
    assert result.output == (
        "digraph fiber {\n"
        '  v0 [label="Root marks={3}"];\n'
        '  v1 [label="D(c1,1) marks={1,2}"];\n'
        "  v0 -> v1;\n"
        "}\n"
    )


def test_fiber_accepts_json_array_too(runner):
    relaxed = runner.invoke(
        main, ["fiber", "--n", "3", "--components", "1", "--nested", "[D:c1:{1,2}]"]
    )
    quoted = runner.invoke(
        main, ["fiber", "--n", "3", "--components", "1", "--nested", '["D:c1:{1,2}"]']
    )
    assert relaxed.output == quoted.output
    payload = json.loads(quoted.output)
    assert payload["stable"] is True
    assert payload["nested"] == ["D:c1:{1,2}"]


def test_divisors_matches_library(runner, m0n5_config):
    result = runner.invoke(main, ["divisors", "--config", m0n5_config, "--format", "json"])
    payload = json.loads(result.output)
    g = point_components(3, n=2)
    assert payload["count"] == count_divisors(g)
    assert len(payload["divisors"]) == 10


def test_nested_json_matches_library(runner, m0n5_config):
    result = runner.invoke(main, ["nested", "--config", m0n5_config, "--format", "json"])
    payload = json.loads(result.output)
    g = point_components(3, n=2)
    assert payload["count"] == len(enumerate_nested_sets(g))
    assert payload["nested_sets"][0] == []


def test_facets_count(runner, m0n5_config):
    result = runner.invoke(main, ["facets", "--config", m0n5_config, "--format", "json"])
    assert json.loads(result.output)["count"] == 15


def test_rewrite_two_block_to_interleaved(runner):
    result = runner.invoke(
        main,
        ["rewrite", "--n", "3", "--components", "1", "--source", "two_block", "--target", "interleaved"],
    )
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["ok"] is True
    assert len(payload["swaps"]) == 4
    assert all(s["certificate"] for s in payload["swaps"])


def test_rewrite_blocked_reports_pair(runner):
    result = runner.invoke(
        main,
        [
            "rewrite", "--n", "3", "--components", "0", "--space", "FM",
            "--source", '["Delta:{1,2}","Delta:{1,2,3}"]',
            "--target", '["Delta:{1,2,3}","Delta:{1,2}"]',
        ],
    )
    assert result.exit_code == 1
    payload = json.loads(result.output)
    assert payload["ok"] is False and set(payload["blocking"]) == {"Delta:{1,2}", "Delta:{1,2,3}"}


def test_orbits_table(runner):
    result = runner.invoke(main, ["orbits", "--n", "2", "--components", "1"])
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "D:c1:{1} size=2 stabilizer=1",
        "D:c1:{1,2} size=1 stabilizer=2",
        "Delta:{1,2} size=1 stabilizer=2",
        "orbits 3",
    ]


def test_bad_config_exits_2(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "dim_X": 1, "components": [{"name": "a", "dim": 5}]}')
    result = runner.invoke(main, ["divisors", "--config", str(bad)])
    assert result.exit_code == 2
    assert "error" in result.stderr
    missing_n = runner.invoke(main, ["divisors", "--components", "1"])
    assert missing_n.exit_code == 2


def test_budget_exceeded_exits_3(runner):
    result = runner.invoke(main, ["nested", "--n", "6", "--components", "1"])
    assert result.exit_code == 3
    assert "40" in result.stderr
    shallow = runner.invoke(main, ["nested", "--n", "6", "--components", "1", "--max-size", "1"])
    assert shallow.exit_code == 0


def test_certify_passes(runner):
    result = runner.invoke(main, ["certify"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == 5 and all(line.startswith("ok") for line in lines)


def test_outputs_byte_identical_across_runs_and_workers(runner, m0n5_config):
    commands = [
        ["nested", "--config", m0n5_config, "--format", "json"],
        ["facets", "--config", m0n5_config, "--format", "json"],
        ["fvector", "--config", m0n5_config],
        ["order", "--scheme", "interleaved", "--n", "3", "--components", "2"],
        ["orbits", "--n", "3", "--components", "1", "--kind", "nested", "--size", "2", "--format", "json"],
    ]
    for argv in commands:
        outputs = {runner.invoke(main, argv).output for _ in range(3)}
        assert len(outputs) == 1
    for workers in ("1", "2", "4"):
        base = runner.invoke(main, ["nested", "--config", m0n5_config, "--format", "json"]).output
        out = runner.invoke(
            main, ["nested", "--config", m0n5_config, "--format", "json", "--workers", workers]
        ).output
        assert out == base
