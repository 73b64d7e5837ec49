import json
import xml.etree.ElementTree as ET

import numpy as np

from spiderlaw import GofReport, arcsine_cdf, arcsine_pdf, ks_one_sample
from spiderlaw.cli import main


def _read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0].split(","), np.array(
        [[float(v) for v in line.split(",")] for line in lines[1:]])


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------

def test_sample_occupation(tmp_path):
    out = tmp_path / "occ"
    code = main(["sample", "--law", "occupation", "--n", "3", "--count", "1000",
                 "--seed", "42", "--out", str(out)])
    assert code == 0
    header, rows = _read_csv(tmp_path / "occ.csv")
    assert rows.shape == (1000, 3)
    assert np.abs(rows.sum(axis=1) - 1.0).max() <= 1e-12
    manifest = json.loads((tmp_path / "occ.manifest.json").read_text())
    assert manifest["command"] == "sample"
    assert all(json.loads((tmp_path / "occ.json").read_text()))


def test_sample_arcsine_law_is_right(tmp_path):
    out = tmp_path / "arc"
    assert main(["sample", "--law", "arcsine", "--count", "100000",
                 "--seed", "9", "--out", str(out)]) == 0
    _, rows = _read_csv(tmp_path / "arc.csv")
    assert ks_one_sample(rows[:, 0], arcsine_cdf, seed=9).passed


def test_sample_spider_walk(tmp_path):
    out = tmp_path / "walk"
    code = main(["sample", "--law", "spider-walk", "--n", "3", "--steps", "1000",
                 "--count", "40", "--seed", "4", "--out", str(out)])
    assert code == 0
    lines = (tmp_path / "walk.csv").read_text().splitlines()
    header = lines[0].split(",")
    assert header[0] == "path_id" and header[1] == "frac_ray1"
    assert header[-1] == "discarded"
    assert len(lines) == 41
    fracs = np.array([[float(v) for v in line.split(",")[1:4]] for line in lines[1:]])
    assert np.abs(fracs.sum(axis=1) - 1.0).max() <= 1e-12


def test_sample_usage_errors(tmp_path):
    out = str(tmp_path / "x")
    assert main(["sample", "--law", "occupation", "--n", "3", "--count", "0",
                 "--out", out]) == 2
    assert main(["sample", "--law", "ratio-a", "--count", "10", "--out", out]) == 2
    assert main(["sample", "--law", "nope", "--count", "10", "--out", out]) == 2
    assert main(["sample", "--law", "occupation", "--n", "1", "--count", "5",
                 "--out", out]) == 2


def test_seed_env_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("SPIDER_SEED", "777")
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["sample", "--law", "stable-half", "--count", "50", "--out", str(a),
                 "--deterministic"]) == 0
    assert main(["sample", "--law", "stable-half", "--count", "50", "--out", str(b),
                 "--deterministic"]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    sidecar = json.loads((tmp_path / "a.json").read_text())
    assert sidecar["seed"] == 777
    monkeypatch.setenv("SPIDER_SEED", "not-a-number")
    assert main(["sample", "--law", "stable-half", "--count", "5",
                 "--out", str(tmp_path / "c")]) == 2


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------

def test_figure_ratio_outputs(tmp_path):
    prefix = tmp_path / "fig1"
    code = main(["figure-ratio", "--out", str(prefix), "--deterministic"])
    assert code == 0
    svg = tmp_path / "fig1.svg"
    tree = ET.parse(svg)
    paths = [el for el in tree.getroot().iter() if el.tag.endswith("path")]
    assert len(paths) == 5  # one per default mu

    # the mu = 1/2 curve is the arc-sine curve
    _, rows = _read_csv(tmp_path / "fig1_ratio_a_mu0.5.csv")
    interior = rows[1:-1]
    assert np.abs(interior[:, 1] - arcsine_pdf(interior[:, 0])).max() <= 1e-12
    # every emitted curve is symmetric about 1/2
    for mu in ("0.1", "0.25", "0.5", "0.75", "0.9"):
        _, rows = _read_csv(tmp_path / f"fig1_ratio_a_mu{mu}.csv")
        pdf = rows[1:-1, 1]
        assert np.allclose(pdf, pdf[::-1], rtol=0, atol=1e-12)


def test_figure_ratio_rerun_is_byte_identical(tmp_path):
    args = ["figure-ratio", "--mu", "0.3,0.6", "--out", str(tmp_path / "ra"),
            "--deterministic"]
    suffixes = ("_ratio_a_mu0.3.csv", "_ratio_a_mu0.6.csv", ".svg",
                ".manifest.json")
    assert main(args) == 0
    first = {s: (tmp_path / f"ra{s}").read_bytes() for s in suffixes}
    assert main(args) == 0
    for s in suffixes:
        assert (tmp_path / f"ra{s}").read_bytes() == first[s]


def test_figure_spider_outputs(tmp_path):
    prefix = tmp_path / "fig2"
    code = main(["figure-spider", "--out", str(prefix), "--deterministic"])
    assert code == 0
    tree = ET.parse(tmp_path / "fig2.svg")
    paths = [el for el in tree.getroot().iter() if el.tag.endswith("path")]
    assert len(paths) == 5

    # the two-ray curve is the arc-sine curve
    _, rows = _read_csv(tmp_path / "fig2_spider_occupation_n2.csv")
    interior = rows[1:-1]
    assert np.abs(interior[:, 1] - arcsine_pdf(interior[:, 0])).max() <= 1e-12

    # growing ray count pushes mass toward 0: cdf(0.1) increases in n,
    # and for n=8 the mass below 0.1 beats the mass above 0.9
    cdf_at = {}
    for n in (2, 3, 4, 5, 8):
        _, rows = _read_csv(tmp_path / f"fig2_spider_occupation_n{n}.csv")
        grid = rows[:, 0]
        cdf_at[n] = (rows[grid == 0.1, 2][0], rows[grid == 0.9, 2][0])
        assert (rows[1:-1, 1] > 0).all()
    lows = [cdf_at[n][0] for n in (2, 3, 4, 5, 8)]
    assert all(a < b for a, b in zip(lows, lows[1:]))
    assert cdf_at[8][0] > 1.0 - cdf_at[8][1]


def test_figure_usage_error(tmp_path):
    assert main(["figure-ratio", "--mu", "1.5", "--out", str(tmp_path / "f")]) == 2
    assert main(["figure-spider", "--n", "1", "--out", str(tmp_path / "g")]) == 2


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_convergence_suite(tmp_path, capsys):
    out = tmp_path / "reports.jsonl"
    code = main(["verify", "--suite", "convergence", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 2
    parsed = [json.loads(line) for line in lines]
    assert all(entry["verdict"] == "pass" for entry in parsed)
    stdout = capsys.readouterr().out
    assert "convergence" in stdout
    # the six per-ray-count distances are reported on their own line
    distances = [l for l in stdout.splitlines() if l.startswith("convergence distances")]
    assert len(distances) == 1 and distances[0].count("n=") == 6


def test_verify_densities_suite(tmp_path):
    assert main(["verify", "--suite", "densities",
                 "--out", str(tmp_path / "d.jsonl")]) == 0


def test_verify_unknown_suite():
    assert main(["verify", "--suite", "everything"]) == 2


def test_verify_failure_exit_code(monkeypatch, capsys):
    failing = GofReport("forced", 1.0, None, 0, 0, 0, 0.5, "stat_max")
    monkeypatch.setattr("spiderlaw.cli.run_suite", lambda name, seed: ([failing], {}))
    assert main(["verify", "--suite", "densities"]) == 1
    err = capsys.readouterr().err
    assert "forced" in err
