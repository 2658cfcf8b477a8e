import json


from carlitz.cli import main
from carlitz.lfun import format_provider, schur_provider


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_rank_command(capsys):
    status, out, _ = run(capsys, "rank", "--schur", "2", "--twist", "F2:0,1,1")
    assert status == 0
    assert "r=2" in out and "r_inf=0" in out
    assert "L=1 + (1)*T^2" in out


def test_lpoly_command(capsys):
    status, out, _ = run(capsys, "lpoly", "--schur", "2")
    assert status == 0
    assert out.strip() == "1 + (-a1 - a2)*T^1 + (a1*a2)*T^2"


def test_lpoly_needs_a_source(capsys):
    status, _, err = run(capsys, "lpoly")
    assert status == 2


def test_variety_degree(capsys):
    status, out, _ = run(capsys, "variety", "--m", "4", "--i", "2", "--degree")
    assert status == 0
    assert "degree = 6" in out
    assert "# window_betas = [3, 2]" in out


def test_variety_ci_check_green(capsys):
    status, out, _ = run(capsys, "variety", "--m", "4", "--i", "2",
                         "--ci-check")
    assert status == 0
    assert "complete_intersection = true" in out


def test_variety_nesting_flagged(capsys):
    # an honest negative finding exits with the flagged-finding status
    status, out, _ = run(capsys, "variety", "--m", "3", "--i", "1",
                         "--nesting")
    assert status == 4
    assert "nesting = false" in out


def test_census_csv(capsys):
    status, out, _ = run(capsys, "census", "--q", "3", "--m", "3",
                         "--i-list", "0,1,2")
    assert status == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("q,m,i,count")
    assert len(lines) == 4
    assert lines[1].startswith("3,3,0,81,81,at-infinity")


def test_census_check_passes(capsys):
    status, out, _ = run(capsys, "census", "--q", "2", "--m", "3",
                         "--i-list", "0,1", "--check")
    assert status == 0


def test_census_budget_refusal(capsys):
    status, _, err = run(capsys, "census", "--q", "3", "--m", "39",
                         "--i-list", "1")
    assert status == 3
    assert "budget" in err


def test_census_jsonl(capsys, tmp_path):
    out_path = tmp_path / "points.jsonl"
    status, _, _ = run(capsys, "census", "--q", "2", "--m", "3",
                       "--i-list", "0,1", "--jsonl", str(out_path))
    assert status == 0
    rows = [json.loads(line) for line in out_path.read_text().splitlines()]
    assert rows and all(r["rank"] >= 1 for r in rows)
    assert all(r["twist"].startswith("F2:") for r in rows)


def test_kappa_cli(capsys):
    status, out, _ = run(capsys, "kappa", "--gens", "a0^3", "--nvars", "1",
                         "--f", "a0")
    assert status == 0
    assert out.strip() == "3"
    status, out, _ = run(capsys, "kappa", "--gens", "a0", "--nvars", "2",
                         "--f", "a1")
    assert out.strip() == "absent"


def test_provider_check(capsys, tmp_path):
    good = tmp_path / "good.prov"
    good.write_text(format_provider(schur_provider(2)), encoding="utf-8")
    status, out, _ = run(capsys, "provider-check", str(good))
    assert status == 0 and "ok:" in out

    bad = tmp_path / "bad.prov"
    bad.write_text("q = 3\nm = 5\nn = 1\nk = 2\nsource = x\n" + "a0\n" * 4,
                   encoding="utf-8")
    status, _, err = run(capsys, "provider-check", str(bad))
    assert status != 0
    assert "ceil((m+n)/(q-1))" in err


def test_external_provider_through_cli(capsys, tmp_path):
    path = tmp_path / "ext.prov"
    path.write_text("q = 3\nm = 1\nn = 1\nk = 1\nsource = ext\na0 + 2*a1\n",
                    encoding="utf-8")
    status, out, _ = run(capsys, "lpoly", "--provider", str(path))
    assert status == 0
    assert out.strip() == "1 + (-a0 - 2*a1)*T^1"
    status, out, _ = run(capsys, "rank", "--provider", str(path),
                         "--twist", "F3:1,0")
    assert status == 0
    assert "r=1" in out  # L = 1 - T vanishes once at T = 1
    status, out, _ = run(capsys, "census", "--q", "3", "--m", "1",
                         "--provider", str(path), "--i-list", "0,1",
                         "--check")
    assert status == 0
    assert "3,1,1,3," in out  # a0 + 2 a1 = 0 on 3 of the 9 points


def test_unknown_flag_is_usage_error(capsys):
    status, _, _ = run(capsys, "census", "--q", "3", "--definitely-not-a-flag")
    assert status == 2


def test_malformed_twist_is_usage_error(capsys):
    status, _, err = run(capsys, "rank", "--schur", "2", "--twist", "BOGUS")
    assert status == 2
    assert "error" in err


def test_malformed_kappa_poly_is_usage_error(capsys):
    status, _, _ = run(capsys, "kappa", "--gens", "a0", "--nvars", "1",
                       "--f", "a0 ^^ 2")
    assert status == 2


def test_byte_identical_reruns(capsys):
    _, first, _ = run(capsys, "lpoly", "--schur", "3")
    _, second, _ = run(capsys, "lpoly", "--schur", "3")
    assert first == second


def test_catalog_determinism_modulo_timestamps(capsys, tmp_path):
    import json

    paths = []
    for run_id in (1, 2):
        path = tmp_path / f"cat{run_id}.jsonl"
        run(capsys, "rank", "--schur", "3", "--twist", "F3:1,0,2,1",
            "--catalog", str(path))
        run(capsys, "variety", "--m", "3", "--i", "2", "--degree",
            "--catalog", str(path))
        paths.append(path)

    def normalized(path):
        out = []
        for line in path.read_text().splitlines():
            obj = json.loads(line)
            obj["provenance"].pop("timestamp")
            out.append(obj)
        return out

    assert normalized(paths[0]) == normalized(paths[1])


def test_catalog_append_and_report(capsys, tmp_path):
    catalog = tmp_path / "catalog.jsonl"
    run(capsys, "rank", "--schur", "2", "--twist", "F2:0,1,1",
        "--catalog", str(catalog))
    run(capsys, "rank", "--schur", "2", "--twist", "F2:0,1,1",
        "--catalog", str(catalog))
    run(capsys, "census", "--q", "2", "--m", "2", "--i-list", "0,1",
        "--catalog", str(catalog))
    import csv
    import io

    status, out, _ = run(capsys, "report", "--catalog", str(catalog),
                         "--kind", "rank-record")
    assert status == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 2  # header + deduplicated record
    status, out, _ = run(capsys, "report", "--catalog", str(catalog))
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 3  # header + rank + census
