import json
import math

import numpy as np
import pytest

from fsx.cli import main as cli_main, parse_lambda
from fsx.corpus import generate_corpus
from fsx.errors import ConfigError, InvalidParameter, UnknownSuite
from fsx.lattice import field_from_modes, load_field, make_lattice, save_field
from fsx.poisson import trace
from fsx.report import Report, canonical_json, read_report, report_digest, write_report
from fsx.suites import SuiteConfig, run_suite


@pytest.fixture(scope="module")
def lat():
    return make_lattice(2, 16)


class TestCorpus:
    def test_deterministic_digest(self, lat):
        a = generate_corpus(42, "random_bandlimited", 10, lat)
        b = generate_corpus(42, "random_bandlimited", 10, lat)
        assert a.digest() == b.digest()

    def test_different_seeds_differ(self, lat):
        a = generate_corpus(42, "random_bandlimited", 5, lat)
        b = generate_corpus(43, "random_bandlimited", 5, lat)
        assert a.digest() != b.digest()

    def test_plane_waves_distinct(self, lat):
        c = generate_corpus(42, "plane_waves", 3, lat)
        occupied = [tuple(np.argwhere(np.abs(u.coef) > 0)[0]) for u in c.fields]
        assert len(set(occupied)) == 3

    def test_sine_strip_traces_vanish(self, lat):
        c = generate_corpus(7, "sine_strip", 5, lat)
        for u in c.fields:
            assert trace(u).peak() < 1e-14 * u.peak()

    def test_boundary_bump_leakage(self):
        # the 1e-8 far-face budget needs the default bandlimit; below ~K=20
        # the uncertainty tradeoff makes it unattainable
        from fsx.halfspace import half_peak, make_half_field

        c = generate_corpus(3, "boundary_bump", 3, make_lattice(2, 32))
        for u in c.fields:
            hf = make_half_field(u)
            assert hf.leakage <= 1e-8 * half_peak(hf)

    def test_invalid_inputs(self, lat):
        with pytest.raises(InvalidParameter):
            generate_corpus(1, "random_bandlimited", 0, lat)
        with pytest.raises(InvalidParameter):
            generate_corpus(1, "nope", 3, lat)


class TestReport:
    def _sample(self):
        rep = Report(suite="demo", params={"dim": 2, "seed": 1})
        rep.add_case("alpha", 0.5, 1.0, True, digest="abc")
        rep.add_case("beta", 2.0, 1.0, False)
        rep.constants["c1"] = math.pi
        rep.verifies.append("demo identity")
        rep.wall_time = 1.234
        return rep

    def test_passed_is_conjunction(self):
        rep = self._sample()
        assert not rep.passed
        rep.cases[1]["passed"] = True
        assert rep.passed

    def test_canonical_floats(self):
        text = canonical_json({"x": 1.0, "y": [2.5, True, None]})
        assert '"x":1.000000000000e+00' in text
        assert '"y":[2.500000000000e+00,true,null]' in text

    def test_sorted_keys(self):
        assert canonical_json({"b": 1, "a": 2}) == '{"a":2,"b":1}'

    def test_digest_masks_timing(self):
        rep = self._sample()
        d1 = report_digest(rep)
        rep.wall_time = 99.0
        assert report_digest(rep) == d1

    def test_write_read_roundtrip(self, tmp_path):
        rep = self._sample()
        path = str(tmp_path / "r.json")
        write_report(rep, path)
        data = read_report(path)
        assert data["suite"] == "demo"
        assert data["passed"] is False
        assert len(data["cases"]) == 2

    def test_nonfinite_floats_serializable(self):
        text = canonical_json({"v": math.inf, "w": float("nan")})
        assert '"inf"' in text and '"nan"' in text


class TestRunSuite:
    def test_unknown_suite(self):
        with pytest.raises(UnknownSuite):
            run_suite("nope", SuiteConfig())

    def test_bad_config(self):
        with pytest.raises(ConfigError):
            SuiteConfig(corpus_size=0)

    def test_deterministic_reports(self):
        cfg = SuiteConfig(bandlimit=16, corpus_size=3)
        r1 = run_suite("lp_partition", cfg)
        r2 = run_suite("lp_partition", cfg)
        assert report_digest(r1) == report_digest(r2)

    def test_suite_metadata(self):
        cfg = SuiteConfig(bandlimit=16, corpus_size=3)
        rep = run_suite("scaling", cfg)
        assert rep.verifies  # every suite declares what it checks
        assert rep.params["bandlimit"] == 16


class TestCli:
    def test_parse_lambda(self):
        assert parse_lambda("10@0.5pi") == pytest.approx(10j, abs=1e-12)
        assert parse_lambda("2@0") == pytest.approx(2.0)
        assert parse_lambda("1+2j") == 1 + 2j

    def test_norm_command(self, tmp_path, capsys):
        lat = make_lattice(2, 8)
        u = field_from_modes(lat, {(1, 1): 1.0})
        path = str(tmp_path / "u.json")
        save_field(u, path)
        rc = cli_main(["norm", "--input", path, "--space", "Lp:p=2"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "6.283185307180e+00" in out

    def test_verify_command_writes_report(self, tmp_path, capsys):
        out = str(tmp_path / "rep.json")
        rc = cli_main(
            ["verify", "--suite", "scaling", "--bandlimit", "16", "--out", out]
        )
        assert rc == 0
        data = read_report(out)
        assert data["suite"] == "scaling"
        assert data["passed"] is True

    def test_solve_roundtrip(self, tmp_path):
        lat = make_lattice(2, 8)
        f = field_from_modes(lat, {(1, 1): 1 / 2j, (1, -1): -1 / 2j})
        fpath = str(tmp_path / "f.json")
        save_field(f, fpath)
        out = str(tmp_path / "u.json")
        rc = cli_main(
            [
                "solve",
                "--problem",
                "dirichlet-resolvent",
                "--lambda",
                "1@0",
                "--f",
                fpath,
                "--out",
                out,
            ]
        )
        assert rc == 0
        u = load_field(out)
        # eigenmode: (1 - Lap)^{-1} divides by 1 + 2
        assert np.max(np.abs(u.coef - f.coef / 3.0)) < 1e-12
        meta = json.load(open(out))
        assert meta["halfspace"] is True

    def test_error_exit_code(self, tmp_path, capsys):
        rc = cli_main(["norm", "--input", str(tmp_path / "missing.json"),
                       "--space", "Lp:p=2"])
        assert rc == 2
