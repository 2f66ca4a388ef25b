import json
import os
import subprocess
import sys

import numpy as np
import pytest

from seminormal.volterra import volterra_galerkin

JORDAN_DOC = {"n": 2, "entries": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]}
NORMAL_DOC = {"n": 2, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 1.0]]}


def run_cli(*args, stdin=None, env_extra=None):
    env = dict(os.environ)
    env.pop("SEMINORMAL_SEED", None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        [sys.executable, "-m", "seminormal", *args],
        input=stdin, capture_output=True, env=env,
    )
    return proc.returncode, proc.stdout, proc.stderr


def write_doc(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def jordan_file(tmp_path):
    return write_doc(tmp_path / "jordan.json", JORDAN_DOC)


@pytest.fixture
def normal_file(tmp_path):
    return write_doc(tmp_path / "normal.json", NORMAL_DOC)


class TestClassifyCommand:
    def test_jordan(self, jordan_file):
        code, out, _ = run_cli("classify", jordan_file)
        assert code == 0
        doc = json.loads(out)
        assert doc["classification"]["class"] == "NonSeminormal"
        assert doc["classification"]["c_interval"] == pytest.approx([-1.0, 1.0])
        assert doc["classification"]["zero_is_extreme"] is False
        assert doc["kernel_m0"]["equal"] is False

    def test_normal(self, normal_file):
        code, out, _ = run_cli("classify", normal_file)
        assert code == 0
        assert json.loads(out)["classification"]["class"] == "Normal"

    def test_stdin(self, jordan_file):
        raw = open(jordan_file, "rb").read()
        code, out, _ = run_cli("classify", "-", stdin=raw)
        assert code == 0
        assert json.loads(out)["classification"]["class"] == "NonSeminormal"

    def test_malformed_entry_position(self, tmp_path):
        doc = {"n": 2, "entries": [[0.0, 0.0], [1.0, 0.0], ["x", 0.0], [0.0, 0.0]]}
        path = write_doc(tmp_path / "bad.json", doc)
        code, _, err = run_cli("classify", path)
        assert code == 2
        assert b"row 1, column 0" in err

    def test_entry_count_dimension_error(self, tmp_path):
        doc = {"n": 2, "entries": [[0.0, 0.0]] * 3}
        path = write_doc(tmp_path / "short.json", doc)
        code, _, err = run_cli("classify", path)
        assert code == 3
        assert b"entries" in err

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "garbage.json"
        path.write_text("{not json")
        code, _, err = run_cli("classify", str(path))
        assert code == 2

    def test_bad_n_type(self, tmp_path):
        path = write_doc(tmp_path / "badn.json", {"n": "2", "entries": []})
        code, _, err = run_cli("classify", str(path))
        assert code == 2
        assert b"'n'" in err

    def test_nonpositive_n(self, tmp_path):
        path = write_doc(tmp_path / "zero.json", {"n": 0, "entries": []})
        code, _, _ = run_cli("classify", str(path))
        assert code == 3

    def test_missing_input_is_io_error(self, tmp_path):
        code, _, _ = run_cli("classify", str(tmp_path / "nope.json"))
        assert code == 4


class TestNumrangeCommand:
    def test_jordan_csv(self, jordan_file, tmp_path):
        csv_path = tmp_path / "boundary.csv"
        code, out, _ = run_cli("numrange", jordan_file, "--angles", "360",
                               "--csv", str(csv_path))
        assert code == 0
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "theta,support,re,im"
        rows = [line.split(",") for line in lines[1:]]
        assert len(rows) == 360
        mods = [np.hypot(float(r[2]), float(r[3])) for r in rows]
        assert min(mods) >= 0.5 - 1e-6
        assert max(mods) <= 0.5 + 5e-16
        thetas = [float(r[0]) for r in rows]
        assert thetas == sorted(thetas)

    def test_jordan_svg(self, jordan_file, tmp_path):
        svg_path = tmp_path / "boundary.svg"
        code, _, _ = run_cli("numrange", jordan_file, "--svg", str(svg_path))
        assert code == 0
        text = svg_path.read_text()
        assert text.startswith("<svg")
        assert "<polygon" in text

    def test_hermitian_svg_is_segment(self, normal_file, tmp_path):
        svg_path = tmp_path / "seg.svg"
        code, _, _ = run_cli("numrange", normal_file, "--svg", str(svg_path))
        assert code == 0
        text = svg_path.read_text()
        assert "<polygon" not in text
        assert "<line" in text

    def test_too_few_angles_is_usage_error(self, jordan_file):
        code, _, _ = run_cli("numrange", jordan_file, "--angles", "2")
        assert code == 1

    def test_unwritable_output(self, jordan_file, tmp_path):
        code, _, _ = run_cli("numrange", jordan_file, "--csv",
                             str(tmp_path / "no-such-dir" / "x.csv"))
        assert code == 4


class TestVolterraCommand:
    def test_default_report(self):
        code, out, _ = run_cli("volterra", "--n", "16", "--phi-samples", "4",
                               "--midpoint-m", "64")
        assert code == 0
        doc = json.loads(out)
        assert doc["gamma"] == pytest.approx(0.2886751345948129)
        assert doc["quoted_extreme"] == pytest.approx(1.224744871391589)
        assert doc["quoted_extreme_consistent"] is False
        assert doc["norm_v1"] == pytest.approx(0.5773502691896258, abs=1e-12)
        assert doc["norm_vstar1"] == pytest.approx(0.5773502691896258, abs=1e-12)
        assert doc["rank_one_residual"] <= 1e-13
        assert doc["canonical_reconstruction_residual"] <= 1e-12
        assert doc["e_set_checks"]["e1"] is True
        assert doc["e_set_checks"]["random_perp_all"] is True
        assert doc["spectra"]["kernel"]["max"] == pytest.approx(0.2886751345948129,
                                                                abs=1e-12)

    def test_phi_sampling(self):
        code, out, _ = run_cli("volterra", "--n", "4", "--phi-samples", "10",
                               "--midpoint-m", "16")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["l_phi_checks"]) == 10
        assert all(check["all_pass"] for check in doc["l_phi_checks"])

    def test_small_n_is_usage_error(self):
        code, _, _ = run_cli("volterra", "--n", "3")
        assert code == 1

    def test_export_round_trip(self, tmp_path):
        export = tmp_path / "v8.json"
        code, _, _ = run_cli("volterra", "--n", "8", "--phi-samples", "2",
                             "--midpoint-m", "16", "--export-matrix", str(export))
        assert code == 0
        doc = json.loads(export.read_text())
        parsed = np.array([complex(re, im) for re, im in doc["entries"]])
        parsed = parsed.reshape(doc["n"], doc["n"])
        np.testing.assert_array_equal(parsed, volterra_galerkin(8).op)

    def test_exported_matrix_feeds_stampfli(self, tmp_path):
        export = tmp_path / "v8.json"
        run_cli("volterra", "--n", "8", "--phi-samples", "0",
                "--midpoint-m", "16", "--export-matrix", str(export))
        code, out, _ = run_cli("stampfli", str(export))
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "Witness"
        assert doc["witness_image_norm"] > 0.1


class TestStampfliCommand:
    def test_normal_holds(self, normal_file):
        code, out, _ = run_cli("stampfli", normal_file)
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "EquivalenceHolds"
        assert doc["witness"] is None

    def test_jordan_witness(self, jordan_file):
        code, out, _ = run_cli("stampfli", jordan_file)
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "Witness"
        w = np.array([complex(re, im) for re, im in doc["witness"]])
        unit = w / np.linalg.norm(w)
        target = np.array([1.0, 1.0]) / np.sqrt(2.0)
        assert abs(np.vdot(target, unit)) == pytest.approx(1.0, abs=1e-12)
        assert doc["witness_form_value"] == pytest.approx(0.0, abs=1e-12)


class TestDeterminism:
    def test_volterra_byte_identical(self):
        args = ("volterra", "--n", "8", "--phi-samples", "3",
                "--midpoint-m", "32", "--seed", "7")
        _, out1, _ = run_cli(*args)
        _, out2, _ = run_cli(*args)
        assert out1 == out2

    def test_classify_byte_identical(self, jordan_file):
        _, out1, _ = run_cli("classify", jordan_file)
        _, out2, _ = run_cli("classify", jordan_file)
        assert out1 == out2

    def test_env_seed_overrides_flag(self):
        _, with_env, _ = run_cli("volterra", "--n", "8", "--phi-samples", "2",
                                 "--midpoint-m", "16", "--seed", "1",
                                 env_extra={"SEMINORMAL_SEED": "9"})
        _, with_flag, _ = run_cli("volterra", "--n", "8", "--phi-samples", "2",
                                  "--midpoint-m", "16", "--seed", "9")
        assert with_env == with_flag

    def test_bad_env_seed_is_usage_error(self):
        code, _, _ = run_cli("volterra", "--n", "8",
                             env_extra={"SEMINORMAL_SEED": "not-a-number"})
        assert code == 1


class TestUsage:
    def test_no_command(self):
        code, _, _ = run_cli()
        assert code == 1

    def test_unknown_command(self):
        code, _, _ = run_cli("frobnicate")
        assert code == 1
