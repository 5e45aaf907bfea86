import csv
import json
from io import StringIO

import numpy as np
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError
from rest_framework import serializers

from linalg import hermitian as hermitian_module
from states.family import validate
from states.named import WernerSpec, max_entangled_projector, werner

from .documents import DocumentKind, MatrixDocument
from .reports import INVALID_STATE, parse_eps_grid
from .serializers import parse_document, render_document

TWO_QUBIT = {
    "kind": "family",
    "dims": [2, 2],
    "payload": {
        "X": [[0.125, 0.25], [0.25, 0.125]],
        "M": [[], [[0.375]]],
        "N": [[[0.375]], []],
    },
}


@pytest.fixture
def run_command():
    def _run_command(name, *args, document=None, **options):
        out = StringIO()
        if document is not None:
            text = document if isinstance(document, str) else json.dumps(document)
            options["stdin"] = StringIO(text)
        call_command(name, *args, stdout=out, **options)
        return out.getvalue()

    return _run_command


@pytest.fixture
def analyze(run_command):
    def _analyze(document, **options):
        return json.loads(run_command("analyze", document=document, **options))

    return _analyze


@pytest.fixture
def worked_example_document(worked_example_params):
    return render_document(
        MatrixDocument(DocumentKind.FAMILY, (4, 4), worked_example_params)
    )


def sweep_rows(output):
    rows = list(csv.reader(StringIO(output)))
    assert rows[0] == ["eps", "min_pt_eigenvalue", "negativity", "verdict", "min_eigenvalue"]
    return [
        (float(eps), float(min_pt), float(neg), verdict, float(min_state))
        for eps, min_pt, neg, verdict, min_state in rows[1:]
    ]


class TestDocuments:
    def test_round_trip_is_bit_exact(self, worked_example_document):
        document = parse_document(worked_example_document)
        assert render_document(document) == worked_example_document

    def test_complex_entries(self):
        text = json.dumps(
            {
                "kind": "dense",
                "dims": [1, 2],
                "payload": {"matrix": [[[0.5, 0], [0.1, 0.2]], [[0.1, -0.2], 0.5]]},
            }
        )
        matrix = parse_document(text).density_matrix()
        assert matrix[0, 1] == 0.1 + 0.2j
        assert matrix[1, 1] == 0.5

    def test_qubit_qudit(self):
        text = json.dumps(
            {
                "kind": "qubit_qudit",
                "dims": [2, 3],
                "payload": {
                    "x00": 0.1,
                    "x11": 0.1,
                    "x01": [0.02, 0.01],
                    "A": np.diag([0.2, 0.2]).tolist(),
                    "B": np.diag([0.2, 0.2]).tolist(),
                },
            }
        )
        document = parse_document(text)
        assert document.density_matrix()[2, 3] == 0.02 + 0.01j
        assert render_document(parse_document(render_document(document))) == render_document(
            document
        )

    @pytest.mark.parametrize(
        "payload_change",
        [
            {"X": [[0.5, 0.0]]},
            {"M": [[], [[0.3, 0.1]]]},
            {"X": [[0.5, "a"], [0.0, 0.5]]},
        ],
    )
    def test_malformed_payload(self, payload_change):
        document = json.loads(json.dumps(TWO_QUBIT))
        document["payload"].update(payload_change)
        with pytest.raises(serializers.ValidationError):
            parse_document(json.dumps(document))

    def test_dimension_mismatch(self):
        document = {"kind": "dense", "dims": [2, 2], "payload": {"matrix": np.eye(3).tolist()}}
        with pytest.raises(serializers.ValidationError):
            parse_document(json.dumps(document))

    def test_unknown_kind(self):
        with pytest.raises(serializers.ValidationError):
            parse_document(json.dumps({"kind": "ghz", "dims": [2, 2], "payload": {}}))

    def test_werner_requires_square_dims(self):
        with pytest.raises(serializers.ValidationError):
            parse_document(json.dumps({"kind": "werner", "dims": [2, 3], "payload": {"eps": 0}}))


class TestGenerateCommand:
    def test_singlet(self, run_command):
        document = parse_document(run_command("generate", "werner", d=2, eps=-1.0))
        assert document.kind == DocumentKind.WERNER
        assert document.dims == (2, 2)
        np.testing.assert_array_equal(document.density_matrix(), werner(WernerSpec(2, -1)))

    def test_sampled_family(self, run_command):
        output = run_command("generate", "family", dA=3, dB=4, seed=7, bias=0.5)
        document = parse_document(output)
        assert validate(document.state).overall
        assert run_command("generate", "family", dA=3, dB=4, seed=7, bias=0.5) == output

    def test_qubit_qudit_sample(self, run_command):
        document = parse_document(run_command("generate", "qubit_qudit", dB=4, seed=2))
        assert document.dims == (2, 4)
        assert validate(document.state).overall

    def test_isotropic_projector(self, run_command):
        document = parse_document(run_command("generate", "isotropic", d=3, eps=1.0))
        np.testing.assert_allclose(
            document.density_matrix(), max_entangled_projector(3), atol=1e-15
        )

    def test_eps_out_of_range(self, run_command):
        with pytest.raises(CommandError) as excinfo:
            run_command("generate", "werner", d=2, eps=0.5)
        assert excinfo.value.returncode == 2
        assert "PSD range" in str(excinfo.value)

    def test_missing_dimension(self, run_command):
        with pytest.raises(CommandError) as excinfo:
            run_command("generate", "family", dA=3)
        assert excinfo.value.returncode == 2

    def test_writes_file(self, run_command, tmp_path):
        target = tmp_path / "werner.json"
        assert run_command("generate", "werner", d=3, eps=0.1, out=str(target)) == ""
        assert parse_document(target.read_text()).state == WernerSpec(3, 0.1)


class TestValidateCommand:
    def test_maximally_mixed(self, run_command):
        document = {"kind": "dense", "dims": [2, 3], "payload": {"matrix": (np.eye(6) / 6).tolist()}}
        report = json.loads(run_command("validate", document=document))
        assert report["overall"] is True
        assert report["pattern_ok"] is None

    def test_not_psd(self, run_command):
        document = json.loads(json.dumps(TWO_QUBIT))
        document["payload"]["M"] = [[], [[0.125]]]
        document["payload"]["N"] = [[[0.125]], []]
        report = json.loads(run_command("validate", document=document))
        assert report["psd"] is False
        assert report["min_eigenvalue"] == pytest.approx(-0.125, abs=1e-12)

    def test_reads_file(self, run_command, tmp_path):
        source = tmp_path / "two_qubit.json"
        source.write_text(json.dumps(TWO_QUBIT))
        report = json.loads(run_command("validate", input=str(source)))
        assert report["overall"] is True


class TestAnalyzeCommand:
    def test_singlet(self, analyze):
        report = analyze({"kind": "werner", "dims": [2, 2], "payload": {"eps": -1}})
        assert report["negativity"] == pytest.approx(0.5, abs=1e-10)
        assert report["classification"]["verdict"] == "NPT_ENTANGLED"
        assert report["is_ppt"] is False

    def test_two_qubit_family(self, analyze):
        report = analyze(TWO_QUBIT)
        assert report["negativity"] == pytest.approx(0.125, abs=1e-12)
        assert report["negative_eigenvalues"] == [pytest.approx(-0.125, abs=1e-12)]
        assert report["validation"]["overall"] is True
        assert report["direct_sum_verified"]["verified"] is True
        assert len(report["dense_spectrum"]) == 4
        assert len(report["block_spectrum"]["x_eigs"]) == 2

    def test_simply_separable_sample(self, run_command, analyze):
        output = run_command("generate", "family", dA=3, dB=3, seed=1, bias=0.0)
        report = analyze(output)
        assert report["negativity"] == 0.0
        assert report["classification"]["verdict"] == "PPT_SEPARABLE"

    def test_isotropic_is_dense(self, analyze):
        report = analyze({"kind": "isotropic", "dims": [3, 3], "payload": {"eps": 0.2}})
        assert report["block_spectrum"] is None
        assert report["direct_sum_verified"] is None
        assert len(report["dense_spectrum"]) == 9
        assert report["classification"]["reason"] == "WERNER"

    def test_dense_family_member_gets_block_spectrum(self, analyze, worked_example_rho):
        matrix = [[[z.real, z.imag] for z in row] for row in worked_example_rho]
        report = analyze({"kind": "dense", "dims": [4, 4], "payload": {"matrix": matrix}})
        assert report["block_spectrum"] is not None
        assert report["direct_sum_verified"]["verified"] is True
        assert report["classification"]["verdict"] == "PPT_UNDECIDED"

    def test_round_trip_gives_identical_report(self, run_command, worked_example_document):
        first = run_command("analyze", document=worked_example_document)
        again = render_document(parse_document(worked_example_document))
        assert run_command("analyze", document=again) == first

    def test_malformed_json(self, run_command):
        with pytest.raises(CommandError) as excinfo:
            run_command("analyze", document="{not json")
        assert excinfo.value.returncode == 2

    def test_invalid_document(self, run_command):
        with pytest.raises(CommandError) as excinfo:
            run_command("analyze", document={"kind": "dense", "dims": [2, 2], "payload": {}})
        assert excinfo.value.returncode == 2

    def test_missing_file(self, run_command, tmp_path):
        with pytest.raises(CommandError) as excinfo:
            run_command("analyze", input=str(tmp_path / "missing.json"))
        assert excinfo.value.returncode == 2

    def test_eigensolver_failure(self, run_command, monkeypatch):
        monkeypatch.setattr(hermitian_module, "JACOBI_MAX_SWEEPS", 0)
        with pytest.raises(CommandError) as excinfo:
            run_command("analyze", document=TWO_QUBIT)
        assert excinfo.value.returncode == 3

    def test_negative_tolerance(self, run_command):
        with pytest.raises(CommandError) as excinfo:
            run_command("analyze", document=TWO_QUBIT, tol=-1.0)
        assert excinfo.value.returncode == 2


class TestReorderCommand:
    def test_worked_example(self, run_command, worked_example_document, worked_example_params):
        report = json.loads(run_command("reorder", document=worked_example_document))
        assert report["permutation"] == [0, 5, 10, 15, 1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 13, 14]
        assert report["block_sizes"] == [4, 3, 1, 2, 2, 1, 3]
        assert report["block_check"] == {"is_block_diagonal": True, "max_off_block": 0.0}
        matrix = parse_document(json.dumps(report["document"])).density_matrix()
        np.testing.assert_array_equal(matrix[:4, :4], worked_example_params.X)

    def test_qubit_qutrit_sample(self, run_command):
        document = run_command("generate", "family", dA=2, dB=3, seed=3)
        report = json.loads(run_command("reorder", document=document))
        assert report["block_sizes"] == [2, 2, 1, 1]
        assert report["block_check"]["max_off_block"] == 0.0

    def test_non_family_input(self, run_command):
        with pytest.raises(CommandError) as excinfo:
            run_command(
                "reorder", document={"kind": "isotropic", "dims": [2, 2], "payload": {"eps": 0.5}}
            )
        assert excinfo.value.returncode == 2


class TestSweepCommand:
    def test_werner_two_qubit_threshold(self, run_command):
        rows = sweep_rows(run_command("sweep", "werner", d=2, eps_grid="-1:1/3:41"))
        assert len(rows) == 41
        for eps, min_pt, neg, verdict, _ in rows:
            if eps < -1 / 3 - 1e-9:
                assert min_pt < 0
                assert verdict == "NPT_ENTANGLED"
            elif eps > -1 / 3 + 1e-9:
                assert min_pt > 0
                assert neg == 0.0
                assert verdict == "PPT_SEPARABLE"
        singlet = rows[0]
        assert singlet[2] == pytest.approx(0.5, abs=1e-10)
        zero = min(rows, key=lambda row: abs(row[0]))
        assert zero[2] == 0.0

    def test_isotropic_crossing_and_validity(self, run_command):
        rows = sweep_rows(run_command("sweep", "isotropic", d=3, eps_grid="-1/2:1:13"))
        for eps, min_pt, _, verdict, min_state in rows:
            if eps < -1 / 8 - 1e-9:
                assert verdict == INVALID_STATE
                assert min_state < 0
            elif eps > 1 / 4 + 1e-9:
                assert verdict == "NPT_ENTANGLED"
            elif eps > -1 / 8 + 1e-9:
                assert min_pt >= -1e-12
                assert verdict == "PPT_SEPARABLE"

    def test_isotropic_validity_edge_is_ppt(self, run_command):
        rows = sweep_rows(run_command("sweep", "isotropic", d=3, eps_grid="-1/8:-1/8:1"))
        assert rows[0][4] == pytest.approx(0.0, abs=1e-12)
        assert rows[0][3] != INVALID_STATE

    def test_workers_keep_grid_order(self, run_command):
        serial = run_command("sweep", "werner", d=3, eps_grid="-1/2:1/4:25", workers=1)
        threaded = run_command("sweep", "werner", d=3, eps_grid="-1/2:1/4:25", workers=4)
        assert serial == threaded

    @pytest.mark.parametrize(
        "argv",
        [
            ["--d", "2", "--eps-grid", "-1:1/3:5"],
            ["--d", "2", "--eps-grid=-1:1/3:5"],
            ["--eps-grid", "-1:1/3:5", "--d", "2"],
        ],
    )
    def test_negative_grid_on_command_line(self, run_command, argv):
        rows = sweep_rows(run_command("sweep", "werner", *argv))
        assert [row[0] for row in rows] == pytest.approx([-1, -2 / 3, -1 / 3, 0, 1 / 3])
        assert rows[0][3] == "NPT_ENTANGLED"
        assert rows[-1][3] == "PPT_SEPARABLE"

    def test_negative_fraction_grid_on_command_line(self, run_command):
        rows = sweep_rows(run_command("sweep", "isotropic", "--d", "3", "--eps-grid", "-1/8:1:3"))
        assert [row[0] for row in rows] == pytest.approx([-1 / 8, 7 / 16, 1])

    @pytest.mark.parametrize("grid", ["a:b:3", "0:1", "0:1:0", "1/0:1:3"])
    def test_invalid_grid(self, run_command, grid):
        with pytest.raises(CommandError) as excinfo:
            run_command("sweep", "werner", d=2, eps_grid=grid)
        assert excinfo.value.returncode == 2

    def test_grid_parsing(self):
        np.testing.assert_allclose(parse_eps_grid("-1/3:1/3:3"), [-1 / 3, 0, 1 / 3], atol=1e-16)


class TestSettings:
    def test_only_pptkit_apps_installed(self, settings):
        assert settings.INSTALLED_APPS == [
            "rest_framework",
            "linalg",
            "states",
            "entanglement",
            "analysis",
        ]
        assert settings.DATABASES == {}

    def test_system_checks_pass(self):
        out = StringIO()
        call_command("check", stdout=out)
        assert "no issues" in out.getvalue()
