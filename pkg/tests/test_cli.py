import json
import math
from dataclasses import dataclass

import pytest

from closed_range.cli import RunConfig, _config_fields, build_parser, run
from closed_range.config import BETA_NET_R_LIMIT, BETA_NET_SEPARATION
from closed_range.criteria.lemma import ExceptionalKind, ExceptionalMass
from closed_range.models import DensityVerdict, SpaceKind, SpaceSpec, Verdict
from closed_range.report import Timings, build_document, dumps, profile_csv, to_jsonable
from closed_range.symbols import Polynomial

SMALL = ["--levels", "8", "--angular-base", "16", "--beta-separation", "0.6",
         "--beta-r-limit", "0.9", "-q"]
DENSITY = ["check-density", "--canonical", "three_plus_z_quarter", "--c-grid", "0.25",
           "--eta-grid", "0.5", "--separation", "0.6", "--r-limit", "0.984375", "-q"]


def _run_json(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    assert code == 0, err
    return json.loads(out)


def test_norm_besov(capsys):
    doc = _run_json(["norm", "--f", "canonical:z", "--space", "besov", "--p", "3"] + SMALL,
                    capsys)
    assert doc["command"] == "norm"
    assert doc["results"]["value"] == pytest.approx(0.5 ** (1 / 3), rel=1e-3)
    assert doc["results"]["space"]["label"] == "B^3"
    assert set(doc) == {"schema", "command", "config", "inputs", "results", "timings"}


def test_malformed_symbol_exits_2_with_the_node_path(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "sum", "children": [
        {"kind": "const", "value": 1.0},
        {"kind": "rational", "num": [1.0], "den": [0.5, -1.0]},
    ]}))
    assert run(["norm", "--f", str(path), "--space", "besov"] + SMALL) == 2
    assert "$.children[1].den" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv, needle",
    [
        (["lemma-check", "-q"], "seed"),
        (["report", "--canonical", "z", "-q"], "seed"),
        (["norm", "--f", "canonical:z", "-q"], "space"),
        (["norm", "--f", "canonical:z", "--space", "besov", "--angular-base", "12", "-q"],
         "angular_base"),
        (["norm", "--f", "canonical:z", "--space", "hardy", "--format", "csv", "-q"], "csv"),
        (["lower-bound", "--canonical", "z", "--space", "besov", "--family", "random", "-q"],
         "seed"),
        (["norm", "--f", "canonical:z", "--space", "besov", "--p", "1", "-q"], "p must"),
    ],
)
def test_invalid_configuration_exits_2(argv, needle, capsys):
    assert run(argv) == 2
    assert needle in capsys.readouterr().err


def test_argparse_errors_exit_2(capsys):
    assert run(["frobnicate"]) == 2
    assert run(["norm", "--g", "canonical:z"]) == 2


def test_cell_cap_is_a_numerical_failure(capsys):
    argv = ["norm", "--f", "canonical:z", "--space", "besov", "--cell-cap", "100", "-q"]
    assert run(argv) == 3
    assert "cap" in capsys.readouterr().err


def test_check_density_holds(capsys):
    doc = _run_json(DENSITY, capsys)
    result = doc["results"]
    assert result["verdict"] == "holds"
    assert "profile" not in result
    assert result["profile_size"] == result["net_size"]
    assert doc["config"]["g"] == "canonical:three_plus_z_quarter"


def test_check_density_csv_profile(tmp_path, capsys):
    out = tmp_path / "profile.csv"
    assert run(DENSITY + ["--format", "csv", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "a_re,a_im,ratio"
    assert float(lines[1].split(",")[2]) == pytest.approx(1.0)


def _strip_timings(doc: dict) -> dict:
    doc = dict(doc)
    doc.pop("timings")
    return doc


def test_worker_count_does_not_change_results(capsys):
    argv = ["lower-bound", "--canonical", "three_plus_z_quarter", "--space", "calderon",
            "--alpha-angles", "4", "--alpha-depth", "3"] + SMALL
    serial = _run_json(argv + ["--workers", "1"], capsys)
    threaded = _run_json(argv + ["--workers", "4"], capsys)
    assert "workers" not in serial["config"]
    assert _strip_timings(serial) == _strip_timings(threaded)
    assert serial["results"]["inf_ratio"] >= 0.5 - 1e-9


@pytest.mark.slow
def test_report_is_deterministic(tmp_path, capsys):
    argv = ["report", "--canonical", "three_plus_z_quarter", "--seed", "7", "--samples", "3",
            "--c-grid", "0.25", "--eta-grid", "0.5", "--separation", "0.6", "--r-limit", "0.9",
            ] + SMALL
    first = _run_json(argv, capsys)
    second = _run_json(argv, capsys)
    assert _strip_timings(first) == _strip_timings(second)
    assert first["results"]["cross_validation"]["density"]["verdict"] == "holds"


def test_run_config_rejects_unknown_fields():
    with pytest.raises(ValueError):
        RunConfig(command="norm", f="canonical:z", space="besov", colour="blue")


def test_parser_maps_canonical_onto_g():
    args = build_parser().parse_args(["check-density", "--canonical", "z"])
    assert args.canonical == "z" and args.g is None


# report serialization


def test_to_jsonable_handles_numbers_and_enums():
    assert to_jsonable(1 + 2j) == [1.0, 2.0]
    assert to_jsonable(math.inf) == "inf"
    assert to_jsonable(Verdict.FAILS) == "fails"
    assert to_jsonable(Polynomial((0.0, 1.0))) == {"kind": "polynomial",
                                                   "coeffs": [[0.0, 0.0], [1.0, 0.0]]}
    assert to_jsonable(SpaceSpec(SpaceKind.BMOA))["label"] == "BMOA"
    with pytest.raises(TypeError):
        to_jsonable(object())


def test_to_jsonable_exports_public_properties():
    out = to_jsonable(ExceptionalMass(numerator=1.0, denominator=4.0, beta_prime=0.6))
    assert out == {"numerator": 1.0, "denominator": 4.0, "beta_prime": 0.6, "ratio": 0.25}

    @dataclass
    class Record:
        kind: ExceptionalKind
        _cache: int = 0

    assert to_jsonable(Record(ExceptionalKind.B)) == {"kind": "B"}


def test_density_profile_is_left_to_the_csv():
    verdict = DensityVerdict(verdict=Verdict.HOLDS, best_c=0.5, best_eta=0.5,
                             achieved_delta=1.0, worst_center=0.25j,
                             profile=[(0j, 1.0), (0.5 + 0j, 1.0)])
    out = to_jsonable(verdict)
    assert out["profile_size"] == 2 and "profile" not in out
    assert out["worst_center"] == [0.0, 0.25]
    assert profile_csv(verdict.profile).splitlines() == [
        "a_re,a_im,ratio", "0.0,0.0,1.0", "0.5,0.0,1.0",
    ]


def test_documents_dump_with_sorted_keys():
    timings = Timings()
    with timings.phase("total"):
        pass
    doc = build_document("norm", {"b": 1, "a": 2}, {}, {"value": 1.5}, timings)
    text = dumps(doc)
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert doc["timings"]["total"] >= 0.0


def test_density_and_beta_nets_are_configured_separately():
    args = build_parser().parse_args(
        ["norm", "--f", "canonical:z", "--space", "bmoa", "--levels", "6",
         "--angular-base", "16", "--separation", "0.6", "--r-limit", "0.9",
         "--beta-separation", "0.5", "--beta-r-limit", "0.75"]
    )
    cfg = RunConfig(**_config_fields(args))
    net = cfg.norm_settings(BETA_NET_SEPARATION, BETA_NET_R_LIMIT, 64).beta_net
    assert (net.separation, net.r_limit) == (0.5, 0.75)
    assert (cfg.separation, cfg.r_limit) == (0.6, 0.9)

    density_only = RunConfig(command="norm", f="canonical:z", space="bmoa", levels=6,
                             angular_base=16, separation=0.6, r_limit=0.9)
    net = density_only.norm_settings(BETA_NET_SEPARATION, BETA_NET_R_LIMIT, 64).beta_net
    assert (net.separation, net.r_limit) == (BETA_NET_SEPARATION, BETA_NET_R_LIMIT)
