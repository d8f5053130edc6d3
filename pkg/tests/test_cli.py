import json
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from bpsinv.cli import main
from bpsinv.exactq import qq
from bpsinv.serialize import (
    dumps, genfun_to_obj, genfun_from_obj, qseries_to_obj, qseries_from_obj,
)
from bpsinv.series import QSeries, VPoly, WRat


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_p2_rank1_json(capsys):
    code, out, _ = run_cli(
        ["compute", "--surface", "p2", "--rank", "1", "--c1", "0",
         "--qorders", "3", "--format", "json"], capsys)
    assert code == 0
    obj = json.loads(out)
    rows = {r["c2"]: r for r in obj["table"]["rows"]}
    assert rows[1]["euler"] == 3
    assert obj["genfun"]["series"]["terms"][0][0] == "-1/8"


def test_compute_hirzebruch_rank1_text(capsys):
    code, out, _ = run_cli(
        ["compute", "--surface", "hirzebruch:1", "--rank", "1", "--c1",
         "0,0", "--qorders", "2"], capsys)
    assert code == 0
    assert "euler" in out


def test_compute_rank2_wallcrossed_csv(capsys):
    code, out, _ = run_cli(
        ["compute", "--surface", "hirzebruch:0", "--rank", "2", "--c1",
         "0,1", "--polarization", "13,9", "--qorders", "2",
         "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines()[0].startswith("c2,delta,dim,euler")


def test_invalid_inputs_exit_2(capsys):
    assert run_cli(["compute", "--surface", "p3", "--rank", "1",
                    "--c1", "0"], capsys)[0] == 2
    assert run_cli(["compute", "--surface", "p2", "--rank", "1",
                    "--c1", "0,0"], capsys)[0] == 2
    assert run_cli(["compute", "--surface", "p2", "--rank", "9",
                    "--c1", "0"], capsys)[0] == 2
    assert run_cli(["compute", "--surface", "hirzebruch:1", "--rank", "2",
                    "--c1", "0,0", "--polarization", "0,1"], capsys)[0] == 2


def test_check_core_suite(capsys):
    code, out, _ = run_cli(["check", "--suite", "core", "--format", "json"],
                           capsys)
    assert code == 0
    assert json.loads(out)["results"][0]["ok"] is True


def test_cache_warm_is_bit_identical(tmp_path, capsys):
    args = ["compute", "--surface", "p2", "--rank", "1", "--c1", "0",
            "--qorders", "2", "--format", "json",
            "--cache-dir", str(tmp_path)]
    code1, out1, _ = run_cli(args, capsys)
    code2, out2, _ = run_cli(args, capsys)
    assert code1 == code2 == 0
    assert out1 == out2
    assert list(tmp_path.glob("*.json"))


@st.composite
def rand_series(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 4))):
        e = qq(draw(st.integers(-8, 12)), draw(st.sampled_from([1, 3, 8, 24])))
        num = VPoly({draw(st.integers(-4, 4)): draw(st.integers(-5, 5))})
        den = VPoly({0: 1, draw(st.integers(1, 3)): draw(st.integers(0, 2))})
        terms[e] = WRat(num, den)
    cut = draw(st.one_of(st.none(), st.integers(13, 20)))
    return QSeries(terms, None if cut is None else qq(cut))


@settings(max_examples=150, deadline=None)
@given(rand_series())
def test_serialization_round_trip(s):
    obj = qseries_to_obj(s)
    back = qseries_from_obj(json.loads(json.dumps(obj)))
    assert back == s
    assert dumps(qseries_to_obj(back)) == dumps(obj)
