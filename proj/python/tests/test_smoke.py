import json
import pathlib

import pytest

import hdisp

FX = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def load(name):
    return json.loads((FX / name).read_text())


def test_ring_info():
    assert hdisp.ring_info(load("f3_eps.json")) == {"size": 9, "dim": 2, "nilpotency": 2}


def test_witt_add_carries():
    # over F_3, [2] = -1, so 1 + 1 = [2] + 3 = (2, 1) and 1 + [2] = 0
    assert hdisp.witt("add", {"p": 3}, 2, [1, 0], [1, 0]) == [{"1": "2"}, {"1": "1"}]
    assert hdisp.witt("add", {"p": 3}, 2, [1, 0], [2, 0]) == [{}, {}]


@pytest.mark.parametrize("name", ["frame_witt_f3.json", "frame_zip_f3.json", "frame_relative_eps.json"])
def test_frame_axioms(name):
    r = hdisp.frame_check(load(name))
    assert r["ok"] and all(c["ok"] for c in r["checks"])


def test_classify():
    r = hdisp.classify(load("frame_zip_f3.json"), [1, 0])
    assert len(r["sizes"]) == 6 and sum(r["sizes"]) == r["total"]


def test_zip_roundtrip():
    assert hdisp.zip_roundtrip(load("display_zip_f3.json"))


def test_k3():
    d = load("k3_f3.json")
    assert hdisp.is_orthogonal(d)
    out = hdisp.k3_deformations(d, load("ext_eps.json"))
    assert len(out) == 9
    assert len({json.dumps(x["phi"], sort_keys=True) for x in out}) == 9


def test_errors():
    with pytest.raises(hdisp.HdispError, match="schema"):
        hdisp.ring_info({"q": 3})
    with pytest.raises(hdisp.HdispError):
        hdisp.witt("add", {"p": 3}, 2, [1, 0, 0], [0, 0])
