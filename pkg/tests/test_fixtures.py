import json
import shutil

import pytest

from almost_affine.cartan import EVEN, ODD, CartanPair, canonical_form, is_symmetrizable, principal_delete
from almost_affine.catalog import NotApplicable, classify_blocks, even_part
from almost_affine.fixtures import (
    ENV_VAR,
    FixtureCorrupt,
    fixture_dir,
    load_fixture,
    manifest,
    restore_summands,
    symmetrizable_mismatches,
    verify_fixture,
)
from almost_affine.search import ALMOST_AFFINE, EnumerationResult, almost_affine_class_test, enumerate_classes
from shared import fixture


def test_counts():
    sup, even = fixture("super"), fixture("even")
    assert len(sup) == 138 and len(even) == 238
    sizes = [sum(e.size == n for e in sup) for n in range(3, 11)]
    assert sizes == [86, 31, 10, 7, 1, 1, 1, 1]
    sizes = [sum(e.size == n for e in even) for n in range(3, 11)]
    assert sizes == [123, 53, 22, 22, 4, 5, 5, 4]
    assert manifest()["fixtures"]["super"]["count"] == 138


def test_parametric_entries():
    par = [e for e in fixture("super") if e.parametric]
    assert [e.label for e in par] == ["NS3_82", "NS3_83", "NS3_84", "NS3_85", "NS3_86"]
    ns82 = par[0]
    assert ns82.constraint == (5, 11, 5) and len(ns82.matrices) == 4


@pytest.mark.xfail(strict=True, reason="S3_35 carries an S prefix but its matrix is not symmetrizable")
def test_symmetrizable_prefixes():
    assert symmetrizable_mismatches(fixture("super")) == []


def test_only_s3_35_disagrees_with_its_prefix():
    assert symmetrizable_mismatches(fixture("super")) == ["S3_35"]
    assert symmetrizable_mismatches(fixture("even")) == []
    m = next(e for e in fixture("super") if e.label == "S3_35").matrices[0].matrix
    # a symmetrizable matrix has equal products around the cycle in both directions
    assert m[0][1] * m[1][2] * m[2][0] != m[1][0] * m[2][1] * m[0][2]


def test_even_symmetrizable_count():
    assert sum(is_symmetrizable(e.matrices[0]) for e in fixture("even")) == 142


def test_every_entry_is_an_almost_affine_class(catalog):
    for name in ("super", "even"):
        for e in fixture(name):
            v = almost_affine_class_test(e.matrices[0], catalog)
            assert v.status == ALMOST_AFFINE, e.label


def test_printed_matrices_share_a_class(catalog):
    for e in fixture("super"):
        if len(e.matrices) < 2:
            continue
        v = almost_affine_class_test(e.matrices[0], catalog)
        for p in e.matrices[1:]:
            assert set(almost_affine_class_test(p, catalog).orbit.members) == set(v.orbit.members)


def test_restore_summands(cat3):
    # deleting the centre of a star leaves three isolated nodes that the tables omit
    star = CartanPair.make([[2, -1, 0, 0], [-1, 1, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
                           [EVEN, ODD, EVEN, EVEN])
    blocks = classify_blocks(principal_delete(star, 1), cat3)
    assert restore_summands([], blocks) == ["A_1", "A_1", "A_1"]
    p = CartanPair.make([[2, -1, 0], [-2, 2, -1], [0, -1, 1]], [EVEN, EVEN, ODD])
    blocks = classify_blocks(principal_delete(p, 1), cat3)
    assert restore_summands([], blocks) == ["A_1", "osp(1|2)"]


def test_corrupt_checksum(tmp_path):
    d = tmp_path / "data"
    shutil.copytree(fixture_dir(), d)
    with open(d / "super.jsonl", "a") as fp:
        fp.write("\n")
    with pytest.raises(FixtureCorrupt):
        load_fixture("super", d)
    assert len(load_fixture("even", d)) == 238


def test_missing_manifest(tmp_path):
    with pytest.raises(FixtureCorrupt):
        load_fixture("super", tmp_path)
    with pytest.raises(ValueError):
        load_fixture("odd")


def test_environment_override(tmp_path, monkeypatch):
    d = tmp_path / "data"
    shutil.copytree(fixture_dir(), d)
    m = json.loads((d / "manifest.json").read_text())
    m["fixtures"]["even"]["count"] = 1
    (d / "manifest.json").write_text(json.dumps(m))
    monkeypatch.setenv(ENV_VAR, str(d))
    assert fixture_dir() == d
    with pytest.raises(FixtureCorrupt):
        load_fixture("even")


def test_empty_result_reports_everything_missing():
    r = verify_fixture(EnumerationResult(4, "super", []), fixture("super"))
    assert not r.ok
    assert len(r.missing) == 31 and r.matched == []


@pytest.mark.parametrize("mode,name,count", [("super", "super", 10), ("even", "even", 22)])
def test_verify_size5(mode, name, count):
    r = verify_fixture(enumerate_classes(5, mode), fixture(name))
    assert r.ok, r.to_doc()
    assert len(r.matched) == count


def test_verify_detects_a_dropped_class():
    res = enumerate_classes(5, "even")
    short = EnumerationResult(5, "even", res.classes[1:])
    r = verify_fixture(short, fixture("even"))
    assert len(r.missing) == 1 and not r.extra


def test_even_parts_of_printed_entries():
    # 133 entries have no zero on the diagonal, but several double to the same
    # even matrix, e.g. the all-black triangle and two of its neighbours
    even = {canonical_form(p) for e in fixture("even") for p in e.matrices}
    parts = {}
    for e in fixture("super"):
        try:
            q = canonical_form(even_part(e.matrices[0]))
        except NotApplicable:
            continue
        parts.setdefault(q, []).append(e.label)
    assert sum(len(v) for v in parts.values()) == 133
    assert len(parts) == 96 and set(parts) <= even
    assert ["S3_38", "S3_45", "S3_46"] in parts.values()
