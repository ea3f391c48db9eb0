"""Catalog integrity, the Weyl degree tables against a brute-force
enumeration oracle, frozen instance data, and the directory override."""

from __future__ import annotations

import json
import math

import pytest

from hopfmotives import catalog
from hopfmotives.algebra import borel_normalize
from hopfmotives.jinv import fpoin
from hopfmotives.motdec import twist_multiset


def test_inventory():
    keys = catalog.keys()
    assert len(keys) >= 12
    assert len(set(keys)) == len(keys)
    for key in keys:
        assert catalog.describe(key)
        assert catalog.kind(key) in ("bialgebra", "comodule")


def test_every_entry_verifies():
    for key in catalog.keys():
        obj = catalog.get(key)          # get() verifies on first access
        assert obj.verify(), key


def test_unknown_key():
    with pytest.raises(ValueError, match="unknown catalog key"):
        catalog.get("so15.mod2")
    with pytest.raises(ValueError, match="unknown catalog key"):
        catalog.describe("zz")


def test_e8_mod2_presentation():
    B = catalog.get("e8.mod2")
    assert [(g.name, g.degree, g.truncation) for g in B.generators] == \
        [("e_3", 3, 8), ("e_5", 5, 4), ("e_9", 9, 2), ("e_15", 15, 2)]
    assert B.dimension() == 128


def test_so_entries_keep_their_rewrite_rules():
    B = catalog.get("so13.mod2")
    assert len(B.rules) == 3
    assert borel_normalize(B).dimension() == B.dimension()


# ---------------------------------------------------------------------------
# Weyl degree tables against brute-force enumeration
# ---------------------------------------------------------------------------

from _weyl_oracle import SMALL_RANK_TYPES, length_histogram


@pytest.mark.parametrize("series,rank", SMALL_RANK_TYPES)
def test_weyl_poincare_matches_enumeration(series, rank):
    hist = length_histogram(series, rank)
    poly = catalog.weyl_poincare(series, rank)
    assert hist == {i: c for i, c in enumerate(poly.coeffs) if c}
    assert sum(hist.values()) == catalog.weyl_order(series, rank)


def test_degree_products_match_orders():
    for series, rank in SMALL_RANK_TYPES + [("E", 6), ("E", 7), ("E", 8),
                                            ("B", 6), ("D", 6), ("A", 8)]:
        degrees = catalog.weyl_degrees(series, rank)
        assert math.prod(degrees) == catalog.weyl_order(series, rank)
        assert catalog.weyl_poincare(series, rank)(1) == math.prod(degrees)


def test_weyl_order_e8():
    assert catalog.weyl_order("E", 8) == 696729600


def test_weyl_rejects_unknown_types():
    with pytest.raises(ValueError):
        catalog.weyl_degrees("E", 9)
    with pytest.raises(ValueError):
        catalog.weyl_degrees("H", 3)
    with pytest.raises(ValueError):
        catalog.weyl_degrees("A", 0)


# ---------------------------------------------------------------------------
# frozen decomposition inputs
# ---------------------------------------------------------------------------

def test_vishik_edge_tables():
    assert catalog.vishik_edges(6) == ((0, 3), (1, 4), (2, 5), ("3'", 6))
    assert len(catalog.vishik_edges(8)) == 5
    assert len(catalog.vishik_edges(10)) == 6
    with pytest.raises(ValueError):
        catalog.vishik_edges(12)


def test_jtuple_instances_divide_their_flag_polynomials():
    for inst in catalog.jtuple_instances():
        B = catalog.get(inst.key)
        if B.rules:
            B = borel_normalize(B)
        poly = fpoin(B, inst.jtuple)
        twists = twist_multiset(catalog.weyl_poincare(inst.series, inst.rank),
                                poly)
        assert all(v > 0 for v in twists.values()), inst
        assert sum(twists.values()) * poly(1) == \
            catalog.weyl_order(inst.series, inst.rank), inst


# ---------------------------------------------------------------------------
# directory override
# ---------------------------------------------------------------------------

def test_directory_override_adds_and_replaces(tmp_path, monkeypatch):
    from hopfmotives.algebra import bialgebra_to_dict

    data = bialgebra_to_dict(catalog.get("g2.mod2"))
    data["generators"] = [{"name": "e_3", "degree": 3, "truncation": 4}]
    (tmp_path / "g2.mod2.json").write_text(json.dumps(data))
    (tmp_path / "extra.entry.json").write_text(
        json.dumps(bialgebra_to_dict(catalog.get("k0.pgl2"))))

    monkeypatch.setenv(catalog.ENV_DIR, str(tmp_path))
    monkeypatch.setattr(catalog, "_cache", {})

    keys = catalog.keys()
    assert "extra.entry" in keys
    assert catalog.kind("extra.entry") == "bialgebra"
    assert "external" in catalog.describe("extra.entry")

    B = catalog.get("g2.mod2")
    assert B.generators[0].truncation == 4      # the file won
    assert catalog.get("extra.entry").dimension() == 2


def test_directory_override_still_verifies(tmp_path, monkeypatch):
    from hopfmotives.algebra import bialgebra_to_dict

    data = bialgebra_to_dict(catalog.get("e8.mod3"))
    # break coassociativity-by-counit: drop a primitive term
    data["coproducts"]["e_4"] = data["coproducts"]["e_4"][:1]
    (tmp_path / "broken.json").write_text(json.dumps(data))
    monkeypatch.setenv(catalog.ENV_DIR, str(tmp_path))
    monkeypatch.setattr(catalog, "_cache", {})
    with pytest.raises(ValueError, match="fails verification"):
        catalog.get("broken")


def test_directory_override_bad_json(tmp_path, monkeypatch):
    from hopfmotives.algebra import SchemaError

    (tmp_path / "junk.json").write_text("{nope")
    monkeypatch.setenv(catalog.ENV_DIR, str(tmp_path))
    monkeypatch.setattr(catalog, "_cache", {})
    with pytest.raises(SchemaError):
        catalog.get("junk")
