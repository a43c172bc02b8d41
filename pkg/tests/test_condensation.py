"""Kuo's four-point identity, the case dispatch, and the condensation
counting engine."""

from fractions import Fraction

import pytest

from conftest import brute_count, valid_specs
from douglastile.condensation import (
    BASE_TABLE,
    BaseCase,
    CornerQuad,
    CornersNotFound,
    canonical_spec,
    case_recurrence,
    condensation_count,
    kuo_counts,
    pick_corners,
    stats_deltas,
    trace_recurrence,
    verify_kuo,
)
from douglastile.matching import (
    MatchGraph,
    Vertex,
    canonical_embedding,
    dual_graph,
    reduce_forced,
)
from douglastile.regions import (
    RegionSpec,
    SpecInvalid,
    build_region,
    flipped,
    formula_count,
)

# dispatch fixtures: spec -> (case, normalized, flipped, sub-specs, multiplier)
# sub-spec counts were confirmed against brute force when frozen
DISPATCH = [
    ((3, (6,)), "I.1", (3, (6,)), False, ((2, (4,)), (2, (4,)), (1, (2,))), 2),
    ((4, (8,)), "I.1", (4, (8,)), False, ((3, (6,)), (3, (6,)), (2, (4,))), 2),
    (
        (3, (3, 4)),
        "I.1",
        (3, (3, 4)),
        False,
        ((2, (1, 4)), (2, (3, 2)), (1, (1, 2))),
        2,
    ),
    (
        (7, (4, 2, 5, 4)),
        "I.1",
        (7, (4, 2, 5, 4)),
        False,
        ((6, (2, 2, 5, 4)), (6, (4, 2, 5, 2)), (5, (2, 2, 5, 2))),
        2,
    ),
    (
        (4, (2, 5)),
        "I.2",
        (4, (2, 5)),
        False,
        ((2, (4,)), (3, (2, 3)), (1, (2,))),
        2,
    ),
    (
        (3, (5, 2)),
        "I.2",
        (4, (2, 5)),
        True,
        ((2, (4,)), (3, (2, 3)), (1, (2,))),
        2,
    ),
    (
        (3, (1, 2, 3)),
        "I.3",
        (3, (1, 2, 3)),
        False,
        ((3, (2, 3)), (2, (1, 2, 1)), (2, (2, 1))),
        2,
    ),
    (
        (3, (2, 2, 2)),
        "I.4",
        (3, (2, 2, 2)),
        False,
        ((1, (1, 2)), (2, (2, 1)), None),
        2,
    ),
    (
        (3, (1, 1, 2, 1, 1)),
        "I.5",
        (3, (1, 1, 2, 1, 1)),
        False,
        ((3, (1, 2, 1, 1)), (2, (1, 1, 2, 1)), (2, (1, 2, 1))),
        2,
    ),
    (
        (3, (1, 2, 2, 2)),
        "I.6",
        (3, (1, 2, 2, 2)),
        False,
        ((3, (2, 2, 2)), (2, (1, 2, 1)), (2, (2, 1))),
        2,
    ),
    ((1, (1, 2)), "II.1", (1, (1, 2)), False, ((1, (2,)),), 2),
    ((2, (2, 1)), "II.1", (1, (1, 2)), True, ((1, (2,)),), 2),
    (
        (2, (1, 1, 2, 1)),
        "II.2a",
        (2, (1, 1, 2, 1)),
        False,
        ((2, (1, 2, 1)), (1, (1, 1, 2)), (1, (1, 2))),
        2,
    ),
    (
        (2, (1, 4)),
        "II.2b(i)",
        (2, (1, 4)),
        False,
        ((2, (4,)), (1, (1, 2)), (1, (2,))),
        2,
    ),
    (
        (2, (1, 3, 2)),
        "II.2b(ii)",
        (2, (1, 3, 2)),
        False,
        ((2, (3, 2)), (1, (1, 2)), (1, (2,))),
        2,
    ),
    ((2, (3, 2)), "II.2b(iii)", (2, (3, 2)), False, ((1, (1, 2)),), 4),
    ((3, (2, 3)), "II.2b(iii)", (2, (3, 2)), True, ((1, (1, 2)),), 4),
]


def test_base_table_against_brute_force():
    assert len(BASE_TABLE) == 7
    for spec, count in BASE_TABLE.items():
        assert brute_count(spec) == count


def test_smallest_specs_raise_base_case():
    # the table entries the dispatch refuses to split further; the other
    # table specs still classify, the counting engine just never recurses
    # into them because the memo consults the table first
    for raw in [(1, (2,)), (2, (4,)), (2, (1, 2, 1))]:
        spec = RegionSpec(*raw)
        with pytest.raises(BaseCase) as err:
            case_recurrence(spec)
        assert err.value.spec == spec
        assert err.value.count == BASE_TABLE[spec]


@pytest.mark.parametrize(
    "raw,case_id,norm,flip,subs,multiplier",
    DISPATCH,
    ids=[f"{a}:{d}" for (a, d), *_ in DISPATCH],
)
def test_case_dispatch(raw, case_id, norm, flip, subs, multiplier):
    rec = case_recurrence(RegionSpec(*raw))
    assert rec.case_id == case_id
    assert (rec.normalized.side, rec.normalized.distances) == norm
    assert rec.was_flipped == flip
    got = tuple(
        None if g is None else (g.side, g.distances) for g in rec.subspecs
    )
    assert got == subs
    assert rec.multiplier == multiplier


@pytest.mark.parametrize(
    "raw,case_id,norm,flip,subs,multiplier",
    [row for row in DISPATCH if sum(row[0][1]) <= 9],
    ids=[f"{a}:{d}" for (a, d), *_ in DISPATCH if sum(d) <= 9],
)
def test_dispatch_identity_by_brute_force(
    raw, case_id, norm, flip, subs, multiplier
):
    counts = [brute_count(None if s is None else RegionSpec(*s)) for s in subs]
    full = brute_count(RegionSpec(*raw))
    if len(counts) == 1:
        assert full == multiplier * counts[0]
    else:
        assert full * counts[2] == 2 * counts[0] * counts[1]


def test_every_valid_spec_is_classified():
    for spec in valid_specs(10):
        try:
            rec = case_recurrence(spec)
        except BaseCase:
            continue
        parent = rec.normalized
        for sub in rec.subspecs:
            if sub is None:
                continue
            assert sub.total < parent.total or len(sub.distances) < len(
                parent.distances
            )
            # sub-specs are themselves valid regions
            build_region(sub.side, sub.distances)


def test_case_recurrence_rejects_invalid_spec():
    with pytest.raises(SpecInvalid):
        case_recurrence(RegionSpec(1, (3,)))
    with pytest.raises(SpecInvalid):
        condensation_count(RegionSpec(2, (2,)))


def test_canonical_spec_pairs_flips():
    for spec in valid_specs(8):
        canon, was_flipped = canonical_spec(spec)
        other, _ = canonical_spec(flipped(spec))
        assert canon == other
        assert canon in (spec, flipped(spec))
        assert was_flipped == (canon != spec)


def test_condensation_matches_brute_force_to_t8():
    for spec in valid_specs(8):
        assert condensation_count(spec) == brute_count(spec)


def test_condensation_deep_spec():
    assert condensation_count(RegionSpec(7, (4, 2, 5, 4))) == 2**29


def test_condensation_memo_is_populated():
    memo = {}
    spec = RegionSpec(3, (1, 2, 3))
    count = condensation_count(spec, memo)
    assert count == 128
    canon, _ = canonical_spec(spec)
    assert memo[canon] == 128
    # repeated call resolves from the same table
    assert condensation_count(spec, memo) == 128


def test_pick_corners_on_duals():
    for spec in valid_specs(6):
        g = dual_graph(build_region(spec.side, spec.distances))
        quad = pick_corners(g)
        assert g.vertex(quad.west).part == "black"
        assert g.vertex(quad.east).part == "black"
        assert g.vertex(quad.south).part == "white"
        assert g.vertex(quad.north).part == "white"
        assert len({quad.west, quad.south, quad.east, quad.north}) == 4


def test_pick_corners_needs_both_classes():
    lonely = MatchGraph(
        (Vertex(0, "black", Fraction(0), Fraction(0)),), ()
    )
    with pytest.raises(CornersNotFound):
        pick_corners(lonely)


def test_kuo_identity_exact_on_duals():
    for spec in valid_specs(6):
        g = dual_graph(build_region(spec.side, spec.distances))
        quad = pick_corners(g)
        c = kuo_counts(g, quad)
        assert set(c) == {
            "full",
            "minus_all",
            "minus_west_south",
            "minus_east_north",
            "minus_north_west",
            "minus_south_east",
        }
        assert (
            c["full"] * c["minus_all"]
            == c["minus_west_south"] * c["minus_east_north"]
            + c["minus_north_west"] * c["minus_south_east"]
        )
        assert verify_kuo(g)
        assert verify_kuo(g, quad)


def test_corner_deletion_reproduces_first_subregion():
    # deleting the west and south corners and stripping forced edges
    # leaves exactly the dual of the first sub-spec, weight untouched
    checked = 0
    for spec in valid_specs(8):
        try:
            rec = case_recurrence(spec)
        except BaseCase:
            continue
        if rec.case_id != "I.1" or rec.was_flipped:
            continue
        g = dual_graph(build_region(spec.side, spec.distances))
        quad = pick_corners(g)
        reduced, mult = reduce_forced(g.without((quad.west, quad.south)))
        sub = rec.subspecs[0]
        sub_dual = dual_graph(build_region(sub.side, sub.distances))
        assert mult == 1
        assert canonical_embedding(reduced) == canonical_embedding(sub_dual)
        checked += 1
    assert checked >= 3


def test_stats_deltas_layer_reading_and_balance():
    checked = 0
    for spec in valid_specs(10):
        try:
            rec = case_recurrence(spec)
        except BaseCase:
            continue
        if not rec.case_id.startswith("I."):
            continue
        deltas = stats_deltas(spec)
        assert deltas["balance_ok"]
        assert all(deltas["agreement"]["by_layer_count"])
        checked += 1
    assert checked > 400


def test_stats_deltas_rejects_case_two():
    with pytest.raises(ValueError):
        stats_deltas(RegionSpec(1, (1, 1, 1, 2)))


def test_trace_recurrence_structure():
    # the walk records canonical forms, so the root is the flip companion
    spec = RegionSpec(4, (2, 5))
    trace = trace_recurrence(spec)
    assert trace[0]["spec"] == {"a": 3, "d": [5, 2]}
    assert trace[0]["case"] == "I.2"
    assert trace[0]["flipped"] is True
    assert trace[0]["count"] == condensation_count(spec)
    cases = {node["case"] for node in trace}
    assert "base" in cases
    for node in trace:
        if node["case"] == "base":
            assert (
                BASE_TABLE[
                    RegionSpec(node["spec"]["a"], tuple(node["spec"]["d"]))
                ]
                == node["count"]
            )
        else:
            assert "identity" in node
            assert len(node["sub_counts"]) == len(node["subs"])


def test_condensation_agrees_with_formula_on_deeper_specs():
    for raw in [(5, (10,)), (4, (3, 3, 4)), (5, (1, 2, 2, 2, 2, 2))]:
        spec = RegionSpec(raw[0], raw[1])
        region = build_region(spec.side, spec.distances)
        assert condensation_count(spec) == formula_count(region)
