import itertools
from math import comb

import pytest

from matroidh.errors import BoundExceeded, InvalidSpec
from matroidh.matroid_ops import ClassSpec, build_delta_t, canonical_form, lift, simplify
from matroidh.verify_enum import (
    brute_force_class_counts,
    default_grid,
    delta_t_members,
    enumerate_class,
    recursion_violations,
    run_grid,
    run_suite,
    simple_matroids,
    structure_matches,
    verify_minmax,
    verify_recursion,
    verify_stanley,
    verify_switch,
    verify_type_bounds,
)


def compositions(n):
    """Sorted size vectors with sum n."""
    out = set()
    for p in range(1, n + 1):
        for a in itertools.product(range(1, n + 1), repeat=p):
            if sum(a) == n:
                out.add(tuple(sorted(a)))
    return sorted(out)


# -- enumeration ----------------------------------------------------------------------

def test_enumeration_examples():
    assert len(enumerate_class(2, (1, 2, 2))) == 1
    assert len(enumerate_class(3, (2, 1, 3))) == 1
    members = enumerate_class(3, (1, 1, 1, 1))
    assert sorted(len(m.complex.facets) for m in members) == [3, 4]


def test_labeled_counts():
    assert len(enumerate_class(3, (1, 1, 1, 1), labeled=True)) == 5
    assert len(simple_matroids(3, 5)) == 31


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        enumerate_class(3, (1,) * 7)
    with pytest.raises(BoundExceeded):
        enumerate_class(2, (1,) * 4, max_p=3)


def test_enumeration_is_sound():
    for d, a in default_grid(max_d=3, max_p=5, max_a=2):
        for m in enumerate_class(d, a):
            assert structure_matches(m, a)
            assert m.d == d


@pytest.mark.parametrize("n, d", [(3, 2), (4, 2), (5, 2), (6, 2), (4, 3), (5, 3), (5, 4)])
def test_enumeration_matches_brute_force(n, d):
    counts = brute_force_class_counts(n, d)
    for a in compositions(n):
        if len(a) < d:
            assert a not in counts
            continue
        assert len(enumerate_class(d, a)) == counts.get(a, 0), a


def test_lift_simplify_round_trip():
    for d in (2, 3):
        for p in range(d, 6):
            for bases in simple_matroids(d, p):
                m = lift(bases, tuple(range(1, p + 1)))
                si, sizes = simplify(m)
                assert set(si.complex.facets) == set(bases)
                assert sizes == tuple(range(1, p + 1))


def test_default_grid_shape():
    grid = default_grid()
    assert len(grid) == 99
    assert (4, (1,) * 5) in grid
    assert all(2 <= d <= 3 and d <= len(a) <= 5 and max(a) <= 3 for d, a in grid[:-1])
    assert len(default_grid(extras=False)) == 98


def test_delta_t_members_labels():
    fam = delta_t_members(3, (1, 1, 1, 1))
    assert sorted({t for v in fam.values() for t, _ in v}) == [0, 1]
    assert len(fam) == 2


# -- suites --------------------------------------------------------------------------------

def test_minmax_example():
    rep = verify_minmax(3, (1, 1, 1, 1))
    assert rep.clean and rep.count_iso == 2
    assert sorted(tuple(r["h"]) for r in rep.rows) == [(1, 2), (1, 3)]
    flags = {tuple(r["h"]): (r["is_min"], r["is_max"]) for r in rep.rows}
    assert flags == {(1, 2): (True, False), (1, 3): (False, True)}


def test_minmax_singleton_class():
    rep = verify_minmax(2, (3, 3, 4, 5))
    assert rep.clean and rep.count_iso == 1
    assert rep.rows[0]["is_min"] and rep.rows[0]["is_max"]


def test_recursion_example_on_k23():
    m = enumerate_class(2, (2, 3))[0]
    assert recursion_violations(m) == []
    rep = verify_recursion(2, (2, 3))
    assert rep.clean and rep.rows[0]["h"] == [1, 2, 2, 1]


def test_recursion_skips_cone_vertices():
    m = build_delta_t(ClassSpec(3, (1, 1, 1, 1), 1))
    assert recursion_violations(m) == []


def test_switch_example():
    rep = verify_switch(3, (1, 1, 1, 2))
    assert rep.clean and rep.count_labeled > 0
    assert rep.rows[0]["switches_checked"] > 0


def test_switch_vacuous_for_p_equal_d():
    rep = verify_switch(3, (1, 2, 3))
    assert rep.clean and rep.rows == []


def test_stanley_example():
    rep = verify_stanley(3, (1, 1, 1, 1))
    assert rep.clean
    assert all(r["verdict"] == "pure" and r["witness_source"] == "gamma_t" for r in rep.rows)


def test_stanley_uses_search_outside_the_family():
    rep = verify_stanley(3, (1, 1, 1, 1, 1))
    assert rep.clean and rep.count_iso == 4
    sources = {r["witness_source"] for r in rep.rows}
    assert sources == {"gamma_t", "search"}


def test_type_bounds_examples():
    assert verify_type_bounds(2, (1, 2, 3)).clean
    rep = verify_type_bounds(3, (1, 1, 1, 1, 1))
    assert rep.clean
    d0 = [r for r in rep.rows if 0 in r["delta_t"]]
    assert [r["type"] for r in d0] == [comb(4, 2)]
    assert all(r["type"] == 1 for r in verify_type_bounds(3, (2, 2, 3)).rows)


def test_report_json_shape():
    data = run_suite("minmax", 2, (1, 1, 1)).to_json()
    assert set(data) == {"suite", "d", "p", "a", "count_iso", "count_labeled", "rows",
                         "violations", "budget_exhausted"}
    row = data["rows"][0]
    assert len(row["h"]) == 3 - 2 + 1
    with pytest.raises(InvalidSpec):
        run_suite("nope", 2, (1, 1, 1))


def test_rows_have_length_n_minus_d_plus_one():
    for d, a in [(2, (1, 2, 3)), (3, (1, 1, 2, 2)), (3, (1, 1, 1, 1, 2))]:
        for r in verify_minmax(d, a).rows:
            assert len(r["h"]) == sum(a) - d + 1


def test_run_grid_sorted_and_threaded_equal():
    grid = [(3, (1, 1, 1, 2)), (2, (1, 1, 2)), (3, (1, 1, 1, 1))]
    serial = run_grid(["minmax", "typebounds"], grid)
    keys = [(r["suite"], r["d"], r["p"], r["a"]) for r in serial]
    assert keys == sorted(keys)
    assert run_grid(["minmax", "typebounds"], grid, threads=2) == serial
    with pytest.raises(BoundExceeded):
        run_grid(["minmax"], [(2, (1,) * 7)])


def test_canonical_forms_distinct_within_class():
    members = enumerate_class(3, (1, 1, 1, 1, 2))
    forms = [canonical_form(m) for m in members]
    assert len(forms) == len(set(forms))
