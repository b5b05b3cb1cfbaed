import itertools
import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroidh.complex_core import (
    SimplicialComplex,
    bits,
    dimension,
    dual,
    is_pure,
    new_complex,
    skeleton,
)
from matroidh.errors import InvalidSpec, NotAMatroid, RestrictionCheckBudgetExceeded
from matroidh.matroid_ops import (
    ClassSpec,
    augmentation_holds,
    build_complete,
    build_delta_max,
    build_delta_min,
    build_delta_t,
    build_uniform,
    canonical_form,
    class_blocks,
    is_isomorphic,
    is_matroid,
    lift,
    matroid_oracles,
    parallel_classes,
    restrictions_pure,
    simplify,
    switch_classes,
)

from conftest import all_faces, random_matroid, relabel


def oracle_switch(m, r, s):
    """Facets of the switched matroid straight from the three membership clauses."""
    ar, as_ = m.classes[r - 1], m.classes[s - 1]
    facets = set(m.complex.facets)
    out = []
    for combo in itertools.combinations(range(m.n), m.d):
        f = sum(1 << v for v in combo)
        both = (f & (ar | as_)).bit_count()
        if both in (0, 2) and f in facets:
            out.append(f)
        elif both == 1 and f & ar:
            u = f & ar
            if any((f & ~u) | (1 << v) in facets for v in bits(as_)):
                out.append(f)
        elif both == 1 and f & as_:
            v = f & as_
            if any((f & ~v) | (1 << u) in facets for u in bits(ar)):
                out.append(f)
    return SimplicialComplex.from_masks(m.n, out)


@st.composite
def small_complexes(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    full = (1 << n) - 1
    size = draw(st.integers(0, n))
    if draw(st.booleans()) and size > 0:
        # pure families are where matroids live
        pool = [sum(1 << v for v in c) for c in itertools.combinations(range(n), size)]
        gens = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=len(pool)))
    else:
        gens = draw(st.lists(st.integers(0, full), min_size=1, max_size=6))
    return SimplicialComplex.from_masks(n, gens)


# -- recognition examples ---------------------------------------------------------

def test_recognition_examples(triangle, cone_over_triangle, path4):
    assert matroid_oracles(triangle) == (True, True, True)
    assert matroid_oracles(cone_over_triangle) == (True, True, True)
    assert matroid_oracles(new_complex(4, [[1, 2], [3, 4]])) == (False, False, False)
    assert not is_matroid(path4)
    assert not is_matroid(new_complex(3, [[1, 2], [3]]))


def test_restriction_sampling_budget():
    cx = build_uniform(2, 17).complex
    with pytest.raises(RestrictionCheckBudgetExceeded):
        restrictions_pure(cx, samples=None)
    assert restrictions_pure(cx, samples=256)


# -- parallel classes and simplification -----------------------------------------

def test_parallel_classes_examples(k23, cone_over_triangle):
    m = parallel_classes(k23)
    assert m.class_lists() == [[1, 2], [3, 4, 5]] and m.sizes == (2, 3)
    assert parallel_classes(cone_over_triangle).sizes == (1, 1, 1, 1)
    assert parallel_classes(new_complex(3, [[1, 2, 3]])).sizes == (1, 1, 1)


def test_parallel_classes_rejects_non_matroids(path4):
    with pytest.raises(NotAMatroid):
        parallel_classes(path4)


def test_simplify_examples(k23, cone_over_triangle):
    si, a = simplify(parallel_classes(k23))
    assert a == (2, 3) and si.complex.facet_lists() == [[1, 2]]
    si, a = simplify(parallel_classes(cone_over_triangle))
    assert a == (1, 1, 1, 1) and si.complex == cone_over_triangle
    si, a = simplify(build_delta_t(ClassSpec(2, (2, 2, 2))))
    assert a == (2, 2, 2) and si.complex.facet_lists() == [[1, 2], [1, 3], [2, 3]]


def test_lift_then_simplify_round_trip():
    bases = (0b011, 0b101, 0b110)
    m = lift(bases, (1, 2, 3))
    si, a = simplify(m)
    assert a == (1, 2, 3) and set(si.complex.facets) == set(bases)
    assert m.class_lists() == [[1], [2, 3], [4, 5, 6]]


def test_class_blocks_layout():
    assert class_blocks((1, 2, 3)) == (0b1, 0b110, 0b111000)


# -- constructions ------------------------------------------------------------------

def test_delta_t_examples():
    assert build_delta_t(ClassSpec(2, (1, 1, 1))).complex.facet_lists() == [[1, 2], [1, 3], [2, 3]]
    m = build_delta_t(ClassSpec(3, (1, 1, 1, 1), 1))
    assert m.complex.facet_lists() == [[1, 2, 3], [1, 2, 4], [1, 3, 4]]
    assert m.cone_classes == (0,)


@pytest.mark.parametrize("spec", [
    ClassSpec(2, (1, 1, 1), 1),
    ClassSpec(3, (1, 1), 0),
    ClassSpec(2, (0, 1, 1), 0),
    ClassSpec(1, (1,), 0),
])
def test_delta_t_rejects_bad_specs(spec):
    with pytest.raises(InvalidSpec):
        build_delta_t(spec)


def test_k3345_complex_shape():
    m = build_complete(2, (3, 3, 4, 5))
    assert m.n == 15 and m.sizes == (3, 3, 4, 5)
    assert len(m.complex.facets) == sum(x * y for x, y in itertools.combinations((3, 3, 4, 5), 2))


def test_uniform_and_complete():
    assert len(build_uniform(3, 6).complex.facets) == comb(6, 3)
    assert build_complete(1, (4,)).complex.facet_lists() == [[1], [2], [3], [4]]
    with pytest.raises(InvalidSpec):
        build_complete(1, (1, 1))


def test_min_max_examples():
    assert build_delta_max(2, 3, (1, 1, 1)).complex.facet_lists() == [[1, 2], [1, 3], [2, 3]]
    dmin = build_delta_min(3, 4, (2, 1, 1, 1))
    assert dmin.sizes == (1, 1, 1, 2) and dmin.cone_classes == (0,)
    a = (2, 1, 3)
    assert is_isomorphic(build_delta_min(3, 3, a), build_delta_max(3, 3, a))
    with pytest.raises(InvalidSpec):
        build_delta_min(3, 4, (1, 1, 1))


# -- switch ---------------------------------------------------------------------------

def test_switch_equal_sizes_in_delta_zero_is_isomorphic():
    m = build_delta_t(ClassSpec(3, (1, 2, 2, 3), 0))
    sw = switch_classes(m, 2, 3)
    assert is_isomorphic(sw, m)
    assert sw.complex == m.complex


def test_switch_cone_class_example():
    m = build_delta_t(ClassSpec(3, (1, 1, 1, 2), 1))
    sw = switch_classes(m, 1, 4)
    assert sw.complex == oracle_switch(m, 1, 4)
    # the size-2 class now plays the cone role
    assert sw.cone_classes == (3,)
    assert is_isomorphic(sw, build_delta_t(ClassSpec(3, (2, 1, 1, 1), 1)))


def test_switch_twice_restores_the_original():
    m = build_delta_t(ClassSpec(3, (1, 2, 1, 3), 1))
    assert switch_classes(switch_classes(m, 1, 4), 1, 4).complex == m.complex


def test_switch_index_validation():
    m = build_delta_t(ClassSpec(2, (1, 1, 1)))
    with pytest.raises(InvalidSpec):
        switch_classes(m, 2, 2)
    with pytest.raises(InvalidSpec):
        switch_classes(m, 1, 4)


def test_switch_matches_clause_oracle_on_random_matroids():
    rng = random.Random(7)
    checked = 0
    for _ in range(150):
        m, _ = random_matroid(rng, max_d=3, max_p=4, max_a=2)
        m = parallel_classes(m.complex)
        if m.p < 2:
            continue
        r, s = sorted(rng.sample(range(1, m.p + 1), 2))
        assert switch_classes(m, r, s).complex == oracle_switch(m, r, s)
        checked += 1
    assert checked > 100


# -- isomorphism ---------------------------------------------------------------------

def test_canonical_form_is_relabel_invariant():
    rng = random.Random(3)
    for _ in range(60):
        m, a = random_matroid(rng)
        perm = list(range(m.n))
        rng.shuffle(perm)
        moved = parallel_classes(relabel(m.complex, perm))
        assert canonical_form(parallel_classes(m.complex)) == canonical_form(moved)


def test_non_isomorphic_members_differ():
    d0 = build_delta_t(ClassSpec(3, (1, 1, 1, 1), 0))
    d1 = build_delta_t(ClassSpec(3, (1, 1, 1, 1), 1))
    assert not is_isomorphic(d0, d1)


# -- properties -------------------------------------------------------------------------

@settings(max_examples=400, deadline=None)
@given(small_complexes())
def test_axiom_equivalence(cx):
    ex, aug, res = matroid_oracles(cx)
    assert ex == aug == res


@settings(max_examples=400, deadline=None)
@given(small_complexes())
def test_matroid_iff_dual_matroid(cx):
    full = (1 << cx.n) - 1
    if not is_pure(cx) or full in cx.facets or 0 in cx.facets:
        return
    assert is_matroid(cx) == is_matroid(dual(cx))


def test_skeletons_of_matroids_are_matroids():
    rng = random.Random(11)
    for _ in range(80):
        m, _ = random_matroid(rng, max_d=4, max_p=5, max_a=2)
        for k in range(dimension(m.complex) + 1):
            assert is_matroid(skeleton(m.complex, k))


def test_transversality():
    # a transversal face is present exactly when its class-index set is
    rng = random.Random(5)
    for _ in range(40):
        m, _ = random_matroid(rng, max_d=3, max_p=4, max_a=3)
        pm = parallel_classes(m.complex)
        owner = {v: i for i, c in enumerate(pm.classes) for v in bits(c)}
        faces = all_faces(m.complex)
        by_index: dict = {}
        for w in range(1 << m.n):
            idx = [owner[v] for v in bits(w) if v in owner]
            if len(idx) != len(set(idx)) or len(idx) != w.bit_count():
                continue
            by_index.setdefault(frozenset(idx), set()).add(w in faces)
        assert all(len(v) == 1 for v in by_index.values())


@pytest.mark.parametrize("d, p", [(2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (4, 6)])
def test_simplified_delta_t_is_uniform_delta_t(d, p):
    rng = random.Random(d * 10 + p)
    for t in range(d - 1):
        a = tuple(rng.randint(1, 3) for _ in range(p))
        si, _ = simplify(build_delta_t(ClassSpec(d, a, t)))
        assert si.complex == build_delta_t(ClassSpec(d, (1,) * p, t)).complex


@pytest.mark.parametrize("d, p", [(2, 3), (3, 4), (3, 5), (4, 5), (4, 6), (5, 7)])
def test_delta_t_facet_counts(d, p):
    counts = [len(build_delta_t(ClassSpec(d, (1,) * p, t)).complex.facets) for t in range(d - 1)]
    assert counts == [comb(p - t, d - t) for t in range(d - 1)]
    assert len(set(counts)) == len(counts)


def test_matroid_json_has_classes():
    data = build_complete(2, (1, 2)).to_json()
    assert data == {"n": 3, "facets": [[1, 2], [1, 3]], "classes": [[1], [2, 3]]}


def test_augmentation_direct_example():
    assert not augmentation_holds(new_complex(4, [[1, 2], [3, 4]]))
    assert augmentation_holds(new_complex(4, [[1, 2], [1, 3], [1, 4]]))
