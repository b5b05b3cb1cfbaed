"""Exhaustive enumeration of matroid classes M(d, p, a) and verification suites over them.

Classes are enumerated on the simplification (ground set [p]) and lifted to
class sizes ``a`` by transversal expansion.  Every verification routine is
fail-soft: it runs the whole class and returns the violations it found.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .complex_core import bits, compress, cone_mask, dimension, link_mask, restriction_mask
from .errors import BoundExceeded, InvalidSpec
from .hvec import h_cover_recursive, h_cover_total, h_onedim_formula, leq, type_of
from .matroid_ops import (
    ClassSpec,
    Matroid,
    build_delta_max,
    build_delta_min,
    build_delta_t,
    canonical_bases,
    canonical_form,
    is_matroid,
    lift,
    parallel_classes,
    simplify,
    switch_classes,
)
from .oseq import Budget, close_and_count, gamma_t, is_pure_o_sequence

log = logging.getLogger(__name__)

DEFAULT_MAX_P = 6
SUITES = ("minmax", "recursion", "switch", "stanley", "typebounds")


@dataclass
class ClassReport:
    suite: str
    d: int
    a: tuple[int, ...]
    count_iso: int = 0
    count_labeled: int = 0
    rows: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    exhausted: int = 0

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def clean(self) -> bool:
        return not self.violations and not self.exhausted

    def violate(self, kind: str, **data) -> None:
        self.violations.append({"kind": kind, **data})

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "d": self.d,
            "p": self.p,
            "a": list(self.a),
            "count_iso": self.count_iso,
            "count_labeled": self.count_labeled,
            "rows": self.rows,
            "violations": self.violations,
            "budget_exhausted": self.exhausted,
        }


# -- enumeration --------------------------------------------------------------

def _basis_exchange(bases: frozenset) -> bool:
    for b1 in bases:
        for b2 in bases:
            if b1 == b2:
                continue
            only2 = b2 & ~b1
            for x in bits(b1 & ~b2):
                base = b1 & ~(1 << x)
                if not any((base | (1 << y)) in bases for y in bits(only2)):
                    return False
    return True


@lru_cache(maxsize=None)
def simple_matroids(d: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Labelled basis families on [p] of rank d with complete p-partite 1-skeleton.

    Filtered scan over subsets of the d-subsets of [p]: keep families that
    cover every pair of elements (every element, when d = 1) and satisfy
    basis exchange.
    """
    if not 1 <= d <= p:
        return ()
    full = (1 << p) - 1
    dsets = [sum(1 << i for i in c) for c in itertools.combinations(range(p), d)]
    if d == 1:
        return ((1,),) if p == 1 else ()
    pairs = [(1 << i) | (1 << j) for i, j in itertools.combinations(range(p), 2)]
    covers = [sum(1 << k for k, ds in enumerate(dsets) if ds & pr == pr) for pr in pairs]
    out = []
    for chosen in range(1, 1 << len(dsets)):
        if any(not chosen & cv for cv in covers):
            continue
        fam = [ds for k, ds in enumerate(dsets) if chosen >> k & 1]
        union = 0
        for ds in fam:
            union |= ds
        if union != full:
            continue
        if _basis_exchange(frozenset(fam)):
            out.append(tuple(sorted(fam)))
    return tuple(out)


def enumerate_class(d: int, a: Sequence[int], labeled: bool = False,
                    max_p: int = DEFAULT_MAX_P) -> list[Matroid]:
    """Matroids of M(d, p, a), one per isomorphism class unless ``labeled``.

    ``labeled`` keeps every distinct basis family for the fixed consecutive
    class layout.  Output order is by canonical form.
    """
    a = tuple(a)
    p = len(a)
    if p > max_p:
        raise BoundExceeded(f"p={p} exceeds the enumeration bound {max_p}")
    ClassSpec(d, a).validate(family_index=False)
    if d == 1 and p > 1:
        return []
    found: dict = {}
    for bases in simple_matroids(d, p):
        key = bases if labeled else canonical_bases(bases, a)
        if key not in found:
            found[key] = (canonical_bases(bases, a), bases)
    ordered = sorted(found.values())
    return [lift(bases, a) for _, bases in ordered]


def default_grid(max_d: int = 3, max_p: int = 5, max_a: int = 3,
                 extras: bool = True) -> list[tuple[int, tuple[int, ...]]]:
    """(d, a) pairs with 2 <= d <= p <= max_p and nondecreasing a in 1..max_a."""
    grid = []
    for d in range(2, max_d + 1):
        for p in range(d, max_p + 1):
            for a in itertools.combinations_with_replacement(range(1, max_a + 1), p):
                grid.append((d, a))
    if extras and (4, (1,) * 5) not in grid:
        grid.append((4, (1,) * 5))
    return grid


@lru_cache(maxsize=256)
def delta_t_members(d: int, a: tuple[int, ...]) -> dict:
    """Canonical form -> list of (t, ordering) over all Delta_t(d, p, a^sigma)."""
    out: dict = {}
    if d < 2:
        return out
    for order in sorted(set(itertools.permutations(a))):
        for t in range(d - 1):
            m = build_delta_t(ClassSpec(d, order, t))
            out.setdefault(canonical_form(m), []).append((t, order))
    return out


def _form_str(m: Matroid) -> str:
    sizes, bases = canonical_form(m)
    return "a=" + ",".join(map(str, sizes)) + ";B=" + ",".join(
        "".join(str(i + 1) for i in bits(b)) for b in bases)


def _row(m: Matroid, h, d: int, a: tuple[int, ...]) -> dict:
    ts = sorted({t for t, _ in delta_t_members(d, a).get(canonical_form(m), [])})
    return {"form": _form_str(m), "facets": len(m.complex.facets), "h": list(h),
            "type": h[-1], "delta_t": ts}


# -- verification suites ------------------------------------------------------

def verify_minmax(d: int, a: Sequence[int], max_p: int = DEFAULT_MAX_P) -> ClassReport:
    a = tuple(a)
    rep = ClassReport("minmax", d, a)
    members = enumerate_class(d, a, max_p=max_p)
    rep.count_iso = len(members)
    hmin = h_cover_total(build_delta_min(d, len(a), a))
    hmax = h_cover_total(build_delta_max(d, len(a), a))
    for m in members:
        h = h_cover_total(m)
        row = _row(m, h, d, a)
        row.update(is_min=h == hmin, is_max=h == hmax)
        rep.rows.append(row)
        if not (len(h) == len(hmin) == len(hmax)):
            rep.violate("length_mismatch", form=row["form"], h=list(h), hmin=list(hmin), hmax=list(hmax))
        elif not (leq(hmin, h) and leq(h, hmax)):
            rep.violate("extremality", form=row["form"], h=list(h), hmin=list(hmin), hmax=list(hmax))
    return rep


def recursion_violations(m: Matroid) -> list[dict]:
    """Pointwise deletion/link identity at every non-cone vertex of ``m``."""
    cx = m.complex
    out = []
    h = h_cover_total(m)
    cone = cone_mask(cx)
    full = (1 << cx.n) - 1
    for v in bits(cx.support & ~cone):
        hd = h_cover_total(compress(restriction_mask(cx, full & ~(1 << v))))
        hl = h_cover_total(compress(link_mask(cx, 1 << v)))
        size = max(len(h), len(hd) + 1, len(hl))
        lhs = list(h) + [0] * (size - len(h))
        sd = [0] + list(hd) + [0] * (size - len(hd) - 1)
        sl = list(hl) + [0] * (size - len(hl))
        if any(x != y + z for x, y, z in zip(lhs, sd, sl)):
            out.append({"vertex": v + 1, "h": list(h), "h_deleted": list(hd), "h_link": list(hl)})
    return out


def verify_recursion(d: int, a: Sequence[int], max_p: int = DEFAULT_MAX_P) -> ClassReport:
    """Deletion/link identity, engine agreement, and the length/multiplicity laws."""
    a = tuple(a)
    rep = ClassReport("recursion", d, a)
    members = enumerate_class(d, a, max_p=max_p)
    rep.count_iso = len(members)
    n = sum(a)
    for m in members:
        h = h_cover_total(m)
        row = _row(m, h, d, a)
        rep.rows.append(row)
        for bad in recursion_violations(m):
            rep.violate("recursion", form=row["form"], **bad)
        engines = {"dual": h, "recursive": h_cover_recursive(m)}
        if d == 2:
            engines["onedim"] = h_onedim_formula(a)
        if len(set(engines.values())) != 1:
            rep.violate("engine_mismatch", form=row["form"], **{k: list(v) for k, v in engines.items()})
        if sum(h) != len(m.complex.facets):
            rep.violate("multiplicity", form=row["form"], h=list(h), facets=len(m.complex.facets))
        if len(h) - 1 != n - d:
            rep.violate("length", form=row["form"], h=list(h), expected_s=n - d)
    return rep


def verify_switch(d: int, a: Sequence[int], max_p: int = DEFAULT_MAX_P) -> ClassReport:
    """Switching a last cone class with a non-cone class never raises the h-vector.

    Runs over the labelled enumeration with ``a`` sorted ascending, so every
    placement of the cone class is seen.
    """
    a = tuple(sorted(a))
    rep = ClassReport("switch", d, a)
    p = len(a)
    labeled = enumerate_class(d, a, labeled=True, max_p=max_p)
    rep.count_labeled = len(labeled)
    if p <= d:
        return rep
    checked = 0
    for m in labeled:
        if (p - 1) not in m.cone_classes:
            continue
        h = h_cover_total(m)
        for ell in range(p - 1):
            if ell in m.cone_classes:
                continue
            sw = switch_classes(m, ell + 1, p)
            hs = h_cover_total(sw)
            checked += 1
            if not leq(hs, h):
                rep.violate("switch", form=_form_str(m), ell=ell + 1, h=list(h), h_switched=list(hs))
    rep.rows.append({"switches_checked": checked})
    return rep


def verify_stanley(d: int, a: Sequence[int], budget: Budget | None = None,
                   max_p: int = DEFAULT_MAX_P) -> ClassReport:
    a = tuple(a)
    rep = ClassReport("stanley", d, a)
    members = enumerate_class(d, a, max_p=max_p)
    rep.count_iso = len(members)
    family = delta_t_members(d, a)
    for (t, order) in sorted({x for v in family.values() for x in v}):
        spec = ClassSpec(d, order, t)
        h = h_cover_total(build_delta_t(spec))
        if gamma_t(spec).fvec != h:
            rep.violate("gamma_t", t=t, a=list(order), h=list(h), f=list(gamma_t(spec).fvec))
    for m in members:
        h = h_cover_total(m)
        row = _row(m, h, d, a)
        labels = family.get(canonical_form(m), [])
        if labels:
            t, order = labels[0]
            gam = gamma_t(ClassSpec(d, order, t))
            row.update(verdict="pure", witness_source="gamma_t", nodes=0)
            if gam.fvec != h:
                rep.violate("gamma_t", form=row["form"], h=list(h), f=list(gam.fvec))
        else:
            dec = is_pure_o_sequence(h, budget)
            row.update(verdict=dec.verdict, witness_source="search", nodes=dec.nodes)
            if dec.verdict == "pure":
                if close_and_count(dec.witness).fvec != h:
                    rep.violate("unsound_witness", form=row["form"], h=list(h))
            elif dec.verdict == "not_pure":
                rep.violate("not_pure", form=row["form"], h=list(h), type=h[-1])
            else:
                rep.exhausted += 1
        rep.rows.append(row)
    return rep


def verify_type_bounds(d: int, a: Sequence[int], max_p: int = DEFAULT_MAX_P) -> ClassReport:
    a = tuple(a)
    p = len(a)
    rep = ClassReport("typebounds", d, a)
    members = enumerate_class(d, a, max_p=max_p)
    rep.count_iso = len(members)
    for m in members:
        h = h_cover_total(m)
        tp = h[-1]
        row = _row(m, h, d, a)
        rep.rows.append(row)
        if tp < p - d + 1:
            rep.violate("type_lower_bound", form=row["form"], type=tp, bound=p - d + 1)
        if (tp == 1) != (p == d):
            rep.violate("gorenstein", form=row["form"], type=tp, p=p, d=d)
        if d == 2 and tp != p - 1:
            rep.violate("onedim_type", form=row["form"], type=tp, expected=p - 1)
        si, _ = simplify(m)
        if type_of(si) != tp:
            rep.violate("simplification_type", form=row["form"], type=tp, si_type=type_of(si))
    if d >= 2:
        for t in range(d - 1):
            tp = type_of(build_delta_t(ClassSpec(d, a, t)))
            if tp != comb(p - t - 1, d - t - 1):
                rep.violate("delta_t_type", t=t, type=tp, expected=comb(p - t - 1, d - t - 1))
    return rep


def run_suite(suite: str, d: int, a: Sequence[int], budget: Budget | None = None,
              max_p: int = DEFAULT_MAX_P) -> ClassReport:
    if suite == "minmax":
        return verify_minmax(d, a, max_p)
    if suite == "recursion":
        return verify_recursion(d, a, max_p)
    if suite == "switch":
        return verify_switch(d, a, max_p)
    if suite == "stanley":
        return verify_stanley(d, a, budget, max_p)
    if suite == "typebounds":
        return verify_type_bounds(d, a, max_p)
    raise InvalidSpec(f"unknown suite {suite!r}")


def _run_task(task) -> dict:
    suite, d, a, budget, max_p = task
    return run_suite(suite, d, a, budget, max_p).to_json()


def run_grid(suites: Sequence[str], grid: Sequence[tuple[int, tuple[int, ...]]],
             budget: Budget | None = None, max_p: int = DEFAULT_MAX_P,
             threads: int = 1) -> list[dict]:
    """Run every suite on every class; results sorted by (suite, d, p, a)."""
    for _, a in grid:
        if len(a) > max_p:
            raise BoundExceeded(f"p={len(a)} exceeds the enumeration bound {max_p}")
    tasks = [(s, d, tuple(a), budget, max_p) for s in suites for d, a in grid]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = []
        for task in tasks:
            log.debug("running %s d=%d a=%s", task[0], task[1], task[2])
            results.append(_run_task(task))
    results.sort(key=lambda r: (r["suite"], r["d"], r["p"], r["a"]))
    return results


# -- independent brute force (tests and completeness checks) -------------------

def brute_force_class_counts(n: int, d: int) -> dict:
    """Isomorphism-class counts of (d-1)-dimensional matroids on exactly [n], keyed by sorted a.

    Scans every family of d-subsets of [n], keeps matroids using every vertex,
    and identifies isomorphic complexes by minimising over all n! relabellings.
    """
    dsets = [sum(1 << i for i in c) for c in itertools.combinations(range(n), d)]
    full = (1 << n) - 1
    perms = list(itertools.permutations(range(n)))
    seen: dict = {}
    from .complex_core import SimplicialComplex

    for chosen in range(1, 1 << len(dsets)):
        fam = [ds for k, ds in enumerate(dsets) if chosen >> k & 1]
        union = 0
        for ds in fam:
            union |= ds
        if union != full:
            continue
        cx = SimplicialComplex.from_masks(n, fam)
        if not is_matroid(cx):
            continue
        key = min(tuple(sorted(sum(1 << perm[v] for v in bits(f)) for f in fam)) for perm in perms)
        if key in seen:
            continue
        seen[key] = tuple(sorted(parallel_classes(cx).sizes))
    counts: dict = {}
    for sizes in seen.values():
        counts[sizes] = counts.get(sizes, 0) + 1
    return counts


def structure_matches(m: Matroid, a: Sequence[int]) -> bool:
    """The enumerated matroid is a matroid whose recomputed classes have sizes ``a``."""
    return is_matroid(m) and sorted(parallel_classes(m).sizes) == sorted(a)


def iter_grid_matroids(grid) -> Iterator[tuple[int, tuple[int, ...], Matroid]]:
    for d, a in grid:
        for m in enumerate_class(d, a):
            yield d, a, m
