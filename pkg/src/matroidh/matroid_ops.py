"""Matroid recognition, parallel classes and the constructed families.

Constructed families lay their classes out in consecutive label blocks:
A_1 = {1..a_1}, A_2 = {a_1+1..a_1+a_2}, and so on.  The ``classes`` tuple of a
constructed matroid keeps that layout order (so class index r means A_r);
:func:`parallel_classes` instead orders classes by (size, least vertex).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .complex_core import (
    SimplicialComplex,
    bits,
    cone_mask,
    dimension,
    is_pure,
    iter_faces,
    link_mask,
    members,
)
from .errors import InvalidSpec, NotAMatroid, RestrictionCheckBudgetExceeded, UncoveredVertex


@dataclass(frozen=True)
class ClassSpec:
    """Label of a class M(d, p, a), plus the family index t where one is needed."""

    d: int
    a: tuple[int, ...]
    t: int = 0

    @property
    def p(self) -> int:
        return len(self.a)

    @property
    def n(self) -> int:
        return sum(self.a)

    def validate(self, family_index: bool = True) -> None:
        if any(x < 1 for x in self.a):
            raise InvalidSpec(f"class sizes must be positive: {self.a}")
        if not 1 <= self.d <= self.p:
            raise InvalidSpec(f"need p >= d >= 1, got d={self.d}, p={self.p}")
        if family_index and not (self.d >= 2 and 0 <= self.t <= self.d - 2):
            raise InvalidSpec(f"need d >= 2 and 0 <= t <= d-2, got d={self.d}, t={self.t}")


@dataclass(frozen=True)
class Matroid:
    complex: SimplicialComplex
    classes: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(c.bit_count() for c in self.classes)

    @property
    def p(self) -> int:
        return len(self.classes)

    @property
    def d(self) -> int:
        return dimension(self.complex) + 1

    @property
    def n(self) -> int:
        return self.complex.n

    @cached_property
    def cone_classes(self) -> tuple[int, ...]:
        """0-based indices of classes that meet every facet."""
        return tuple(i for i, c in enumerate(self.classes)
                     if all(f & c for f in self.complex.facets))

    def class_lists(self) -> list[list[int]]:
        return [list(members(c)) for c in self.classes]

    def to_json(self) -> dict:
        out = self.complex.to_json()
        out["classes"] = self.class_lists()
        return out


def as_complex(obj) -> SimplicialComplex:
    return obj.complex if isinstance(obj, Matroid) else obj


# -- recognition ------------------------------------------------------------

def _exchange_ok(facets: Sequence[int], faces_contain) -> bool:
    for f in facets:
        for g in facets:
            if f == g:
                continue
            gonly = g & ~f
            for i in bits(f & ~g):
                base = f & ~(1 << i)
                if not any(faces_contain(base | (1 << j)) for j in bits(gonly)):
                    return False
    return True


def is_matroid(cx) -> bool:
    """Purity plus the basis-exchange property on facets."""
    cx = as_complex(cx)
    if not is_pure(cx):
        return False
    facet_set = frozenset(cx.facets)
    return _exchange_ok(cx.facets, facet_set.__contains__)


def augmentation_holds(cx) -> bool:
    """Augmentation over all face pairs |F| < |G|.

    For a face F let A be the vertices that extend it.  Every larger face G
    meets A exactly when the largest face avoiding A, i.e. the largest
    ``facet minus A``, has at most |F| elements.
    """
    cx = as_complex(cx)
    for face in iter_faces(cx):
        ext = 0
        for v in bits(cx.support & ~face):
            if cx.contains(face | (1 << v)):
                ext |= 1 << v
        if max((f & ~ext).bit_count() for f in cx.facets) > face.bit_count():
            return False
    return True


def _restriction_pure(facets: Sequence[int], w: int) -> bool:
    parts = sorted({f & w for f in facets}, key=int.bit_count, reverse=True)
    top = parts[0].bit_count()
    for i, x in enumerate(parts):
        if x.bit_count() == top:
            continue
        if not any(x & ~y == 0 for y in parts[:i] if y.bit_count() > x.bit_count()):
            return False
    return True


def restrictions_pure(cx, exhaustive_limit: int = 16, samples: int | None = 4096,
                      seed: int = 0) -> bool:
    """Every restriction to a vertex subset W is pure.

    All 2^n subsets are checked when n <= ``exhaustive_limit``; beyond that a
    seeded random sample of ``samples`` subsets is used, or
    RestrictionCheckBudgetExceeded is raised when ``samples`` is None.
    """
    cx = as_complex(cx)
    n = cx.n
    if n <= exhaustive_limit:
        subsets = range(1 << n)
    elif samples is None:
        raise RestrictionCheckBudgetExceeded(f"2^{n} restrictions and sampling disabled")
    else:
        rng = random.Random(seed)
        subsets = [rng.getrandbits(n) for _ in range(samples)]
    return all(_restriction_pure(cx.facets, w) for w in subsets)


def matroid_oracles(cx, **kwargs) -> tuple[bool, bool, bool]:
    """(exchange, augmentation, restriction purity), each evaluated independently."""
    return is_matroid(cx), augmentation_holds(cx), restrictions_pure(cx, **kwargs)


# -- parallel classes ---------------------------------------------------------

def parallel_classes(cx) -> Matroid:
    cx = as_complex(cx)
    if not is_matroid(cx):
        raise NotAMatroid("exchange property fails")
    verts = list(bits(cx.support))
    seen = 0
    classes = []
    for v in verts:
        if seen >> v & 1:
            continue
        cls = 1 << v
        for w in verts:
            if w != v and not cx.contains((1 << v) | (1 << w)):
                cls |= 1 << w
        seen |= cls
        classes.append(cls)
    _validate_classes(cx, classes)
    classes.sort(key=lambda c: (c.bit_count(), (c & -c).bit_length()))
    return Matroid(cx, tuple(classes))


def _validate_classes(cx: SimplicialComplex, classes: list[int]) -> None:
    union = 0
    for c in classes:
        if union & c:
            raise NotAMatroid("non-adjacency is not an equivalence relation")
        union |= c
    for ci, cj in itertools.combinations(classes, 2):
        for v in bits(ci):
            for w in bits(cj):
                if not cx.contains((1 << v) | (1 << w)):
                    raise NotAMatroid("1-skeleton is not complete multipartite")
    for c in classes:
        vs = list(bits(c))
        ref = _relative_link(cx, vs[0])
        if any(_relative_link(cx, w) != ref for w in vs[1:]):
            raise NotAMatroid("vertices of one class have different links")


def _relative_link(cx: SimplicialComplex, v: int) -> tuple[int, ...]:
    return link_mask(cx, 1 << v).facets


def is_cone_class(m: Matroid, index: int) -> bool:
    return index in m.cone_classes


def simplify(m: Matroid) -> tuple[Matroid, tuple[int, ...]]:
    """Restriction to the least vertex of each class, relabelled 1..p in class order."""
    reps = [(c & -c).bit_length() - 1 for c in m.classes]
    pos = {v: i for i, v in enumerate(reps)}
    rep_mask = sum(1 << v for v in reps)
    facets = []
    for f in m.complex.facets:
        g = 0
        for v in bits(f & rep_mask):
            g |= 1 << pos[v]
        facets.append(g)
    cx = SimplicialComplex.from_masks(m.p, facets)
    return Matroid(cx, tuple(1 << i for i in range(m.p))), m.sizes


# -- constructions ------------------------------------------------------------

def class_blocks(a: Sequence[int]) -> tuple[int, ...]:
    """Consecutive label blocks A_1 = {1..a_1}, ... as bitsets."""
    out = []
    start = 0
    for size in a:
        out.append(((1 << size) - 1) << start)
        start += size
    return tuple(out)


def lift(bases: Sequence[int], a: Sequence[int]) -> Matroid:
    """Transversal expansion of a simple basis family on [p] to class sizes ``a``."""
    blocks = class_blocks(a)
    facets = []
    for b in bases:
        chosen = [list(bits(blocks[i])) for i in bits(b)]
        for combo in itertools.product(*chosen):
            facets.append(sum(1 << v for v in combo))
    n = sum(a)
    cx = SimplicialComplex.from_masks(n, facets)
    if cx.support != (1 << n) - 1:
        raise UncoveredVertex(f"vertices {members(((1 << n) - 1) & ~cx.support)} lie in no basis")
    return Matroid(cx, blocks)


def delta_t_bases(d: int, p: int, t: int) -> tuple[int, ...]:
    cone = (1 << t) - 1
    return tuple(cone | sum(1 << i for i in rest)
                 for rest in itertools.combinations(range(t, p), d - t))


def build_delta_t(spec: ClassSpec) -> Matroid:
    spec.validate()
    return lift(delta_t_bases(spec.d, spec.p, spec.t), spec.a)


def build_complete(d: int, a: Sequence[int]) -> Matroid:
    spec = ClassSpec(d, tuple(a))
    spec.validate(family_index=False)
    if d == 1 and spec.p > 1:
        # a 0-dimensional complex has a single parallel class
        raise InvalidSpec("d = 1 only admits p = 1")
    return lift(delta_t_bases(d, spec.p, 0), spec.a)


def build_uniform(d: int, p: int) -> Matroid:
    return build_complete(d, (1,) * p)


def sorted_sizes(a: Sequence[int]) -> tuple[int, ...]:
    """Ascending sort; ties keep their original order."""
    return tuple(sorted(a))


def build_delta_max(d: int, p: int, a: Sequence[int]) -> Matroid:
    _check_len(p, a)
    return build_delta_t(ClassSpec(d, tuple(a), 0))


def build_delta_min(d: int, p: int, a: Sequence[int]) -> Matroid:
    _check_len(p, a)
    return build_delta_t(ClassSpec(d, sorted_sizes(a), d - 2))


def _check_len(p: int, a: Sequence[int]) -> None:
    if len(a) != p:
        raise InvalidSpec(f"size vector {tuple(a)} has length {len(a)}, expected p={p}")


def switch_classes(m: Matroid, r: int, s: int) -> Matroid:
    """Switch the roles of classes A_r and A_s (1-based indices, r < s).

    Facets meeting both or neither class are kept; a facet meeting only one
    of them is carried over to every vertex of the other class.
    """
    if not 1 <= r < s <= m.p:
        raise InvalidSpec(f"need 1 <= r < s <= {m.p}, got r={r}, s={s}")
    ar, as_ = m.classes[r - 1], m.classes[s - 1]
    out = []
    for f in m.complex.facets:
        hit_r, hit_s = f & ar, f & as_
        if bool(hit_r) == bool(hit_s):
            out.append(f)
        elif hit_r:
            base = f & ~ar
            out.extend(base | (1 << v) for v in bits(as_))
        else:
            base = f & ~as_
            out.extend(base | (1 << u) for u in bits(ar))
    cx = SimplicialComplex.from_masks(m.n, out)
    if not is_matroid(cx):
        raise NotAMatroid("switched complex failed the exchange check")
    return Matroid(cx, m.classes)


# -- isomorphism --------------------------------------------------------------

def simple_bases(m: Matroid) -> tuple[int, ...]:
    si, _ = simplify(m)
    return si.complex.facets


def canonical_form(m: Matroid) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return canonical_bases(simple_bases(m), m.sizes)


def canonical_bases(bases: Sequence[int], sizes: Sequence[int]):
    """Least relabelling of (sizes, bases) over permutations of [p] that sort sizes.

    Two matroids are isomorphic exactly when these forms agree, since classes
    are intrinsic and any isomorphism maps classes to classes of equal size.
    """
    p = len(sizes)
    order = sorted(range(p), key=lambda i: sizes[i])
    groups = [list(g) for _, g in itertools.groupby(order, key=lambda i: sizes[i])]
    best = None
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        target = [0] * p
        pos = 0
        for perm in choice:
            for old in perm:
                target[old] = pos
                pos += 1
        image = []
        for b in bases:
            nb = 0
            for i in bits(b):
                nb |= 1 << target[i]
            image.append(nb)
        image.sort()
        key = tuple(image)
        if best is None or key < best:
            best = key
    return tuple(sorted(sizes)), best


def is_isomorphic(m1: Matroid, m2: Matroid) -> bool:
    return canonical_form(m1) == canonical_form(m2)


def cone_vertex_mask(m) -> int:
    return cone_mask(as_complex(m))
