"""h-vectors of cover-ideal quotients, computed three independent ways."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Sequence

from .complex_core import (
    SimplicialComplex,
    bits,
    compress,
    cone_mask,
    dimension,
    dual,
    f_vector,
)
from .errors import DegenerateDual, InvalidSpec, NegativeHEntry
from .matroid_ops import as_complex

HVector = tuple[int, ...]


def strip(h: Sequence[int]) -> HVector:
    """Drop trailing zeros, keeping at least one entry."""
    h = list(h)
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    return tuple(h)


def pad(h: Sequence[int], length: int) -> list[int]:
    return list(h) + [0] * (length - len(h))


def leq(h: Sequence[int], g: Sequence[int]) -> bool:
    """Componentwise h <= g after zero-padding to a common length."""
    size = max(len(h), len(g))
    return all(x <= y for x, y in zip(pad(h, size), pad(g, size)))


def f_to_h(f: Sequence[int], d: int, allow_negative: bool = False) -> HVector:
    """h_j = sum_i (-1)^(j-i) C(d-i, j-i) f_{i-1} for j = 0..d.

    ``f`` starts with f_{-1}; ``d`` is the Krull dimension (>= the largest
    face cardinality).
    """
    if len(f) - 1 > d:
        raise ValueError(f"Krull dimension {d} below face cardinality {len(f) - 1}")
    f = pad(f, d + 1)
    h = []
    for j in range(d + 1):
        h.append(sum((-1) ** (j - i) * comb(d - i, j - i) * f[i] for i in range(j + 1)))
    if not allow_negative and any(x < 0 for x in h):
        raise NegativeHEntry(f"h-vector {h} has a negative entry")
    return strip(h)


def h_stanley_reisner(cx, allow_negative: bool = False) -> HVector:
    cx = as_complex(cx)
    return f_to_h(f_vector(cx), dimension(cx) + 1, allow_negative)


def _is_simplex(cx: SimplicialComplex) -> bool:
    return len(cx.facets) == 1 and cx.facets[0] == cx.support


@lru_cache(maxsize=65536)
def _cover_h(cx: SimplicialComplex) -> HVector:
    dc = dual(cx)
    return f_to_h(f_vector(dc), dimension(dc) + 1)


def _transversal_data(m) -> tuple[tuple[int, ...], frozenset] | None:
    """(class sizes, class supports of the facets) when ``m`` is a full transversal expansion.

    That is, when its classes partition [n], every facet meets each class at
    most once, and every transversal of a facet's class support is a facet.
    """
    classes = getattr(m, "classes", None)
    if not classes:
        return None
    cx = m.complex
    full = (1 << cx.n) - 1
    if sum(classes) != full or cx.support != full:
        return None
    owner = {v: i for i, c in enumerate(classes) for v in bits(c)}
    supports = set()
    for f in cx.facets:
        sup = 0
        for v in bits(f):
            sup |= 1 << owner[v]
        if sup.bit_count() != f.bit_count():
            return None
        supports.add(sup)
    sizes = tuple(c.bit_count() for c in classes)
    expected = 0
    for sup in supports:
        prod = 1
        for i in bits(sup):
            prod *= sizes[i]
        expected += prod
    if expected != len(cx.facets):
        return None
    return sizes, frozenset(supports)


@lru_cache(maxsize=65536)
def _cover_h_by_classes(sizes: tuple[int, ...], supports: frozenset) -> HVector:
    # T spans iff its class support contains a facet support; dual faces are complements
    p, n = len(sizes), sum(sizes)
    nonempty = [[0] + [comb(a, j) for j in range(1, a + 1)] for a in sizes]
    spanning = [0] * (n + 1)
    for u in range(1 << p):
        if not any(s & ~u == 0 for s in supports):
            continue
        poly = [1]
        for i in bits(u):
            poly = _poly_mul(poly, nonempty[i])
        for j, c in enumerate(poly):
            spanning[j] += c
    rank = max(s.bit_count() for s in supports)
    f = [spanning[n - k] for k in range(n - rank + 1)]
    return f_to_h(f, n - rank)


def _poly_mul(x: Sequence[int], y: Sequence[int]) -> list[int]:
    out = [0] * (len(x) + len(y) - 1)
    for i, xi in enumerate(x):
        if xi:
            for j, yj in enumerate(y):
                out[i + j] += xi * yj
    return out


def h_cover(m) -> HVector:
    """h-vector of S/J(m), via the f-vector of the dual on the vertex support.

    Vertices outside the support do not change the result, so the complex
    is first relabelled onto its support.  A matroid whose facets are the
    full transversal expansion of its class structure is counted class by
    class instead of face by face.
    """
    return _h_cover(m, degenerate_ok=False)


def h_cover_total(m) -> HVector:
    """As :func:`h_cover`, but a simplex (polynomial-ring quotient) gives (1,)."""
    return _h_cover(m, degenerate_ok=True)


def h_cover_faces(m) -> HVector:
    """:func:`h_cover` forced through face-by-face enumeration of the dual."""
    cx = compress(as_complex(m))
    if _is_simplex(cx):
        raise DegenerateDual("a simplex has no dual facet")
    return _cover_h(cx)


def _h_cover(m, degenerate_ok: bool) -> HVector:
    cx = as_complex(m)
    if _is_simplex(cx):
        if degenerate_ok:
            return (1,)
        raise DegenerateDual("a simplex has no dual facet")
    data = _transversal_data(m)
    if data is not None:
        return _cover_h_by_classes(*data)
    return _cover_h(compress(cx))


def h_cover_recursive(m) -> HVector:
    """Deletion/link recursion on the least non-cone vertex.

    Cone points are stripped first (they leave the h-vector unchanged); a
    0-dimensional matroid on k vertices has a principal cover ideal of
    degree k, hence (1, ..., 1) of length k.  Valid for matroids only.
    """
    return _h_rec(compress(as_complex(m)))


@lru_cache(maxsize=65536)
def _h_rec(cx: SimplicialComplex) -> HVector:
    if _is_simplex(cx):
        return (1,)
    cone = cone_mask(cx)
    if cone:
        return _h_rec(compress(SimplicialComplex.from_masks(cx.n, [f & ~cone for f in cx.facets])))
    if dimension(cx) == 0:
        return (1,) * len(cx.facets)
    v = next(bits(cx.support))
    deleted = SimplicialComplex.from_masks(cx.n, [f & ~(1 << v) for f in cx.facets])
    linked = SimplicialComplex.from_masks(cx.n, [f & ~(1 << v) for f in cx.facets if f >> v & 1])
    return recursion_combine(_h_rec(compress(deleted)), _h_rec(compress(linked)))


def recursion_combine(h_deleted: Sequence[int], h_link: Sequence[int]) -> HVector:
    """h(k) = h_deleted(k-1) + h_link(k)."""
    size = max(len(h_deleted) + 1, len(h_link))
    shifted = pad([0] + list(h_deleted), size)
    return strip(x + y for x, y in zip(shifted, pad(h_link, size)))


def h_onedim_formula(a: Sequence[int]) -> HVector:
    """Closed form for a complete multipartite graph with class sizes ``a``.

    With c_k = #{i : a_i >= k} - 1 (which is -1 once k passes every class
    size), h(k) = c_1 + ... + c_{n-k-1} for k = 0..n-2.
    """
    a = tuple(a)
    if len(a) < 2 or any(x < 1 for x in a):
        raise InvalidSpec(f"need at least two positive class sizes, got {a}")
    n = sum(a)
    c = [sum(1 for x in a if x >= k) - 1 for k in range(1, n)]
    return strip(sum(c[: n - k - 1]) for k in range(n - 1))


def type_of(m) -> int:
    """Cohen-Macaulay type read off as the last nonzero h-vector entry."""
    return h_cover_total(m)[-1]


def clear_caches() -> None:
    _cover_h.cache_clear()
    _cover_h_by_classes.cache_clear()
    _h_rec.cache_clear()
