"""Simplicial complexes on [n] stored as canonical families of facet bitsets.

Vertices are labelled 1..n in every public function; internally vertex ``v``
is bit ``v - 1`` of a Python int.  Complexes are immutable and compare
structurally because the facet tuple is always kept in canonical order
(cardinality first, then the sorted member tuple).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapacityExceeded,
    DegenerateDual,
    EmptyGeneratorSet,
    FaceNotInComplex,
    UncoveredVertex,
    VertexOutOfRange,
)

MAX_VERTICES = 64


def to_mask(vertices: Iterable[int], n: int) -> int:
    """Bitset of 1-based ``vertices``; every label must lie in 1..n."""
    mask = 0
    for v in vertices:
        if not 1 <= v <= n:
            raise VertexOutOfRange(f"vertex {v} outside 1..{n}")
        mask |= 1 << (v - 1)
    return mask


def members(mask: int) -> tuple[int, ...]:
    """1-based labels of the bits set in ``mask``, ascending."""
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def bits(mask: int) -> Iterator[int]:
    """0-based positions of the set bits."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _facet_key(mask: int) -> tuple[int, int]:
    """Orders by cardinality, then by the sorted member tuple.

    Among sets of equal size the tuple comparison is decided by the least
    element of the symmetric difference, which is what comparing the
    bit-reversed masks in descending order does.
    """
    return (mask.bit_count(), -int(format(mask, "064b")[::-1], 2))


def maximal_sets(masks: Iterable[int]) -> tuple[int, ...]:
    """Inclusion-maximal elements of ``masks``, deduplicated, canonically ordered."""
    uniq = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    larger: list[int] = []  # kept sets strictly bigger than the current size
    size = None
    for m in uniq:
        if m.bit_count() != size:
            larger = list(kept)
            size = m.bit_count()
        # distinct sets of equal size never contain one another
        if not any(m & ~k == 0 for k in larger):
            kept.append(m)
    return tuple(sorted(kept, key=_facet_key))


def _check_width(n: int) -> None:
    if n < 0:
        raise VertexOutOfRange(f"negative vertex count {n}")
    if n > MAX_VERTICES:
        raise CapacityExceeded(f"{n} vertices exceed the bitset width {MAX_VERTICES}")


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertex count plus the canonical tuple of facet bitsets.

    Build instances with :func:`new_complex` (validated, all vertices present)
    or :meth:`from_masks` (derived complexes that may omit vertices).
    """

    n: int
    facets: tuple[int, ...]

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SimplicialComplex":
        _check_width(n)
        full = (1 << n) - 1
        masks = list(masks)
        if any(m & ~full for m in masks):
            raise VertexOutOfRange(f"facet outside 1..{n}")
        if not masks:
            masks = [0]
        return cls(n, maximal_sets(masks))

    @cached_property
    def support(self) -> int:
        out = 0
        for f in self.facets:
            out |= f
        return out

    @property
    def vertices(self) -> tuple[int, ...]:
        return members(self.support)

    def contains(self, face: int) -> bool:
        """Membership test for a face given as a bitset."""
        return any(face & ~f == 0 for f in self.facets)

    def facet_lists(self) -> list[list[int]]:
        return [list(members(f)) for f in self.facets]

    def to_json(self) -> dict:
        return {"n": self.n, "facets": self.facet_lists()}

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, members(f))) + "}" for f in self.facets)
        return f"SimplicialComplex(n={self.n}, facets=[{body}])"


def new_complex(n: int, generators: Sequence[Iterable[int]]) -> SimplicialComplex:
    """Complex on [n] generated by ``generators``; every vertex must be used."""
    _check_width(n)
    generators = list(generators)
    if not generators:
        raise EmptyGeneratorSet("at least one generator is required")
    masks = [to_mask(g, n) for g in generators]
    cx = SimplicialComplex.from_masks(n, masks)
    missing = ((1 << n) - 1) & ~cx.support
    if missing:
        raise UncoveredVertex(f"vertices {list(members(missing))} lie in no generator")
    return cx


def from_json(data: dict, strict: bool = True) -> SimplicialComplex:
    """Read the ``{"n": .., "facets": [[..], ..]}`` interchange format."""
    n = int(data["n"])
    facets = [list(map(int, f)) for f in data["facets"]]
    if strict:
        return new_complex(n, facets)
    return SimplicialComplex.from_masks(n, [to_mask(f, n) for f in facets])


def dimension(cx: SimplicialComplex) -> int:
    return max(f.bit_count() for f in cx.facets) - 1


def is_pure(cx: SimplicialComplex) -> bool:
    return len({f.bit_count() for f in cx.facets}) == 1


def iter_faces(cx: SimplicialComplex) -> Iterator[int]:
    """Every face exactly once (the empty face included), depth-first.

    A face is extended only by vertices above its largest member and only
    while at least one facet still contains it, so nothing is revisited.
    """
    n = cx.n
    on_vertex = [0] * n
    for idx, f in enumerate(cx.facets):
        for v in bits(f):
            on_vertex[v] |= 1 << idx
    stack = [(0, 0, (1 << len(cx.facets)) - 1)]
    while stack:
        face, start, active = stack.pop()
        yield face
        for v in range(start, n):
            nxt = active & on_vertex[v]
            if nxt:
                stack.append((face | (1 << v), v + 1, nxt))


def face_counts(cx: SimplicialComplex) -> list[int]:
    """``counts[k]`` = number of faces of cardinality k."""
    counts = [0] * (dimension(cx) + 2)
    for face in iter_faces(cx):
        counts[face.bit_count()] += 1
    return counts


def f_vector(cx: SimplicialComplex) -> tuple[int, ...]:
    """(f_{-1}, f_0, ..., f_{d-1}); the leading entry counts the empty face."""
    return tuple(face_counts(cx))


def link(cx: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    return link_mask(cx, to_mask(face, cx.n))


def link_mask(cx: SimplicialComplex, face: int) -> SimplicialComplex:
    above = [f & ~face for f in cx.facets if face & ~f == 0]
    if not above:
        raise FaceNotInComplex(f"{members(face)} is not a face")
    return SimplicialComplex.from_masks(cx.n, above)


def delete_vertex(cx: SimplicialComplex, v: int) -> SimplicialComplex:
    if not 1 <= v <= cx.n:
        raise VertexOutOfRange(f"vertex {v} outside 1..{cx.n}")
    return restriction_mask(cx, ((1 << cx.n) - 1) & ~(1 << (v - 1)))


def restriction(cx: SimplicialComplex, w: Iterable[int]) -> SimplicialComplex:
    return restriction_mask(cx, to_mask(w, cx.n))


def restriction_mask(cx: SimplicialComplex, w: int) -> SimplicialComplex:
    return SimplicialComplex.from_masks(cx.n, [f & w for f in cx.facets])


def skeleton(cx: SimplicialComplex, k: int) -> SimplicialComplex:
    """Complex whose facets are the k-dimensional faces of ``cx``."""
    if not 0 <= k <= dimension(cx):
        raise ValueError(f"skeleton dimension {k} outside 0..{dimension(cx)}")
    faces = [f for f in iter_faces(cx) if f.bit_count() == k + 1]
    return SimplicialComplex.from_masks(cx.n, faces)


def dual(cx: SimplicialComplex) -> SimplicialComplex:
    """Complex generated by the complements of the facets inside [n]."""
    full = (1 << cx.n) - 1
    comps = [full & ~f for f in cx.facets]
    if any(c == 0 for c in comps):
        raise DegenerateDual("a facet is the whole vertex set")
    return SimplicialComplex.from_masks(cx.n, comps)


def compress(cx: SimplicialComplex) -> SimplicialComplex:
    """Relabel the support to 1..m in increasing order, dropping unused vertices."""
    pos = {}
    for i, v in enumerate(bits(cx.support)):
        pos[v] = i
    facets = []
    for f in cx.facets:
        g = 0
        for v in bits(f):
            g |= 1 << pos[v]
        facets.append(g)
    return SimplicialComplex.from_masks(len(pos), facets)


def minimal_nonfaces(cx: SimplicialComplex) -> list[tuple[int, ...]]:
    return [members(m) for m in minimal_nonface_masks(cx)]


def minimal_nonface_masks(cx: SimplicialComplex) -> tuple[int, ...]:
    """Inclusion-minimal subsets of [n] outside the complex.

    A minimal nonface is a face plus one vertex above its maximum, with every
    codimension-one subset a face; vertices outside the support are minimal
    nonfaces on their own.
    """
    out = set()
    full = (1 << cx.n) - 1
    for v in bits(full & ~cx.support):
        out.add(1 << v)
    for face in iter_faces(cx):
        start = face.bit_length()
        for v in range(start, cx.n):
            cand = face | (1 << v)
            if not (cx.support >> v) & 1 or cx.contains(cand):
                continue
            if all(cx.contains(cand & ~(1 << u)) for u in bits(face)):
                out.add(cand)
    return tuple(sorted(out, key=_facet_key))


def minimal_vertex_covers(cx: SimplicialComplex) -> list[tuple[int, ...]]:
    return [members(m) for m in minimal_cover_masks(cx)]


def minimal_cover_masks(cx: SimplicialComplex) -> tuple[int, ...]:
    """Minimal transversals of the facet family (Berge's incremental method)."""
    covers = {0}
    for f in cx.facets:
        nxt = set()
        for t in covers:
            if t & f:
                nxt.add(t)
            else:
                for v in bits(f):
                    nxt.add(t | (1 << v))
        covers = _minimal(nxt)
    return tuple(sorted(covers, key=_facet_key))


def _minimal(masks: set[int]) -> set[int]:
    ordered = sorted(masks, key=int.bit_count)
    kept: list[int] = []
    for m in ordered:
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return set(kept)


def cone_points(cx: SimplicialComplex) -> tuple[int, ...]:
    return members(cone_mask(cx))


def cone_mask(cx: SimplicialComplex) -> int:
    out = (1 << cx.n) - 1
    for f in cx.facets:
        out &= f
    return out
