import itertools

import pytest

from matroidh.complex_core import new_complex

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def record(number: int, name: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[number] = (name, ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {name} {detail}")


def all_faces(cx):
    """Brute force: every subset of [n] lying inside some facet."""
    out = set()
    for w in range(1 << cx.n):
        if any(w & ~f == 0 for f in cx.facets):
            out.add(w)
    return out


def subsets(n):
    return range(1 << n)


@pytest.fixture
def triangle():
    return new_complex(3, [[1, 2], [1, 3], [2, 3]])


@pytest.fixture
def cone_over_triangle():
    return new_complex(4, [[1, 2, 3], [1, 2, 4], [1, 3, 4]])


@pytest.fixture
def k23():
    return new_complex(5, [[i, j] for i in (1, 2) for j in (3, 4, 5)])


@pytest.fixture
def path4():
    return new_complex(4, [[1, 2], [2, 3], [3, 4]])


def pairs(n):
    return itertools.combinations(range(1, n + 1), 2)


def relabel(cx, perm):
    """Apply a permutation of 0-based vertices to every facet."""
    from matroidh.complex_core import SimplicialComplex, bits

    return SimplicialComplex.from_masks(cx.n, [sum(1 << perm[v] for v in bits(f)) for f in cx.facets])


def random_matroid(rng, max_d=3, max_p=5, max_a=3):
    """A lifted simple matroid with random class sizes and shuffled vertex labels."""
    from matroidh.matroid_ops import Matroid, lift
    from matroidh.complex_core import bits
    from matroidh.verify_enum import simple_matroids

    while True:
        d = rng.randint(1, max_d)
        p = rng.randint(d, max_p)
        fams = simple_matroids(d, p)
        if fams:
            break
    bases = rng.choice(fams)
    a = [rng.randint(1, max_a) for _ in range(p)]
    m = lift(bases, a)
    perm = list(range(m.n))
    rng.shuffle(perm)
    classes = tuple(sum(1 << perm[v] for v in bits(c)) for c in m.classes)
    return Matroid(relabel(m.complex, perm), classes), tuple(a)
