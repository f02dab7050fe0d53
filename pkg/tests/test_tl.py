"""Temperley-Lieb algebra: matchings, multiplication, Jones-Wenzl."""

import itertools

import pytest

from skeinlab.errors import StrandMismatch
from skeinlab.laurent import LaurentPoly, RationalFunc, loop_value, qint, unknot_colored
from skeinlab.tl import (
    Matching,
    TLElement,
    absorb_check,
    close_matching,
    closure,
    compose_matchings,
    jones_wenzl,
    jones_wenzl_cleared,
    join,
    multiply,
    tensor_with_identity,
    verify_jones_wenzl,
)

DELTA = RationalFunc(loop_value())


def catalan(n):
    from math import comb

    return comb(2 * n, n) // (n + 1)


def all_matchings(n):
    """Enumerate the TL_n basis by recursive cup insertion."""
    found = set()

    def rec(points, pairs):
        if not points:
            partner = [None] * (2 * n)
            for a, b in pairs:
                partner[a] = b
                partner[b] = a
            found.add(Matching(partner))
            return
        first = points[0]
        for k in range(1, len(points), 2):
            # pair first with points[k]; planarity needs an even gap
            rec(points[1:k], pairs)  # not a real partition; see below
    # simpler: brute-force all pairings, keep the planar ones
    found.clear()
    pts = list(range(2 * n))

    def pairings(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for i in range(1, len(rest)):
            b = rest[i]
            for tail in pairings(rest[1:i] + rest[i + 1:]):
                yield [(a, b)] + tail

    for pr in pairings(pts):
        partner = [None] * (2 * n)
        for a, b in pr:
            partner[a] = b
            partner[b] = a
        try:
            found.add(Matching(partner))
        except ValueError:
            pass
    return found


def test_matching_identity_and_generator():
    n = 3
    ident = Matching.identity(n)
    assert ident.partner == (3, 4, 5, 0, 1, 2)
    e1 = Matching.e(n, 1)
    assert e1.partner[0] == 1 and e1.partner[3] == 4


def test_matching_rejects_nonplanar():
    # top 0 - bottom 1 and top 1 - bottom 0 cross
    with pytest.raises(ValueError):
        Matching((3, 2, 1, 0))


def test_basis_count_is_catalan():
    for n in range(1, 6):
        assert len(all_matchings(n)) == catalan(n)


def test_compose_e1_e1():
    n = 2
    e1 = Matching.e(n, 1)
    m, loops = compose_matchings(e1, e1)
    assert m == e1
    assert loops == 1


def test_multiply_e1_e1_gives_delta_e1():
    n = 2
    e1 = TLElement.generator(n, 1)
    prod = multiply(e1, e1)
    assert prod == e1.scale(DELTA)


def test_identity_is_neutral():
    n = 4
    x = TLElement.generator(n, 2) + TLElement.identity(n).scale(3)
    assert multiply(TLElement.identity(n), x) == x
    assert multiply(x, TLElement.identity(n)) == x


def test_e1_e2_e1():
    n = 3
    e1 = TLElement.generator(n, 1)
    e2 = TLElement.generator(n, 2)
    assert multiply(multiply(e1, e2), e1) == e1


def test_multiply_associative_random():
    import random

    rng = random.Random(3)
    n = 4
    basis = sorted(all_matchings(n))
    for _ in range(12):
        xs = []
        for _ in range(3):
            terms = {}
            for m in rng.sample(basis, 3):
                terms[m] = RationalFunc(LaurentPoly({rng.randint(-2, 2): rng.randint(1, 3)}))
            xs.append(TLElement(n, terms))
        x, y, z = xs
        assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


def test_strand_mismatch():
    with pytest.raises(StrandMismatch):
        multiply(TLElement.identity(2), TLElement.identity(3))


def test_close_matching():
    assert close_matching(Matching.identity(3)) == 3
    # cap and cup of e_1 close into a single circle
    assert close_matching(Matching.e(2, 1)) == 1


def test_join_identities():
    for n in (1, 2, 3):
        got = join(TLElement.identity(n), TLElement.identity(n))
        assert got == DELTA ** n
    e1 = TLElement.generator(2, 1)
    assert join(e1, e1) == DELTA ** 2


def test_jones_wenzl_small():
    p1 = jones_wenzl(1)
    assert p1 == TLElement.identity(1)
    p2 = jones_wenzl(2)
    expect = TLElement.identity(2) + TLElement.generator(2, 1).scale(
        RationalFunc(LaurentPoly.one(), qint(2)))
    assert p2 == expect


def test_jones_wenzl_defining_properties():
    for n in range(1, 6):
        checks = verify_jones_wenzl(n)
        assert all(checks.values()), (n, checks)


def test_jones_wenzl_closure_values():
    for n in range(1, 6):
        assert closure(jones_wenzl(n)) == RationalFunc(unknot_colored(n))


def test_join_projector():
    for n in (1, 2, 3):
        p = jones_wenzl(n)
        expect = RationalFunc(unknot_colored(n))
        assert join(p, p) == expect
        assert join(p, TLElement.identity(n)) == expect


def test_absorb():
    for n in range(1, 6):
        for m in range(1, n + 1):
            assert absorb_check(m, n), (m, n)


def test_cleared_projector():
    for n in (1, 2, 3, 4):
        den, terms = jones_wenzl_cleared(n)
        p = jones_wenzl(n)
        for m, c in p.terms.items():
            assert RationalFunc(terms[m], den) == c


def test_tensor_with_identity_shape():
    p2 = jones_wenzl(2)
    emb = tensor_with_identity(p2, 2)
    assert emb.n == 4
    assert emb.coefficient(Matching.identity(4)).is_one()


def test_planarity_preserved_under_multiply():
    import random

    rng = random.Random(5)
    n = 5
    basis = sorted(all_matchings(n))
    for _ in range(40):
        a, b = rng.choice(basis), rng.choice(basis)
        m, _ = compose_matchings(a, b)
        assert m in set(basis)  # Matching() already validated planarity
