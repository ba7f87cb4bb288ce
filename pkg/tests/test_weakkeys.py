import numpy as np
import pytest

from orekex import (OreKexError, OrePolynomial, grading_vector, random_polynomial,
                    ring_by_name, screen_private_key, weyl_ring)

WEYL = ring_by_name("weyl2-f71")


def test_examples():
    x1, d1 = WEYL.x(1), WEYL.d(1)
    assert grading_vector(x1 * d1 + 3).z == (0, 0)
    assert grading_vector(d1 + x1) is None
    h = (d1 + 1) ** 2 * (d1 + x1 * WEYL.d(2))
    assert grading_vector(h) is None


def test_domain_errors():
    with pytest.raises(OreKexError):
        grading_vector(WEYL.zero())
    skew = ring_by_name("f125-skew2")
    with pytest.raises(OreKexError):
        grading_vector(skew.d(1))
    with pytest.raises(OreKexError):
        screen_private_key(skew.d(1), skew.d(2))


def _oracle_grading(h):
    # definition applied term by term: collect every difference vector
    n = h.ring.n
    diffs = {tuple(e[n + i] - e[i] for i in range(n)) for e in h.terms}
    return next(iter(diffs)) if len(diffs) == 1 else None


def test_exhaustive_agreement_with_oracle():
    # all one-x/d-pair polynomials over F_2 with per-variable degree <= 2,
    # embedded in the n=2 ring with the second pair at exponent zero
    ring = weyl_ring(2, 2)
    count = 0
    for poly in all_polynomials_a1(ring):
        if poly.is_zero():
            continue
        got = grading_vector(poly)
        want = _oracle_grading(poly)
        assert (got.z if got else None) == want
        count += 1
    assert count == 511  # 2^9 - 1 nonzero polynomials


def all_polynomials_a1(ring):
    from itertools import product as iproduct

    monos = [(a, 0, b, 0) for a in range(3) for b in range(3)]
    for assignment in iproduct(range(2), repeat=len(monos)):
        yield OrePolynomial(ring, {m: c for m, c in zip(monos, assignment) if c})


def _random_graded(ring, rng, z=None):
    n = ring.n
    if z is None:
        z = tuple(int(rng.integers(-2, 3)) for _ in range(n))
    terms = {}
    for _ in range(int(rng.integers(1, 4))):
        e = [0] * (2 * n)
        for i in range(n):
            x_exp = int(rng.integers(0, 3)) + max(0, -z[i])
            e[i] = x_exp
            e[n + i] = x_exp + z[i]
        terms[tuple(e)] = int(rng.integers(1, ring.p))
    return OrePolynomial(ring, terms), z


def test_graded_products_add_grading_vectors():
    rng = np.random.default_rng(30)
    for _ in range(200):
        g1, z1 = _random_graded(WEYL, rng)
        g2, z2 = _random_graded(WEYL, rng)
        prod = g1 * g2
        assert not prod.is_zero()  # domain
        got = grading_vector(prod)
        assert got is not None
        assert got.z == tuple(a + b for a, b in zip(z1, z2))


def test_screening():
    x1, d1 = WEYL.x(1), WEYL.d(1)
    L = d1 + x1 + WEYL.d(2)
    graded = x1 * d1 + 3
    assert not screen_private_key(graded, L).accepted
    assert screen_private_key(graded, L).reason == "graded"
    commuting = L * L + 2 * L
    report = screen_private_key(commuting, L)
    assert not report.accepted and report.reason == "commutes"
    rng = np.random.default_rng(31)
    accepted = 0
    for _ in range(50):
        h = random_polynomial(WEYL, 3, 4, rng)
        report = screen_private_key(h, L)
        if report.accepted:
            accepted += 1
            assert grading_vector(h) is None
            assert not h.commutes_with(L)
    assert accepted > 0
