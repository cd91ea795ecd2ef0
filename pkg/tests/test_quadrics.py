"""The quadratic generating sets: exchange and sorted forms for one closure,
the three shapes for a reduced family, and squarefreeness of every lead."""

import random

import pytest

from borelgb.borel import borel_closure
from borelgb.families import parse_family, random_interval_family
from borelgb.monomials import parse_monomial
from borelgb.quadrics import (first_non_squarefree_lead, quadrics_bs_form,
                              quadrics_multi, quadrics_single)
from borelgb.sorting import borel_sort
from borelgb.toric import (Binomial, FiberSetup, GeneratorVar, TProduct,
                           certify, fiber_graph, iterate_images)

TRIANGLE = """vars = 3
ideal I1: support = x1,x2 ; generator = x2
ideal I2: support = x1,x3 ; generator = x3
ideal I3: support = x2,x3 ; generator = x3
"""

EX_FAMILY = """vars = 4
ideal I1: support = x4 ; generator = x4
ideal I2: support = x3,x4 ; generator = x3*x4
ideal I3: support = x2,x3,x4 ; generator = x3*x4
ideal I4: support = x1,x2,x3 ; generator = x1*x2*x3
ideal I5: support = x1,x2 ; generator = x1*x2^2
"""

NESTED_FAMILY = """vars = 4
ideal I1: support = x3,x4 ; generator = x3*x4^2
ideal I2: support = x3,x4 ; generator = x3*x4
ideal I3: support = x2,x3,x4 ; generator = x2*x3*x4
ideal I4: support = x1,x2,x3 ; generator = x3^2
"""


def test_smallest_nontrivial_closure():
    M = parse_monomial("x2^2", 2)
    expected = "T[x1^2]*T[x2^2] - T[x1*x2]*T[x1*x2]"
    ex = quadrics_single(M)
    bs = quadrics_bs_form(M)
    assert [b.text(tagged=False) for b in ex] == [expected]
    assert ex == bs


def test_closure_without_relations():
    M = parse_monomial("x1*x2", 2)
    assert quadrics_single(M) == ()
    assert quadrics_bs_form(M) == ()


def test_exchange_quadrics_structure():
    M = parse_monomial("x2^2*x4", 4)
    gset = set(borel_closure(M))
    qs = quadrics_single(M)
    assert len(qs) == 26
    for b in qs:
        for side in (b.lead, b.tail):
            assert side.xpart.is_unit
            assert side.tdegree == 2
            assert all(t.gen in gset for t in side.tvars)
        assert b.lead.image() == b.tail.image()
        assert b.lead != b.tail
        assert b.lead.is_squarefree()
    assert first_non_squarefree_lead(qs) is None


def test_sorted_form_tails_are_sorted_factorizations():
    M = parse_monomial("x2^2*x4", 4)
    qs = quadrics_bs_form(M)
    assert len(qs) == 21
    for b in qs:
        tail_factors = sorted((t.gen for t in b.tail.tvars),
                              key=lambda m: m.grevlex_key())
        expected = sorted(borel_sort(M, b.lead.image(), 2),
                          key=lambda m: m.grevlex_key())
        assert tail_factors == expected
        assert b.lead.is_squarefree()


def test_both_forms_certify_identically_in_degree_two():
    """Exchange and sorted-form sets span the same degree-2 relations: every
    two-factor fiber has the same unique sink under either rewriting."""
    M = parse_monomial("x2^2*x4", 4)
    setup = FiberSetup.single(M)
    ex, bs = quadrics_single(M), quadrics_bs_form(M)
    fibers = 0
    for mu, k in iterate_images(setup, 2):
        if k != 2:
            continue
        ge = fiber_graph(setup, mu, 2, ex)
        gb = fiber_graph(setup, mu, 2, bs)
        ce, se = certify(ge)
        cb, sb = certify(gb)
        assert ce and cb and len(se) == len(sb) == 1
        assert se == sb
        assert [t.gen for t in se[0].tvars] == list(borel_sort(M, mu, 2))
        fibers += 1
    assert fibers > 30


def test_triangle_family_quadrics():
    tq = quadrics_multi(parse_family(TRIANGLE))
    assert tq.counts() == (3, 0, 0)
    assert [b.text() for b in tq.symmetric] == [
        "x3*T[t3:x2] - x2*T[t3:x3]",
        "x3*T[t2:x1] - x1*T[t2:x3]",
        "x2*T[t1:x1] - x1*T[t1:x2]",
    ]


def test_family_quadric_counts_and_structure():
    fam = parse_family(EX_FAMILY)
    q = quadrics_multi(fam)
    assert q.counts() == (17, 7, 14)
    assert len(q.all()) == 38
    closures = {i: set(c) for i, c in enumerate(fam.closures(), start=1)}
    for b in q.symmetric:
        assert b.lead.tdegree == b.tail.tdegree == 1
        assert b.lead.xpart.deg == b.tail.xpart.deg == 1
        assert b.lead.image() == b.tail.image()
        t = b.lead.tvars[0]
        assert t.gen in closures[t.block]
    for b in q.fiber_principal:
        assert b.lead.xpart.is_unit and b.tail.xpart.is_unit
        blocks = {t.block for t in b.lead.tvars}
        assert len(blocks) == 1
        assert b.lead.image() == b.tail.image()
    for b in q.fiber_biprincipal:
        assert b.lead.xpart.is_unit and b.tail.xpart.is_unit
        blocks = [t.block for t in b.lead.tvars]
        assert len(set(blocks)) == 2
        assert [t.block for t in b.tail.tvars] == sorted(blocks)
        assert b.lead.image() == b.tail.image()
    assert first_non_squarefree_lead(q.all()) is None

    nq = quadrics_multi(parse_family(NESTED_FAMILY))
    assert nq.counts() == (19, 10, 17)
    assert first_non_squarefree_lead(nq.all()) is None


def test_quadrics_multi_needs_reduced():
    fam = parse_family("vars = 2\nideal A: support = x2 ; generator = x1*x2\n")
    with pytest.raises(ValueError):
        quadrics_multi(fam)


def test_random_interval_families_have_squarefree_leads():
    rng = random.Random(97)
    for _ in range(20):
        fam = random_interval_family(rng, rng.randint(2, 5), rng.randint(1, 4))
        q = quadrics_multi(fam)
        assert first_non_squarefree_lead(q.all()) is None


def test_first_non_squarefree_lead_detects():
    n = 2
    g = GeneratorVar(0, parse_monomial("x1*x2", n))
    sq = TProduct(parse_monomial("1", n), (g, g))
    other = TProduct(parse_monomial("1", n),
                     (GeneratorVar(0, parse_monomial("x1^2", n)),
                      GeneratorVar(0, parse_monomial("x2^2", n))))
    bad = Binomial(sq, other)
    assert first_non_squarefree_lead([bad]) is bad
