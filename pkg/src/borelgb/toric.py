"""Toric fibers of Borel closures and their quadratic rewriting graphs.

The objects here are T-products: formal products of variables T_{g, block}
(one per chosen generator g of a block) times an x-monomial cofactor.  A
T-product maps to its image x^a * g_1 * ... * g_k; the fiber over an image is
the set of T-products hitting it with prescribed T-degrees per block.  A set
of quadratic binomials is certified as a Gröbner basis degree-by-degree: on
every fiber, rewriting by the quadrics (lead to tail) must have a unique sink.
An independent S-pair reduction check is provided as a second route.

Two setups share the machinery: 'single' (one Borel closure, fiber points are
exact factorizations, no x cofactor) and 'multi' (a reduced family of
support-restricted closures, fiber points carry an x cofactor).
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from .borel import borel_closure, factors_exist, min_borel_divisor
from .monomials import Monomial, lcm, restrict
from .monomials import expand as expand_monomial
from .sorting import borel_sort


class ResourceLimitError(RuntimeError):
    """A run exceeded its configured resource budget."""


class Limits:
    """Resource caps for fiber enumeration and reduction loops."""

    __slots__ = ("max_vertices", "max_checks", "max_steps")

    def __init__(self, max_vertices=100_000, max_checks=10_000_000,
                 max_steps=100_000):
        self.max_vertices = max_vertices
        self.max_checks = max_checks
        self.max_steps = max_steps


class _Budget:
    """Mutable counters charged against a Limits object."""

    __slots__ = ("limits", "vertices", "checks", "steps")

    def __init__(self, limits):
        self.limits = limits
        self.vertices = 0
        self.checks = 0
        self.steps = 0

    def start_fiber(self):
        self.vertices = 0

    def count_vertex(self):
        self.vertices += 1
        if self.vertices > self.limits.max_vertices:
            raise ResourceLimitError(
                f"fiber exceeded {self.limits.max_vertices} vertices")

    def count_check(self):
        self.checks += 1
        if self.checks > self.limits.max_checks:
            raise ResourceLimitError(
                f"run exceeded {self.limits.max_checks} divisibility checks")

    def count_step(self):
        self.steps += 1
        if self.steps > self.limits.max_steps:
            raise ResourceLimitError(
                f"reduction exceeded {self.limits.max_steps} rewrite steps")


class GeneratorVar:
    """One T variable: a chosen generator of one block."""

    __slots__ = ("block", "gen", "rank")

    def __init__(self, block, gen):
        if block < 0:
            raise ValueError("block id must be nonnegative")
        self.block = block
        self.gen = gen
        # Ascending rank = descending variable: blocks first, then the
        # grevlex-larger generator makes the larger variable.
        self.rank = (block, -gen.deg, tuple(reversed(gen.exps)))

    def text(self, base=1, tagged=True):
        body = self.gen.text(base)
        return f"t{self.block}:{body}" if tagged else body

    def __eq__(self, other):
        return (isinstance(other, GeneratorVar)
                and self.block == other.block and self.gen == other.gen)

    def __hash__(self):
        return hash((self.block, self.gen))

    def __repr__(self):
        return f"GeneratorVar({self.block}, {self.gen!r})"


class TProduct:
    """An x-monomial cofactor times a multiset of T variables (kept sorted)."""

    __slots__ = ("xpart", "tvars", "ranks")

    def __init__(self, xpart, tvars):
        tvars = tuple(sorted(tvars, key=lambda t: t.rank))
        for t in tvars:
            if t.gen.n != xpart.n:
                raise ValueError("ambient mismatch inside T-product")
        self.xpart = xpart
        self.tvars = tvars
        self.ranks = tuple(t.rank for t in tvars)

    @property
    def tdegree(self):
        return len(self.tvars)

    def block_counts(self):
        return Counter(t.block for t in self.tvars)

    def beta(self, r):
        counts = self.block_counts()
        return tuple(counts.get(i, 0) for i in range(1, r + 1))

    def image(self):
        out = self.xpart
        for t in self.tvars:
            out = out * t.gen
        return out

    def times(self, other):
        return TProduct(self.xpart * other.xpart, self.tvars + other.tvars)

    def divides(self, other):
        if not self.xpart.divides(other.xpart):
            return False
        have = Counter(other.tvars)
        for t in self.tvars:
            if have[t] == 0:
                return False
            have[t] -= 1
        return True

    def quotient(self, other):
        """Exact division by `other`; raises ValueError when it does not divide."""
        left = Counter(self.tvars)
        left.subtract(Counter(other.tvars))
        if any(c < 0 for c in left.values()):
            raise ValueError(f"{other} does not divide {self}")
        return TProduct(self.xpart / other.xpart, tuple(left.elements()))

    def lcm_with(self, other):
        tv = Counter(self.tvars) | Counter(other.tvars)
        return TProduct(lcm(self.xpart, other.xpart), tuple(tv.elements()))

    def is_squarefree(self):
        return (all(e <= 1 for e in self.xpart.exps)
                and len(set(self.tvars)) == len(self.tvars))

    def label(self, base=1, tagged=True):
        """Display text: 'x1^2*x2 | t1:x4, t2:x3*x4' (the x part always shown)."""
        head = self.xpart.text(base)
        if not self.tvars:
            return head
        return head + " | " + ", ".join(t.text(base, tagged) for t in self.tvars)

    def term_text(self, base=1, tagged=True):
        """Term text: 'x3*T[t1:x4]' (unit x part omitted; '1' when trivial)."""
        parts = []
        if not self.xpart.is_unit:
            parts.append(self.xpart.text(base))
        parts.extend(f"T[{t.text(base, tagged)}]" for t in self.tvars)
        return "*".join(parts) if parts else "1"

    def __eq__(self, other):
        return (isinstance(other, TProduct)
                and self.xpart == other.xpart and self.tvars == other.tvars)

    def __hash__(self):
        return hash((self.xpart, self.tvars))

    def __repr__(self):
        return f"TProduct({self.label()!r})"


class TermOrder:
    """Lexicographic order eliminating the T variables.

    Any T variable beats every x variable; T variables compare by block
    (earlier blocks larger), then by the grevlex order on their generators;
    x parts tie-break by pure lexicographic order with x1 largest.  The
    'single' and 'multi' modes use the same comparisons; the mode records
    which setup the order belongs to.
    """

    __slots__ = ("mode",)

    def __init__(self, mode):
        if mode not in ("single", "multi"):
            raise ValueError(f"unknown order mode {mode!r}")
        self.mode = mode

    def compare(self, a, b):
        """-1/0/+1 with +1 meaning a is larger."""
        for ra, rb in zip(a.ranks, b.ranks):
            if ra != rb:
                return 1 if ra < rb else -1
        if len(a.ranks) != len(b.ranks):
            return 1 if len(a.ranks) > len(b.ranks) else -1
        ka, kb = a.xpart.lex_key(), b.xpart.lex_key()
        return (ka > kb) - (ka < kb)

    def ascending_key(self):
        return functools.cmp_to_key(self.compare)

    def sort(self, tproducts):
        return tuple(sorted(tproducts, key=self.ascending_key()))


class Binomial:
    """A pure difference lead - tail of two T-products with equal image."""

    __slots__ = ("lead", "tail")

    def __init__(self, lead, tail):
        self.lead = lead
        self.tail = tail

    @classmethod
    def make(cls, u, v, order):
        """Orient u - v by the order; rejects zero or inhomogeneous input."""
        if u == v:
            raise ValueError("zero binomial")
        if u.image() != v.image() or u.block_counts() != v.block_counts():
            raise ValueError(
                f"sides have different images: {u.label()} vs {v.label()}")
        return cls(u, v) if order.compare(u, v) > 0 else cls(v, u)

    def text(self, base=1, tagged=True):
        return f"{self.lead.term_text(base, tagged)} - {self.tail.term_text(base, tagged)}"

    def __eq__(self, other):
        return (isinstance(other, Binomial)
                and self.lead == other.lead and self.tail == other.tail)

    def __hash__(self):
        return hash((self.lead, self.tail))

    def __repr__(self):
        return f"Binomial({self.text()!r})"


def sort_binomials(binomials, order):
    """Ascending by lead, then tail, under the term order; duplicates dropped."""
    def cmp(a, b):
        c = order.compare(a.lead, b.lead)
        return c if c else order.compare(a.tail, b.tail)
    return tuple(sorted(set(binomials), key=functools.cmp_to_key(cmp)))


class _Block:
    """One block of a fiber setup: a generator list closed under its moves."""

    __slots__ = ("block_id", "pivot", "support", "gens_desc", "gens_set")

    def __init__(self, block_id, pivot, support, gens_asc):
        self.block_id = block_id
        self.pivot = pivot
        self.support = support  # None means all positions
        self.gens_desc = tuple(reversed(gens_asc))
        self.gens_set = frozenset(gens_asc)


class FiberSetup:
    """The generator data underlying fiber enumeration.

    kind 'single': one block (id 0), fiber points are exact factorizations of
    the image into closure members.  kind 'multi': blocks 1..r from a reduced
    family, fiber points are divisors with an x-monomial making up the rest.
    """

    __slots__ = ("kind", "n", "blocks", "order", "base")

    def __init__(self, kind, n, blocks, order, base=1):
        self.kind = kind
        self.n = n
        self.blocks = blocks
        self.order = order
        self.base = base

    @classmethod
    def single(cls, M, base=1):
        if M.is_unit:
            raise ValueError("need a nonunit generator")
        gens = borel_closure(M)
        return cls("single", M.n, (_Block(0, M, None, gens),),
                   TermOrder("single"), base)

    @classmethod
    def for_family(cls, family):
        if not family.is_reduced():
            raise ValueError("setup needs a reduced family (apply reduce first)")
        blocks = []
        for idx, e in enumerate(family.entries, start=1):
            blocks.append(_Block(idx, e.gen, tuple(e.poset.positions()),
                                 e.closure()))
        return cls("multi", family.n, tuple(blocks), TermOrder("multi"),
                   family.base)

    def beta_tuple(self, beta):
        if self.kind == "single":
            if not isinstance(beta, int):
                raise ValueError("single setup takes an integer T-degree")
            return (beta,)
        beta = tuple(beta)
        if len(beta) != len(self.blocks):
            raise ValueError(f"need {len(self.blocks)} block degrees, got {len(beta)}")
        return beta


def _block_fits(block, rem, quotient, exact):
    """Whether `rem` generators of the block can still divide `quotient`."""
    if rem == 0:
        return True
    if exact:
        return factors_exist(quotient, block.pivot, rem)
    return min_borel_divisor(block.pivot, rem, quotient,
                             support=block.support) is not None


def enumerate_fiber(setup, mu, beta, limits=None):
    """All fiber points over the image, ascending in the setup's term order.

    Single setup: beta is an integer k; points are the factorizations of mu
    into k closure members.  Multi setup: beta gives each block's T-degree;
    points are choices of beta_i block-i generators whose product divides mu,
    with the leftover of mu as x part.
    """
    budget = _Budget(limits or Limits())
    budget.start_fiber()
    return _enumerate(setup, mu, setup.beta_tuple(beta), budget)


def _enumerate(setup, mu, beta, budget):
    if mu.n != setup.n:
        raise ValueError("ambient mismatch between image and setup")
    exact = setup.kind == "single"
    out = []
    chosen = []

    def rec_block(bi, quotient):
        if bi == len(setup.blocks):
            if exact and not quotient.is_unit:
                raise AssertionError("exact enumeration left a remainder")
            budget.count_vertex()
            out.append(TProduct(quotient, tuple(chosen)))
            return
        block = setup.blocks[bi]
        if not _block_fits(block, beta[bi], quotient, exact):
            return
        gens = block.gens_desc

        def rec_pick(start, rem, quotient):
            if rem == 0:
                rec_block(bi + 1, quotient)
                return
            for gi in range(start, len(gens)):
                g = gens[gi]
                budget.count_check()
                if not g.divides(quotient):
                    continue
                q2 = quotient / g
                if not _block_fits(block, rem - 1, q2, exact):
                    continue
                chosen.append(GeneratorVar(block.block_id, g))
                rec_pick(gi, rem - 1, q2)
                chosen.pop()

        rec_pick(0, beta[bi], quotient)

    rec_block(0, mu)
    return setup.order.sort(out)


class FiberGraph:
    """The rewriting graph of one fiber: vertices ascending, edges lead-to-tail."""

    __slots__ = ("vertices", "edges", "mu", "beta")

    def __init__(self, vertices, edges, mu, beta):
        self.vertices = vertices
        self.edges = edges  # (from_index, to_index, quadric_index)
        self.mu = mu
        self.beta = beta


def fiber_graph(setup, mu, beta, quadrics, limits=None, vertices=None):
    """Build the fiber and connect u -> u / lead * tail for every applicable quadric."""
    budget = _Budget(limits or Limits())
    budget.start_fiber()
    beta = setup.beta_tuple(beta)
    if vertices is None:
        vertices = _enumerate(setup, mu, beta, budget)
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for ui, u in enumerate(vertices):
        for qi, q in enumerate(quadrics):
            budget.count_check()
            if q.lead.divides(u):
                w = u.quotient(q.lead).times(q.tail)
                vi = index.get(w)
                if vi is None:
                    raise AssertionError(
                        f"rewrite left the fiber: {u.label()} by {q.text()}")
                if vi >= ui:
                    raise AssertionError("rewrite did not decrease the term order")
                edges.append((ui, vi, qi))
    return FiberGraph(vertices, tuple(edges), mu, beta)


def certify(graph):
    """(connected, sinks): sinks have no outgoing edge; listed ascending."""
    n = len(graph.vertices)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    has_out = [False] * n
    for u, v, _ in graph.edges:
        has_out[u] = True
        ra, rb = find(u), find(v)
        if ra != rb:
            parent[ra] = rb
    connected = n <= 1 or len({find(i) for i in range(n)}) == 1
    sinks = tuple(graph.vertices[i] for i in range(n) if not has_out[i])
    return connected, sinks


def _weak_compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def iterate_images(setup, bound):
    """The images to examine up to the total T-degree bound, deterministically.

    Single setup: every product of at most `bound` closure members (paired
    with its factor count).  Multi setup: for every block-degree vector beta
    with 1 <= |beta| <= bound, every least common multiple of two products of
    beta-many generators; a binomial of T-degree beta with coprime x parts has
    exactly such an lcm as its image, so unique sinks on these fibers decide
    all binomials up to the bound.
    """
    images = []
    if setup.kind == "single":
        gens = setup.blocks[0].gens_desc
        for k in range(1, bound + 1):
            prods = set()
            for combo in itertools.combinations_with_replacement(gens, k):
                p = combo[0]
                for g in combo[1:]:
                    p = p * g
                prods.add(p)
            images.extend((m, k) for m in prods)
        images.sort(key=lambda it: (it[1], it[0].grevlex_key()))
        return tuple(images)
    r = len(setup.blocks)
    for total in range(1, bound + 1):
        for beta in _weak_compositions(total, r):
            prods = set()
            for combo_per_block in itertools.product(*(
                    itertools.combinations_with_replacement(
                        setup.blocks[i].gens_desc, beta[i])
                    for i in range(r))):
                p = Monomial.unit(setup.n)
                for group in combo_per_block:
                    for g in group:
                        p = p * g
                prods.add(p)
            prods = sorted(prods, key=Monomial.grevlex_key)
            merged = set()
            for ai in range(len(prods)):
                for bi in range(ai, len(prods)):
                    merged.add(lcm(prods[ai], prods[bi]))
            images.extend((m, beta) for m in merged)
    images.sort(key=lambda it: (sum(it[1]), it[1], it[0].grevlex_key()))
    return tuple(images)


class VerifyReport:
    """Outcome of a verification run, renderable as stable text lines."""

    __slots__ = ("passed", "failures", "certificate", "images_checked")

    def __init__(self, passed, failures, certificate, images_checked):
        self.passed = passed
        self.failures = failures
        self.certificate = certificate
        self.images_checked = images_checked

    def lines(self, base=1, tagged=True):
        out = []
        if self.passed:
            out.append("PASS")
        else:
            for mu, beta, sinks in self.failures:
                out.append(f"FAIL {_image_text(mu, beta, base)} sinks={len(sinks)}")
                for s in sinks:
                    out.append(f"  sink {s.label(base, tagged)}")
        out.append(f"certificate: {self.certificate}")
        return out


def _image_text(mu, beta, base=1):
    if beta is None:
        return mu.text(base)
    return f"{mu.text(base)} {_beta_text(beta)}"


def _beta_text(beta):
    parts = []
    for i, c in enumerate(beta, start=1):
        if c == 1:
            parts.append(f"t{i}")
        elif c >= 2:
            parts.append(f"t{i}^{c}")
    return "*".join(parts) if parts else "1"


def _examine_image(task):
    setup, quadrics, mu, beta, limits = task
    budget = _Budget(limits)
    budget.start_fiber()
    vertices = _enumerate(setup, mu, setup.beta_tuple(beta), budget)
    if len(vertices) <= 1:
        return (mu, beta, vertices, True)
    graph = fiber_graph(setup, mu, beta, quadrics, limits, vertices=vertices)
    _, sinks = certify(graph)
    return (mu, beta, sinks, len(sinks) == 1)


def verify_groebner_by_fibers(setup, quadrics, bound, limits=None, jobs=1):
    """Certify the quadrics by unique sinks on every fiber up to the bound.

    A pass means: every examined fiber's rewriting graph has exactly one sink,
    so every binomial of the ideal with total T-degree <= bound reduces to
    zero by the quadrics.  With jobs > 1 the images are examined in worker
    processes (resource budgets then apply per worker).
    """
    limits = limits or Limits()
    images = iterate_images(setup, bound)
    tasks = [(setup, quadrics, mu, beta, limits) for mu, beta in images]
    failures = []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_examine_image, tasks, chunksize=8))
    else:
        results = [_examine_image(t) for t in tasks]
    for mu, beta, sinks, ok in results:
        if not ok:
            failures.append((mu, beta if setup.kind == "multi" else None, sinks))
    passed = not failures
    return VerifyReport(passed, tuple(failures), f"fibers bound={bound}",
                        len(images))


class SpairReport:
    """Outcome of the S-pair reduction check."""

    __slots__ = ("passed", "pair", "normal_form", "pairs_checked", "pairs_skipped")

    def __init__(self, passed, pair, normal_form, pairs_checked, pairs_skipped):
        self.passed = passed
        self.pair = pair
        self.normal_form = normal_form
        self.pairs_checked = pairs_checked
        self.pairs_skipped = pairs_skipped

    def lines(self, base=1, tagged=True):
        out = []
        if self.passed:
            out.append("PASS")
        else:
            a, b = self.pair
            u, v = self.normal_form
            out.append(f"FAIL spair [{a.text(base, tagged)}] [{b.text(base, tagged)}] "
                       f"normal-form: {u.term_text(base, tagged)} - {v.term_text(base, tagged)}")
        out.append("certificate: spairs")
        return out


def spair_certificate(quadrics, order, limits=None):
    """Reduce every S-binomial of the set by the set; report the first survivor.

    The S-binomial of two pure differences is the pure difference of the two
    lcm-completions; it reduces to zero iff rewriting larger sides by matching
    leads reaches equality.  Pairs with coprime leads are skipped (their
    S-binomials always reduce to zero).  Independent of the fiber-graph route.
    """
    budget = _Budget(limits or Limits())
    basis = sort_binomials(quadrics, order)
    checked = skipped = 0
    for ai in range(len(basis)):
        for bi in range(ai + 1, len(basis)):
            a, b = basis[ai], basis[bi]
            top = a.lead.lcm_with(b.lead)
            if top == a.lead.times(b.lead):
                skipped += 1
                continue
            checked += 1
            u = top.quotient(a.lead).times(a.tail)
            v = top.quotient(b.lead).times(b.tail)
            nf = _reduce_difference(u, v, basis, order, budget)
            if nf is not None:
                return SpairReport(False, (a, b), nf, checked, skipped)
    return SpairReport(True, None, None, checked, skipped)


def _reduce_difference(u, v, basis, order, budget):
    """Full normal form of u - v under the basis; None when it reaches zero."""
    while True:
        if u == v:
            return None
        if order.compare(u, v) < 0:
            u, v = v, u
        budget.count_step()
        step = _rewrite_once(u, basis)
        if step is not None:
            u = step
            continue
        step = _rewrite_once(v, basis)
        if step is not None:
            v = step
            continue
        return (u, v)


def _rewrite_once(term, basis):
    for g in basis:
        if g.lead.divides(term):
            return term.quotient(g.lead).times(g.tail)
    return None


def t_min(family, mu, beta):
    """The sorted-least fiber point over (mu, beta) for a reduced family, or None.

    Blocks are processed in order; block i takes the least divisor of the
    remaining quotient among products of beta_i of its generators, factored
    canonically; the final leftover becomes the x part.  None when some block
    has no such divisor.
    """
    if not family.is_reduced():
        raise ValueError("t_min needs a reduced family (apply reduce first)")
    beta = tuple(beta)
    if len(beta) != family.r:
        raise ValueError(f"need {family.r} block degrees, got {len(beta)}")
    if mu.n != family.n:
        raise ValueError("ambient mismatch between image and family")
    quotient = mu
    tvars = []
    for idx, e in enumerate(family.entries, start=1):
        k = beta[idx - 1]
        if k == 0:
            continue
        positions = e.poset.positions()
        div = min_borel_divisor(e.gen, k, quotient, support=positions)
        if div is None:
            return None
        quotient = quotient / div
        comp_M = restrict(e.gen, positions)
        comp_div = restrict(div, positions)
        for f in borel_sort(comp_M, comp_div, k):
            tvars.append(GeneratorVar(idx, expand_monomial(f, positions, family.n)))
    return TProduct(quotient, tvars)


def to_dot(graph, base=1, tagged=True):
    """Graphviz text for a fiber graph; vertex ids follow the ascending order."""
    lines = ["digraph fiber {"]
    for i, v in enumerate(graph.vertices):
        lines.append(f'  v{i} [label="{v.label(base, tagged)}"];')
    for u, v, qi in graph.edges:
        lines.append(f'  v{u} -> v{v} [label="q{qi}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
