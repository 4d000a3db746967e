"""Shared test utilities.

Independent brute-force routes (iso-class catalogs, cycle-based pair rules,
walk formulas) live here so the tests never trust the code path under test.
"""

import random
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from lietp import algebra, poset, tpstruct
from lietp.errors import LietpError
from lietp.halfder import (CentralElement, KappaMap, SigmaMap, central_valued,
                           inner, phi_sigma, walk_functionals)
from lietp.poset import build_poset, closure, enumerate_cycles, pair_classes, walk_between


def chain(n):
    labels = [str(i) for i in range(1, n + 1)]
    return build_poset(labels, list(zip(labels, labels[1:])))


# --- iso-class catalog of connected posets ---------------------------------

def _transitive(rel):
    for (a, b) in rel:
        for (c, d) in rel:
            if b == c and (a, d) not in rel:
                return False
    return True


def _rel_connected(n, rel):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (a, b) in rel:
        parent[find(a)] = find(b)
    return len({find(i) for i in range(n)}) == 1


def _canonical(n, rel):
    return min(tuple(sorted((pi[a], pi[b]) for (a, b) in rel))
               for pi in permutations(range(n)))


def _labeled_posets(n):
    # strict orders refining the natural order on range(n); every iso class
    # has such a representative (relabel along a linear extension)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found = []
    for bits in range(1 << len(pairs)):
        rel = frozenset(pairs[k] for k in range(len(pairs)) if bits >> k & 1)
        if _transitive(rel):
            found.append(rel)
    return found


@lru_cache(maxsize=None)
def poset_counts(n):
    """(#iso classes, #connected iso classes) of posets on n elements."""
    seen, connected = set(), set()
    for rel in _labeled_posets(n):
        canon = _canonical(n, rel)
        seen.add(canon)
        if _rel_connected(n, rel):
            connected.add(canon)
    return len(seen), len(connected)


@lru_cache(maxsize=None)
def connected_catalog(n):
    """One Poset per iso class of connected posets on n elements."""
    chosen = {}
    for rel in _labeled_posets(n):
        if _rel_connected(n, rel):
            chosen.setdefault(_canonical(n, rel), rel)
    labels = [str(i) for i in range(1, n + 1)]
    out = []
    for canon in sorted(chosen):
        rel = chosen[canon]
        covers = [(labels[a], labels[b]) for (a, b) in sorted(rel)
                  if not any((a, c) in rel and (c, b) in rel
                             for c in range(n))]
        out.append(build_poset(labels, covers))
    return tuple(out)


@lru_cache(maxsize=None)
def full_catalog():
    """All connected posets with 2 to 5 elements, up to isomorphism."""
    out = []
    for n in range(2, 6):
        out.extend(connected_catalog(n))
    return tuple(out)


def random_connected_poset(rng, n):
    labels = [str(i) for i in range(1, n + 1)]
    while True:
        gens = []
        for _ in range(rng.randint(n - 1, 2 * n)):
            i, j = sorted(rng.sample(range(n), 2))
            gens.append((labels[i], labels[j]))
        leq = closure(gens, labels)
        covers = [(x, y) for (x, y) in sorted(leq) if x != y and not any(
            z != x and z != y and (x, z) in leq and (z, y) in leq
            for z in labels)]
        try:
            return build_poset(labels, covers)
        except LietpError:
            continue


# --- random structure generators -------------------------------------------

def random_fraction(rng, allow_zero=True):
    num = rng.randint(-3, 3)
    if not allow_zero:
        while num == 0:
            num = rng.randint(-3, 3)
    return Fraction(num, rng.randint(1, 3))


def random_admissible_sigma(p, rng):
    part = pair_classes(p)
    return SigmaMap(part, [random_fraction(rng) for _ in part.classes])


def random_central(p, rng):
    return CentralElement(p, {pr: random_fraction(rng, allow_zero=False)
                              for pr in algebra.minmax_pairs(p)
                              if rng.random() < 0.6})


def random_kappa(p, rng):
    return KappaMap(p, {x: random_fraction(rng, allow_zero=False)
                        for x in p.elements if rng.random() < 0.6})


def random_half_derivation(p, rng, u0=None):
    """(operator, c, sigma, kappa, u0) with op built from the three parts."""
    if u0 is None:
        u0 = rng.choice(p.elements)
    c = random_central(p, rng)
    sigma = random_admissible_sigma(p, rng)
    kappa = random_kappa(p, rng)
    op = inner(c) + phi_sigma(sigma, u0) + central_valued(kappa)
    return op, c, sigma, kappa, u0


def random_element(p, rng):
    return algebra.element(
        p, {pr: random_fraction(rng) for pr in p.pairs if rng.random() < 0.5})


def random_walk(p, rng, u, v):
    """A walk u -> v through 0 to 2 random intermediate stops."""
    stops = ([u] + [rng.choice(p.elements) for _ in range(rng.randint(0, 2))]
             + [v])
    walk = walk_between(p, stops[0], stops[1])
    for a, b in zip(stops[1:], stops[2:]):
        walk = walk.compose(walk_between(p, a, b))
    return walk


def walk_diag_value(sigma, walk, x):
    """Walk formula for the diagonal of phi_sigma: -s+ + s- - t+ + t-."""
    sp, sm, tp, tm = walk_functionals(sigma, walk, x)
    return -sp + sm - tp + tm


# --- brute-force routes for the combinatorics -------------------------------

def brute_extreme_pairs(p):
    """Min-to-max cover pairs lying on no enumerated cycle."""
    on_cycle = set()
    for cyc in enumerate_cycles(p):
        verts = cyc.vertices
        for a, b in zip(verts, verts[1:]):
            on_cycle.add(frozenset((a, b)))
    mins, maxs = poset.min_max(p)
    return [e for e in p.covers
            if frozenset(e) not in on_cycle
            and e[0] in set(mins) and e[1] in set(maxs)]


def brute_pair_classes(p):
    """Pair classes from first principles: chain rule plus enumerated cycles."""
    pairs = p.strict_pairs
    parent = {pr: pr for pr in pairs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for i, pq in enumerate(pairs):
        for uv in pairs[i + 1:]:
            labels = set(pq) | set(uv)
            if all(p.leq(a, b) or p.leq(b, a) for a in labels for b in labels):
                union(pq, uv)
    for cyc in enumerate_cycles(p):
        verts = cyc.vertices
        edges = [(a, b) if p.less(a, b) else (b, a)
                 for a, b in zip(verts, verts[1:])]
        for e in edges[1:]:
            union(edges[0], e)
    grouped = {}
    for pr in pairs:
        grouped.setdefault(find(pr), []).append(pr)
    classes = [sorted(cls, key=p.pair_key) for cls in grouped.values()]
    classes.sort(key=lambda cls: p.pair_key(cls[0]))
    return classes


def same_components(p, dec, mu, nu, lam):
    """Value-wise equality of a decomposition with generator components."""
    for i, x in enumerate(p.elements):
        for y in p.elements[i:]:
            if dec.mu.value(x, y) != mu.value(x, y):
                return False
    if any(dec.nu.value(*pr) != nu.value(*pr)
           for pr in algebra.minmax_pairs(p)):
        return False
    return all(dec.lam.value(*pr) == lam.value(*pr)
               for pr in poset.extreme_pairs(p))
