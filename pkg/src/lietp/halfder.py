"""Half-derivations of the Lie incidence algebra.

A linear operator phi is a half-derivation when
    2 phi([f, g]) = [phi(f), g] + [f, phi(g)]
for all f, g. The module provides the three canonical constructor families
(inner, central-valued, diagonality-preserving from an admissible sigma),
a brute-force nullspace solver for the whole space, and the unique
(c, sigma, kappa) decomposition relative to a base element u0.
"""

from collections import deque
from fractions import Fraction
from math import gcd

from . import algebra
from .errors import (MalformedImage, NotCentralInCommutator,
                     NotHalfDerivation, OwnerMismatch, ReconstructionMismatch,
                     TooLarge, UnknownElement)
from .poset import Walk, pair_classes

DEFAULT_ORACLE_CAP = 5000


class LinearOperator(object):
    """Exact-rational endomorphism in the canonical e_xy basis.

    columns[j] is the sparse image of basis vector j as {row index: Fraction}.
    """

    def __init__(self, owner, columns):
        self.owner = owner
        self.columns = columns

    def column(self, j):
        return algebra.IncidenceElement(self.owner, dict(self.columns[j]))

    def image_of_pair(self, pair):
        return self.column(self.owner.pair_index[pair])

    def _check_owner(self, other):
        if self.owner is not other.owner:
            raise OwnerMismatch("operators of different posets")

    def __add__(self, other):
        self._check_owner(other)
        cols = []
        for a, b in zip(self.columns, other.columns):
            col = dict(a)
            for k, v in b.items():
                s = col.get(k, 0) + v
                if s:
                    col[k] = s
                else:
                    col.pop(k, None)
            cols.append(col)
        return LinearOperator(self.owner, cols)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k):
        k = Fraction(k)
        if not k:
            return zero_operator(self.owner)
        return LinearOperator(self.owner,
                              [{r: k * v for r, v in col.items()} for col in self.columns])

    def __eq__(self, other):
        return (isinstance(other, LinearOperator)
                and other.owner is self.owner and other.columns == self.columns)

    __hash__ = None

    def __repr__(self):
        nz = sum(1 for col in self.columns if col)
        return "LinearOperator(%d basis vectors, %d nonzero columns)" % (
            len(self.columns), nz)


def zero_operator(p):
    return LinearOperator(p, [{} for _ in p.pairs])


def identity_operator(p):
    return LinearOperator(p, [{j: Fraction(1)} for j in range(len(p.pairs))])


def operator_from_images(p, images):
    """Operator with prescribed images {basis pair: IncidenceElement}; missing pairs map to 0."""
    cols = [{} for _ in p.pairs]
    for pair, img in images.items():
        k = p.pair_index.get(pair)
        if k is None:
            raise UnknownElement("(%r, %r) is not a comparable pair" % pair)
        if img.owner is not p:
            raise OwnerMismatch("image element belongs to a different poset")
        cols[k] = dict(img.coeffs)
    return LinearOperator(p, cols)


def apply(op, f):
    """Matrix-vector product."""
    if op.owner is not f.owner:
        raise OwnerMismatch("operator and element of different posets")
    acc = {}
    for j, c in f.coeffs.items():
        for r, v in op.columns[j].items():
            s = acc.get(r, 0) + c * v
            if s:
                acc[r] = s
            else:
                del acc[r]
    return algebra.IncidenceElement(op.owner, acc)


def unit_brackets(p):
    """Structure constants of the Lie bracket on basis pairs, memoized per poset.

    Returns {(i, j): {k: integer coefficient}} for [b_i, b_j], storing only
    nonzero brackets: [e_ab, e_cd] = (b=c) e_ad - (d=a) e_cb.
    """
    cache = getattr(p, "_unit_bracket_cache", None)
    if cache is not None:
        return cache
    pairs, pidx = p.pairs, p.pair_index
    cache = {}
    for i, (a, b) in enumerate(pairs):
        for j, (c, d) in enumerate(pairs):
            if i == j:
                continue
            res = {}
            if b == c:
                res[pidx[(a, d)]] = res.get(pidx[(a, d)], 0) + 1
            if d == a:
                k = pidx[(c, b)]
                res[k] = res.get(k, 0) - 1
            res = {k: v for k, v in res.items() if v}
            if res:
                cache[(i, j)] = res
    p._unit_bracket_cache = cache
    return cache


def _comm_with_unit(p, coeffs, unit_pair):
    """Sparse [f, e_cd] for f given as {pair index: Fraction}."""
    c, d = unit_pair
    pairs, pidx = p.pairs, p.pair_index
    res = {}
    for k, v in coeffs.items():
        a, b = pairs[k]
        if b == c:
            i = pidx[(a, d)]
            res[i] = res.get(i, 0) + v
        if a == d:
            i = pidx[(c, b)]
            res[i] = res.get(i, 0) - v
    return {k: v for k, v in res.items() if v}


def is_half_derivation(op):
    """Check the defining identity on all unordered basis pairs.

    Returns (True, None) or (False, first violating pair of basis pairs)
    in canonical order.
    """
    p = op.owner
    pairs = p.pairs
    B = len(pairs)
    cols = op.columns
    brackets = unit_brackets(p)
    nonzero = {j for j in range(B) if cols[j]}
    for i in range(B):
        for j in range(i + 1, B):
            br = brackets.get((i, j))
            if i not in nonzero and j not in nonzero:
                if br is None or not any(r in nonzero for r in br):
                    continue
            lhs = {}
            if br:
                for r, s in br.items():
                    for k, v in cols[r].items():
                        t = lhs.get(k, 0) + 2 * s * v
                        if t:
                            lhs[k] = t
                        else:
                            del lhs[k]
            rhs = _comm_with_unit(p, cols[i], pairs[j])
            for k, v in _comm_with_unit(p, cols[j], pairs[i]).items():
                t = rhs.get(k, 0) - v
                if t:
                    rhs[k] = t
                else:
                    del rhs[k]
            if lhs != rhs:
                return False, (pairs[i], pairs[j])
    return True, None


class CentralElement(object):
    """Element of Z([I,I]): coefficients on pairs (x, y), x minimal, y maximal."""

    def __init__(self, owner, values):
        allowed = set(algebra.minmax_pairs(owner))
        clean = {}
        for pair, v in values.items():
            if pair not in allowed:
                raise NotCentralInCommutator(
                    "(%r, %r) is not a minimal-maximal pair" % pair)
            v = Fraction(v)
            if v:
                clean[pair] = v
        self.owner = owner
        self.values = clean

    def value(self, x, y):
        return self.values.get((x, y), Fraction(0))

    def as_element(self):
        return algebra.element(self.owner, self.values)

    def support(self):
        return sorted(self.values, key=self.owner.pair_key)

    def __eq__(self, other):
        return (isinstance(other, CentralElement)
                and other.owner is self.owner and other.values == self.values)

    __hash__ = None


def central_from_element(elem):
    """Reinterpret an IncidenceElement as a CentralElement; fails off the Z([I,I]) basis."""
    return CentralElement(elem.owner, dict(elem.items()))


class KappaMap(object):
    """Rational weight per poset element."""

    def __init__(self, owner, values):
        clean = {}
        for x, v in values.items():
            owner.index(x)
            v = Fraction(v)
            if v:
                clean[x] = v
        self.owner = owner
        self.values = clean

    def value(self, x):
        return self.values.get(x, Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, KappaMap)
                and other.owner is self.owner and other.values == self.values)

    __hash__ = None


class SigmaMap(object):
    """Rational per pair class; constancy on chains and cycles is structural."""

    def __init__(self, partition, class_values):
        if len(class_values) != len(partition.classes):
            raise ValueError("need one value per pair class")
        self.owner = partition.owner
        self.partition = partition
        self.class_values = [Fraction(v) for v in class_values]

    def value(self, x, y):
        k = self.partition.class_of.get((x, y))
        if k is None:
            raise UnknownElement("(%r, %r) is not a strict pair" % (x, y))
        return self.class_values[k]

    def by_representative(self):
        """(representative pair, value) per class, canonical order."""
        return [(cls[0], self.class_values[k])
                for k, cls in enumerate(self.partition.classes)]

    def __eq__(self, other):
        return (isinstance(other, SigmaMap) and other.owner is self.owner
                and other.partition.classes == self.partition.classes
                and other.class_values == self.class_values)

    __hash__ = None


def sigma_from_map(p, raw, partition=None):
    """SigmaMap from a raw {strict pair: value} map; must be constant on each class."""
    partition = partition or pair_classes(p)
    values = []
    for cls in partition.classes:
        vals = {Fraction(raw.get(pr, 0)) for pr in cls}
        if len(vals) != 1:
            raise ValueError("map is not constant on class %s" % (cls,))
        values.append(vals.pop())
    return SigmaMap(partition, values)


def is_admissible(raw, p):
    """True iff the raw map is constant on chains and on cycles."""
    for cls in pair_classes(p).classes:
        if len({Fraction(raw.get(pr, 0)) for pr in cls}) != 1:
            return False
    return True


def _sigma_value(sigma, x, y):
    if isinstance(sigma, SigmaMap):
        return sigma.value(x, y)
    return Fraction(sigma.get((x, y), 0))


def walk_functionals(sigma, walk, x):
    """The four edge sums (s+, s-, t+, t-) of a walk at the element x."""
    if not isinstance(walk, Walk):
        raise TypeError("walk_functionals needs a Walk")
    walk.owner.index(x)
    sp = sm = tp = tm = Fraction(0)
    verts = walk.vertices
    for a, b in zip(verts, verts[1:]):
        if a == x and walk.owner.less(a, b):
            sp += _sigma_value(sigma, x, b)
        if b == x and walk.owner.less(b, a):
            sm += _sigma_value(sigma, x, a)
        if a == x and walk.owner.less(b, a):
            tp += _sigma_value(sigma, b, x)
        if b == x and walk.owner.less(a, b):
            tm += _sigma_value(sigma, a, x)
    return sp, sm, tp, tm


def inner(c):
    """The operator [c, -] for c in Z([I,I]); kills the whole commutator subspace."""
    p = c.owner
    celem = c.as_element()
    cols = []
    for pair in p.pairs:
        img = algebra.commutator(celem, algebra.unit(p, *pair))
        cols.append(dict(img.coeffs))
    return LinearOperator(p, cols)


def central_valued(kappa):
    """e_x maps to kappa(x) times the identity element; strict pairs map to 0."""
    p = kappa.owner
    ident = algebra.identity(p)
    cols = []
    for (x, y) in p.pairs:
        if x == y and kappa.value(x):
            cols.append(dict(ident.scale(kappa.value(x)).coeffs))
        else:
            cols.append({})
    return LinearOperator(p, cols)


def phi_sigma(sigma, u0):
    """The diagonality-preserving half-derivation of an admissible sigma.

    Strict pairs are scaled by sigma; diagonal images follow the walk
    formula from u0 (value 0 at u0), propagated along a breadth-first tree.
    Walk independence is exactly the admissibility of sigma.
    """
    p = sigma.owner
    p.index(u0)
    diag = {u0: {x: Fraction(0) for x in p.elements}}
    queue = deque([u0])
    while queue:
        a = queue.popleft()
        for b in p.adjacency[a]:
            if b in diag:
                continue
            lo, hi = (a, b) if p.less(a, b) else (b, a)
            step = sigma.value(lo, hi)
            row = dict(diag[a])
            row[a] -= step
            row[b] += step
            diag[b] = row
            queue.append(b)
    pidx = p.pair_index
    cols = []
    for (x, y) in p.pairs:
        if x != y:
            v = sigma.value(x, y)
            cols.append({pidx[(x, y)]: v} if v else {})
        else:
            cols.append({pidx[(v, v)]: diag[v][x]
                         for v in p.elements if diag[v][x]})
    return LinearOperator(p, cols)


class HalfDerDecomposition(object):
    """phi = inner(c) + phi_sigma(sigma, u0) + central_valued(kappa)."""

    def __init__(self, c, sigma, kappa, u0):
        self.c = c
        self.sigma = sigma
        self.kappa = kappa
        self.u0 = u0

    def reconstruct(self):
        return (inner(self.c) + phi_sigma(self.sigma, self.u0)
                + central_valued(self.kappa))


def _extract_sigma(op):
    """Raw sigma read off the strict columns; the image of each strict pair
    must be a scalar multiple of that same basis vector."""
    p = op.owner
    raw = {}
    for pair in p.strict_pairs:
        k = p.pair_index[pair]
        col = op.columns[k]
        if any(r != k for r in col):
            raise MalformedImage(
                "image of e_(%r,%r) is not a multiple of itself" % pair)
        raw[pair] = col.get(k, Fraction(0))
    return raw


def decompose(op, u0):
    """Unique (c, sigma, kappa) with op = inner(c) + phi_sigma + central_valued."""
    p = op.owner
    p.index(u0)
    ok, witness = is_half_derivation(op)
    if not ok:
        raise NotHalfDerivation(witness)
    try:
        sigma = sigma_from_map(p, _extract_sigma(op))
    except ValueError as e:
        raise MalformedImage(str(e))
    pidx = p.pair_index
    cvals = {}
    for (x, y) in algebra.minmax_pairs(p):
        v = op.columns[pidx[(y, y)]].get(pidx[(x, y)], Fraction(0))
        if v:
            cvals[(x, y)] = v
    kvals = {}
    ku = pidx[(u0, u0)]
    for x in p.elements:
        v = op.columns[pidx[(x, x)]].get(ku, Fraction(0))
        if v:
            kvals[x] = v
    dec = HalfDerDecomposition(CentralElement(p, cvals), sigma,
                               KappaMap(p, kvals), u0)
    if dec.reconstruct() != op:
        raise ReconstructionMismatch("decomposition failed to rebuild the operator")
    return dec


def decomposition_report(dec):
    """JSON-shaped report; rationals as reduced strings."""
    return {
        "u0": dec.u0,
        "c": [{"from": x, "to": y, "value": str(v)}
              for (x, y), v in sorted(dec.c.values.items(),
                                      key=lambda it: dec.c.owner.pair_key(it[0]))],
        "sigma": [{"from": x, "to": y, "value": str(v)}
                  for (x, y), v in dec.sigma.by_representative()],
        "kappa": [{"element": x, "value": str(v)}
                  for x, v in sorted(dec.kappa.values.items(),
                                     key=lambda it: dec.kappa.owner.index(it[0]))],
    }


def _normalize_int_row(row):
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
    if g > 1:
        row = {k: v // g for k, v in row.items()}
    c = min(row)
    if row[c] < 0:
        row = {k: -v for k, v in row.items()}
    return row


def _eliminate(pivots, row):
    """Reduce an integer row against the pivot rows; install it if nonzero."""
    while row:
        c = min(row)
        prow = pivots.get(c)
        if prow is None:
            pivots[c] = _normalize_int_row(row)
            return
        a, b = row[c], prow[c]
        new = {k: b * v for k, v in row.items()}
        for k, v in prow.items():
            t = new.get(k, 0) - a * v
            if t:
                new[k] = t
            else:
                new.pop(k, None)
        row = new


def half_derivation_space(p, cap=DEFAULT_ORACLE_CAP):
    """Basis of all half-derivations, by brute-force exact nullspace.

    Unknowns are all matrix entries of a candidate operator; one linear
    equation per unordered basis pair per component. Fraction-free
    elimination with deterministic smallest-index pivoting.
    """
    B = len(p.pairs)
    if B * B > cap:
        raise TooLarge("system has %d unknowns, cap is %d" % (B * B, cap))
    brackets = unit_brackets(p)
    pivots = {}
    for i in range(B):
        for j in range(i + 1, B):
            rows = {}
            br = brackets.get((i, j))
            if br:
                for k in range(B):
                    row = rows.setdefault(k, {})
                    for r, s in br.items():
                        u = r * B + k
                        row[u] = row.get(u, 0) + 2 * s
            for r in range(B):
                br_rj = brackets.get((r, j))
                if br_rj:
                    for k, s in br_rj.items():
                        row = rows.setdefault(k, {})
                        u = i * B + r
                        row[u] = row.get(u, 0) - s
                br_ir = brackets.get((i, r))
                if br_ir:
                    for k, s in br_ir.items():
                        row = rows.setdefault(k, {})
                        u = j * B + r
                        row[u] = row.get(u, 0) - s
            for k in sorted(rows):
                row = {u: v for u, v in rows[k].items() if v}
                if row:
                    _eliminate(pivots, row)
    free = [u for u in range(B * B) if u not in pivots]
    ops = []
    for f in free:
        vec = {f: Fraction(1)}
        for c in sorted(pivots, reverse=True):
            row = pivots[c]
            s = Fraction(0)
            for k, v in row.items():
                if k != c and k in vec:
                    s += v * vec[k]
            if s:
                vec[c] = -s / row[c]
        cols = [{} for _ in range(B)]
        for u, v in vec.items():
            if v:
                cols[u // B][u % B] = v
        ops.append(LinearOperator(p, cols))
    return ops
