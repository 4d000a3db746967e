"""Exact-rational incidence algebra I(X,K) of a finite connected poset.

Elements are sparse vectors over the basis {e_xy : x <= y} in canonical
pair order; coefficients are Fractions and zeros are never stored, so
equality is structural equality.
"""

from fractions import Fraction

from .errors import OwnerMismatch, UnknownElement


def _as_fraction(v):
    if isinstance(v, Fraction):
        return v
    return Fraction(v)


class IncidenceElement(object):

    def __init__(self, owner, coeffs):
        # internal: coeffs is {pair index: nonzero Fraction}, already canonical
        self.owner = owner
        self.coeffs = coeffs

    def coeff(self, x, y):
        k = self.owner.pair_index.get((x, y))
        if k is None:
            self.owner.index(x), self.owner.index(y)
            raise UnknownElement("(%r, %r) is not a comparable pair" % (x, y))
        return self.coeffs.get(k, Fraction(0))

    def items(self):
        """(pair, coefficient) in canonical order."""
        pairs = self.owner.pairs
        for k in sorted(self.coeffs):
            yield pairs[k], self.coeffs[k]

    def is_zero(self):
        return not self.coeffs

    def _check_owner(self, other):
        if self.owner is not other.owner:
            raise OwnerMismatch("elements of different posets")

    def __add__(self, other):
        self._check_owner(other)
        res = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = res.get(k, 0) + c
            if s:
                res[k] = s
            else:
                res.pop(k, None)
        return IncidenceElement(self.owner, res)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IncidenceElement(self.owner, {k: -c for k, c in self.coeffs.items()})

    def scale(self, k):
        k = _as_fraction(k)
        if not k:
            return IncidenceElement(self.owner, {})
        return IncidenceElement(self.owner, {i: k * c for i, c in self.coeffs.items()})

    def __mul__(self, k):
        if isinstance(k, IncidenceElement):
            raise TypeError("use multiply() for the algebra product")
        return self.scale(k)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, IncidenceElement)
                and other.owner is self.owner and other.coeffs == self.coeffs)

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return "<0>"
        terms = []
        for (x, y), c in self.items():
            name = "e_%s" % (x,) if x == y else "e_%s.%s" % (x, y)
            terms.append(name if c == 1 else "%s*%s" % (c, name))
        return "<" + " + ".join(terms) + ">"


def element(p, mapping):
    """Element with the given {(x, y): value} coefficients."""
    coeffs = {}
    for (x, y), v in mapping.items():
        k = p.pair_index.get((x, y))
        if k is None:
            p.index(x), p.index(y)
            raise UnknownElement("(%r, %r) is not a comparable pair" % (x, y))
        v = _as_fraction(v)
        if v:
            coeffs[k] = coeffs.get(k, 0) + v
            if not coeffs[k]:
                del coeffs[k]
    return IncidenceElement(p, coeffs)


def zero(p):
    return IncidenceElement(p, {})


def unit(p, x, y):
    """Basis element e_xy."""
    return element(p, {(x, y): 1})


def diag_unit(p, x):
    return element(p, {(x, x): 1})


def identity(p):
    """The multiplicative identity, the sum of all e_x."""
    return element(p, {(x, x): 1 for x in p.elements})


def subset_diag(p, Y):
    """e_Y, the sum of e_x over x in Y."""
    Y = set(Y)
    for x in Y:
        p.index(x)
    return element(p, {(x, x): 1 for x in Y})


def multiply(f, g):
    """Associative product: (fg)(x,y) = sum over x<=z<=y of f(x,z)g(z,y)."""
    f._check_owner(g)
    p = f.owner
    pairs = p.pairs
    by_start = {}
    for k, c in g.coeffs.items():
        z, y = pairs[k]
        by_start.setdefault(z, []).append((y, c))
    res = {}
    for k, c in f.coeffs.items():
        x, z = pairs[k]
        for y, c2 in by_start.get(z, ()):
            i = p.pair_index[(x, y)]
            s = res.get(i, 0) + c * c2
            if s:
                res[i] = s
            else:
                del res[i]
    return IncidenceElement(p, res)


def commutator(f, g):
    return multiply(f, g) - multiply(g, f)


def split_diag(f):
    """f = f_D + f_J: the diagonal part and the strictly ordered part."""
    pairs = f.owner.pairs
    d, j = {}, {}
    for k, c in f.coeffs.items():
        x, y = pairs[k]
        (d if x == y else j)[k] = c
    return IncidenceElement(f.owner, d), IncidenceElement(f.owner, j)


def restrict(f, Y):
    """f = f_Y + f_Y^c relative to a vertex subset Y."""
    p = f.owner
    Y = set(Y)
    for x in Y:
        p.index(x)
    pairs = p.pairs
    inside, outside = {}, {}
    for k, c in f.coeffs.items():
        x, y = pairs[k]
        (inside if x in Y and y in Y else outside)[k] = c
    return IncidenceElement(p, inside), IncidenceElement(p, outside)


def canonical_bases(p):
    """Canonical bases of the center, the commutator subspace and its center.

    Z(I) is spanned by the identity; [I,I] by the strict e_xy; Z([I,I]) by
    the e_xy with x minimal and y maximal.
    """
    mins, maxs = set(p._mins), set(p._maxs)
    return {
        "center": [identity(p)],
        "commutator_subspace": [unit(p, x, y) for x, y in p.strict_pairs],
        "center_of_commutator": [unit(p, x, y) for x, y in p.strict_pairs
                                 if x in mins and y in maxs],
    }


def minmax_pairs(p):
    """Strict pairs (x, y) with x minimal and y maximal, canonical order."""
    mins, maxs = set(p._mins), set(p._maxs)
    return [(x, y) for x, y in p.strict_pairs if x in mins and y in maxs]


def to_records(f):
    """JSON-shaped serialization; bit-exact round trip with from_records."""
    return [{"from": x, "to": y,
             "numerator": c.numerator, "denominator": c.denominator}
            for (x, y), c in f.items()]


def from_records(p, records):
    coeffs = {}
    for rec in records:
        coeffs[(rec["from"], rec["to"])] = (
            coeffs.get((rec["from"], rec["to"]), Fraction(0))
            + Fraction(rec["numerator"], rec["denominator"]))
    return element(p, coeffs)
