"""Reference computations that do not go through liftspace's own algebra.

sympy's DomainMatrix over QQ supplies exact rank, inverse and products; the
rest is brute force on plain Python integers and Fractions.
"""

from fractions import Fraction

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def _qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def to_domain(rows):
    return DomainMatrix([[_qq(x) for x in r] for r in rows], (len(rows), len(rows[0])), QQ)


def from_domain(dm):
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in r] for r in dm.to_list()]


def to_sympy(m):
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) for x in m.entries])


def sympy_rank(m):
    return to_domain(m.to_rows()).rank()


def span_projector_oracle(vectors):
    """B^T (B B^T)^-1 B for the rows B; the projector onto their span."""
    b = to_domain([list(v) for v in vectors])
    bt = b.transpose()
    return from_domain(bt * (b * bt).inv() * b)


def brute_inner(v, w):
    total = 0
    for a, b in zip(v, w):
        total += a * b
    return total


def brute_lift(inputs):
    """Lift integer vectors by solving each triangular system one unknown at a time.

    Written against the defining property only: vector i must be orthogonal
    to every earlier lifted vector, with a 1 in its own new coordinate.
    """
    d = len(inputs[0])
    count = len(inputs)
    out = []
    for i, e in enumerate(inputs):
        v = list(e) + [0] * count
        v[d + i] = 1
        for j in range(i):
            # b_j has a 1 at d + j and zeros beyond it, so adjusting
            # coordinate d + j changes <v|b_j> one-for-one.
            v[d + j] -= brute_inner(v, out[j])
        out.append(v)
    return out
