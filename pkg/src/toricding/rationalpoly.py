"""Dense univariate polynomials with Fraction coefficients (ascending order)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = tuple[Fraction, ...]


def trim(coeffs: Sequence[Fraction]) -> Poly:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def evaluate(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Sequence[Fraction]) -> Poly:
    return trim(tuple(i * c for i, c in enumerate(p) if i >= 1))


def antiderivative(p: Sequence[Fraction]) -> Poly:
    return (Fraction(0),) + tuple(c / (i + 1) for i, c in enumerate(p))


def integrate(p: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Fraction:
    F = antiderivative(p)
    return evaluate(F, hi) - evaluate(F, lo)


def add(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    n = max(len(p), len(q))
    return trim(tuple(
        (p[i] if i < len(p) else Fraction(0)) + (q[i] if i < len(q) else Fraction(0))
        for i in range(n)
    ))


def multiply(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p: Sequence[Fraction], s: Fraction) -> Poly:
    return trim(tuple(c * s for c in p))


def shift_argument(p: Sequence[Fraction], a: Fraction) -> Poly:
    """Coefficients of p(x + a)."""
    out: Poly = ()
    base: Poly = (Fraction(1),)
    for c in p:
        out = add(out, scale(base, c))
        base = multiply(base, (a, Fraction(1)))
    return out


def lagrange_interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Poly:
    """Unique polynomial of degree < len(points) through the given points."""
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    result: Poly = ()
    for i, (xi, yi) in enumerate(points):
        basis: Poly = (Fraction(1),)
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j != i:
                basis = multiply(basis, (-xj, Fraction(1)))
                denom *= xi - xj
        result = add(result, scale(basis, yi / denom))
    return result


def binomial_power(a: Fraction, degree: int) -> Poly:
    """Coefficients of (x + a)^degree."""
    p: Poly = (Fraction(1),)
    for _ in range(degree):
        p = multiply(p, (a, Fraction(1)))
    return p
