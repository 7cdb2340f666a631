"""Independent oracles and samplers shared across the test suite.

The oracles deliberately avoid the code paths they check: determinants by
cofactor expansion (not elimination), characteristic polynomials by minor
sums (not the trace recurrence), and the additive convolution through the
derivative form of its definition.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import factorial

from finfree import GaussianRational, Matrix, Polynomial, as_scalar
from finfree.families import rand_fraction, random_matrix

ZERO = as_scalar(0)
ONE = as_scalar(1)


def cofactor_det(rows) -> GaussianRational:
    """Determinant by recursive cofactor expansion along the first row."""
    k = len(rows)
    if k == 0:
        return ONE
    if k == 1:
        return rows[0][0]
    total = ZERO
    for j in range(k):
        if not rows[0][j]:
            continue
        minor = [row[:j] + row[j + 1 :] for row in rows[1:]]
        total = total + rows[0][j] * ((-1) ** j) * cofactor_det(minor)
    return total


def charpoly_via_minors(m: Matrix) -> Polynomial:
    """Characteristic polynomial from signed principal-minor sums."""
    n = m.n
    coeffs = [ONE]
    for k in range(1, n + 1):
        acc = ZERO
        for subset in itertools.combinations(range(n), k):
            rows = [[m.rows[i][j] for j in subset] for i in subset]
            acc = acc + cofactor_det(rows)
        coeffs.append(acc * ((-1) ** k))
    return Polynomial(coeffs)


def boxplus_via_derivatives(p: Polynomial, q: Polynomial) -> Polynomial:
    """(1/n!) sum_k p^(k)(x) q^(n-k)(0): the derivative form of the additive
    convolution, used as a cross-formula oracle."""
    n = p.degree
    total = None
    for k in range(n + 1):
        value = q.derivative(n - k).evaluate(0)
        term = p.derivative(k).scale(value)
        padded = Polynomial([ZERO] * (n - term.degree) + list(term.coeffs))
        total = padded if total is None else total + padded
    return total.scale(Fraction(1, factorial(n)))


def rand_scalar(rng: random.Random, bound: int = 10) -> GaussianRational:
    return as_scalar(rand_fraction(rng, bound))


def rand_monic(rng: random.Random, n: int, bound: int = 10) -> Polynomial:
    return Polynomial([ONE] + [rand_scalar(rng, bound) for _ in range(n)])


def rand_symmetric(rng: random.Random, n: int, bound: int = 10) -> Matrix:
    m = random_matrix(rng, n, bound)
    return m + m.transpose()


def rand_invertible(rng: random.Random, n: int, bound: int = 10) -> Matrix:
    while True:
        m = random_matrix(rng, n, bound)
        if m.det():
            return m


def poly_of_matrix(coeffs, m: Matrix) -> Matrix:
    """p(M) for p given by descending coefficients, via Horner."""
    acc = Matrix.zero(m.n)
    for c in coeffs:
        acc = acc @ m + Matrix.identity(m.n).scale(c)
    return acc
