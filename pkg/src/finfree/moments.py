"""Coefficient / moment / cumulant conversions and the finite-free moment
formulas.

Coefficients from moments use the partition sum

    a_k = sum over integer partitions of k of
          prod_i (-n m_{r_i})^{s_i} / (r_i^{s_i} s_i!)

and moments from coefficients use the Newton recursion

    m_r = -(r/n) c_r - sum_{i=1}^{r-1} c_i m_{r-i}      (c_r = 0 past degree n).

Cumulants are the unique solution of the set-partition moment formula

    m_j = (-1)^(j-1) / (n^(j+1) (j-1)!) *
          sum_pi n^|pi| mu(0,pi) kappa_pi * sum_{rho v pi = top} n^|rho| mu(0,rho)

inverted triangularly: kappa_j enters m_j only through the one-block
partition, with coefficient (computed from the formula itself) equal to the
falling factorial n(n-1)...(n-j+1) / n^j, nonzero for j <= n. These
cumulants are additive for pairs in additive finite free position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .errors import DimensionMismatchError, IndexRangeError, NonMonicError, ParseError
from .matrices import Matrix, char_poly, moment_vector_of
from .partitions import (
    SetPartition,
    integer_partitions,
    mobius_from_bottom,
    set_partitions,
    top_join_weight_table,
)
from .polynomials import Polynomial, boxplus
from .scalars import ONE, ZERO, GaussianRational, as_scalar

CUMULANT_ORDER_LIMIT = 12


@dataclass(frozen=True)
class MomentVector:
    """Moments m_1..m_k of an n x n matrix; canonically k = n, but callers
    may request more (Newton's recursion extends past the degree)."""

    n: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in self.values))

    @classmethod
    def of_matrix(cls, a: Matrix, count: Optional[int] = None) -> "MomentVector":
        return cls(a.n, moment_vector_of(a, count))

    @classmethod
    def from_json(cls, obj) -> "MomentVector":
        try:
            return cls(obj["n"], [GaussianRational.parse(v) for v in obj["values"]])
        except (TypeError, KeyError) as exc:
            raise ParseError(f"bad moment vector JSON: {exc}") from None

    def to_json(self) -> dict:
        return {"n": self.n, "values": [str(v) for v in self.values]}

    def __getitem__(self, k: int) -> GaussianRational:
        """1-based access: m[k] is the k-th moment."""
        if not 1 <= k <= len(self.values):
            raise IndexRangeError(f"moment index {k} out of range 1..{len(self.values)}")
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class CumulantVector:
    """Finite free cumulants kappa_1..kappa_n; the order-n dependence is
    recorded because the conversion formulas depend on the dimension."""

    n: int
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(as_scalar(v) for v in self.values))

    @classmethod
    def from_json(cls, obj) -> "CumulantVector":
        try:
            return cls(obj["n"], [GaussianRational.parse(v) for v in obj["values"]])
        except (TypeError, KeyError) as exc:
            raise ParseError(f"bad cumulant vector JSON: {exc}") from None

    def to_json(self) -> dict:
        return {"n": self.n, "values": [str(v) for v in self.values]}

    def __getitem__(self, k: int) -> GaussianRational:
        if not 1 <= k <= len(self.values):
            raise IndexRangeError(f"cumulant index {k} out of range 1..{len(self.values)}")
        return self.values[k - 1]

    def __len__(self):
        return len(self.values)


# -- coefficients <-> moments -------------------------------------------------


def coeffs_from_moments(m: MomentVector) -> Polynomial:
    """Monic degree-n polynomial whose root moments are m_1..m_n."""
    n = m.n
    if len(m) < n:
        raise DimensionMismatchError(f"need {n} moments, got {len(m)}")
    coeffs = [ONE]
    for k in range(1, n + 1):
        acc = ZERO
        for partition in integer_partitions(k):
            term = ONE
            for part, mult in partition:
                term = term * (m[part] * (-n)) ** mult / (
                    Fraction(part) ** mult * factorial(mult)
                )
            acc = acc + term
        coeffs.append(acc)
    return Polynomial(coeffs)


def moments_from_coeffs(p: Polynomial, count: Optional[int] = None) -> MomentVector:
    """Newton's recursion from a monic polynomial; by default the first n
    moments, optionally more."""
    if not p.is_monic:
        raise NonMonicError("moment extraction needs a monic polynomial")
    n = p.degree
    count = n if count is None else count
    moments: list[GaussianRational] = []
    for r in range(1, count + 1):
        c_r = p.coeffs[r] if r <= n else ZERO
        acc = c_r * Fraction(-r, n)
        for i in range(1, min(r - 1, n) + 1):
            acc = acc - p.coeffs[i] * moments[r - i - 1]
        moments.append(acc)
    return MomentVector(n, moments)


def ffp_sum_moments(
    ma: MomentVector, mb: MomentVector, count: Optional[int] = None
) -> MomentVector:
    """Moments of A + B for a pair in additive finite free position, built by
    converting both moment vectors to coefficients, convolving, and reading
    moments back off."""
    if ma.n != mb.n:
        raise DimensionMismatchError(f"dimension mismatch: {ma.n} vs {mb.n}")
    combined = boxplus(coeffs_from_moments(ma), coeffs_from_moments(mb))
    return moments_from_coeffs(combined, count)


def closed_form_sum_moment(k: int, ma, mb, n: int) -> GaussianRational:
    """The printed closed forms for m_k(A+B), k in 1..4, for additive-FFP
    pairs; the k = 4 formula carries n-1 denominators and needs n >= 2."""
    if k not in (1, 2, 3, 4):
        raise IndexRangeError(f"closed forms exist for k in 1..4, got {k}")
    if k == 4 and n < 2:
        raise IndexRangeError("the fourth-moment formula needs n >= 2")
    a = _moment_list(ma, k)
    b = _moment_list(mb, k)
    if k == 1:
        return a[1] + b[1]
    if k == 2:
        return a[2] + a[1] * b[1] * 2 + b[2]
    if k == 3:
        return a[3] + a[2] * b[1] * 3 + a[1] * b[2] * 3 + b[3]
    heavy = Fraction(2 * n, n - 1)
    return (
        a[4]
        + a[3] * b[1] * 4
        + a[2] * b[1] ** 2 * heavy
        + a[2] * b[2] * Fraction(4 * n - 6, n - 1)
        - a[1] ** 2 * b[1] ** 2 * heavy
        + a[1] ** 2 * b[2] * heavy
        + a[1] * b[3] * 4
        + b[4]
    )


def _moment_list(m, k: int) -> dict:
    values = m.values if isinstance(m, MomentVector) else tuple(as_scalar(v) for v in m)
    if len(values) < k:
        raise DimensionMismatchError(f"need at least {k} moments, got {len(values)}")
    return {i: values[i - 1] for i in range(1, k + 1)}


# -- moments <-> cumulants -----------------------------------------------------


def _guard_order(j: int):
    if not 1 <= j <= CUMULANT_ORDER_LIMIT:
        raise IndexRangeError(f"cumulant order {j} outside 1..{CUMULANT_ORDER_LIMIT}")


def _cumulant_product(kappa: Sequence, pi: SetPartition) -> GaussianRational:
    prod = ONE
    for block in pi.blocks:
        prod = prod * kappa[len(block) - 1]
    return prod


def _moment_from_cumulant_list(kappa: Sequence, n: int, j: int) -> GaussianRational:
    parts = set_partitions(j)
    weights = top_join_weight_table(j)
    total = ZERO
    for pi, weight in zip(parts, weights):
        kappa_pi = _cumulant_product(kappa, pi)
        if not kappa_pi:
            continue
        inner = sum(
            Fraction(n) ** blocks * mu for blocks, mu in weight.items()
        )
        total = total + kappa_pi * (
            Fraction(n) ** pi.num_blocks * mobius_from_bottom(pi) * inner
        )
    lead = Fraction((-1) ** (j - 1), n ** (j + 1) * factorial(j - 1))
    return total * lead


def moments_from_cumulants(kappa: CumulantVector, j: int) -> GaussianRational:
    """m_j from the set-partition formula; needs kappa_1..kappa_j."""
    _guard_order(j)
    if len(kappa) < j:
        raise DimensionMismatchError(f"need {j} cumulants, got {len(kappa)}")
    return _moment_from_cumulant_list(kappa.values, kappa.n, j)


def _kappa_j_coefficient(n: int, j: int) -> GaussianRational:
    # the one-block partition is the only one containing kappa_j; its
    # coefficient is evaluated from the formula itself rather than a closed form
    parts = set_partitions(j)
    inner_all = sum(Fraction(n) ** p.num_blocks * mobius_from_bottom(p) for p in parts)
    top_mu = mobius_from_bottom(SetPartition.top(j))
    lead = Fraction((-1) ** (j - 1), n ** (j + 1) * factorial(j - 1))
    return as_scalar(lead * Fraction(n) * top_mu * inner_all)


def cumulants_from_moments(m: MomentVector) -> CumulantVector:
    """Invert the moment formula triangularly: kappa_j is isolated from m_j
    and the previously solved kappa_1..kappa_{j-1}."""
    n = m.n
    _guard_order(len(m))
    if len(m) > n:
        raise DimensionMismatchError(
            f"cumulants are defined up to the dimension: {len(m)} moments for n={n}"
        )
    kappa: list[GaussianRational] = []
    for j in range(1, len(m) + 1):
        coefficient = _kappa_j_coefficient(n, j)
        if not coefficient:
            raise DimensionMismatchError(f"order {j} exceeds the dimension n={n}")
        partial = _moment_from_cumulant_list(kappa + [ZERO], n, j)
        kappa.append((m[j] - partial) / coefficient)
    return CumulantVector(n, kappa)


def cumulants_of_matrix(a: Matrix) -> CumulantVector:
    return cumulants_from_moments(MomentVector.of_matrix(a))


# -- characterizations and product moments -------------------------------------


def has_single_eigenvalue(a: Matrix) -> bool:
    """True iff chi_A = (x - m_1(A))^n; equivalent to A being in both
    additive and multiplicative finite free position with itself."""
    mean = a.trace() / Fraction(a.n)
    return char_poly(a) == Polynomial.x_power(a.n).shift_argument(mean)


def mult_ffp_moment(k: int, ma, mb, n: int) -> GaussianRational:
    """m_k(AB) for pairs in multiplicative finite free position, k in {1, 2}:

        m_1(AB) = m_1(A) m_1(B)
        m_2(AB) = n/(n-1) [m_2(A)m_1(B)^2 + m_1(A)^2 m_2(B) - m_1(A)^2 m_1(B)^2]
                  - 1/(n-1) m_2(A)m_2(B)
    """
    if k not in (1, 2):
        raise IndexRangeError(f"product-moment formulas exist for k in {{1, 2}}, got {k}")
    if k == 2 and n < 2:
        raise IndexRangeError("the second product moment needs n >= 2")
    a = _moment_list(ma, k)
    b = _moment_list(mb, k)
    if k == 1:
        return a[1] * b[1]
    return (a[2] * b[1] ** 2 + a[1] ** 2 * b[2] - a[1] ** 2 * b[1] ** 2) * Fraction(
        n, n - 1
    ) - a[2] * b[2] * Fraction(1, n - 1)
