"""Ehrhart polynomials of panhandle, uniform, product, and paving polytopes.

The panhandle polytope on ground set [n] with rank r and width s is the
convex hull of the 0/1 indicators of the r-subsets B with |B of [s]| at
least r-1.  Its Ehrhart polynomial factors as a positive binomial
polynomial times the double sum phi_poly; the analogous psi_poly drives
the correction term produced by relaxing one stressed hyperplane, and
stacking those corrections under the hypersimplex yields the Ehrhart
polynomial of a paving matroid from nothing but its rank, ground-set
size, and hyperplane sizes.

All arithmetic is exact; every formula here is certified elsewhere
against direct lattice-point counts.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactmath import ONE, Polynomial, binom_poly, binomial, pi_range, poly_leq


def validate_panhandle(r: int, s: int, n: int) -> None:
    """Raise ValueError naming the violated invariant of (r, s, n)."""
    if not 1 <= r:
        raise ValueError(f"rank must satisfy 1 <= r, got r={r}")
    if not r <= s:
        raise ValueError(f"width must satisfy r <= s, got r={r}, s={s}")
    if not s <= n - 1:
        raise ValueError(f"width must satisfy s <= n-1, got s={s}, n={n}")


@lru_cache(maxsize=None)
def phi_poly(r: int, s: int, n: int) -> Polynomial:
    """The positive factor of the panhandle Ehrhart polynomial.

    Double sum over i = 0..s-r and positions ell = 0..s-1 of factorial
    weights times two binomial polynomials in t; degree at most s-1.
    """
    validate_panhandle(r, s, n)
    total = Polynomial()
    for i in range(s - r + 1):
        sign = (-1) ** i * binomial(s, i)
        inner = Polynomial()
        for ell in range(s):
            w = math.factorial(n - 2 - ell) * math.factorial(ell)
            first = binom_poly(s - r - i + 1, s - 1 - ell - i, s - 1 - ell)
            second = binom_poly(s - r - i, s - 1 - i, ell)
            inner = inner + (w * first) * second
        total = total + sign * inner
    assert total.degree <= n - 2
    return total


@lru_cache(maxsize=None)
def psi_poly(r: int, s: int, n: int) -> Polynomial:
    """The relaxation-correction factor; phi_poly with the first binomial
    argument lowered by one."""
    validate_panhandle(r, s, n)
    total = Polynomial()
    for i in range(s - r + 1):
        sign = (-1) ** i * binomial(s, i)
        inner = Polynomial()
        for ell in range(s):
            w = math.factorial(n - 2 - ell) * math.factorial(ell)
            first = binom_poly(s - r - i + 1, s - 2 - ell - i, s - 1 - ell)
            second = binom_poly(s - r - i, s - 1 - i, ell)
            inner = inner + (w * first) * second
        total = total + sign * inner
    return total


@lru_cache(maxsize=None)
def ehr_panhandle(r: int, s: int, n: int) -> Polynomial:
    """Ehrhart polynomial of the panhandle polytope Pan(r, s, n)."""
    validate_panhandle(r, s, n)
    prefactor = Fraction(n - s, math.factorial(n - 1))
    poly = prefactor * binom_poly(1, n - s, n - s) * phi_poly(r, s, n)
    assert poly.degree == n - 1, "panhandle Ehrhart polynomial has wrong degree"
    assert poly.coefficient(0) == 1, "constant term must be 1"
    return poly


@lru_cache(maxsize=None)
def _hypersimplex(r: int, n: int) -> Polynomial:
    """Hypersimplex Ehrhart polynomial, allowing the degenerate point cases
    r = 0 and r = n."""
    if r in (0, n):
        return ONE
    total = Polynomial()
    for j in range(r):
        total = total + ((-1) ** j * binomial(n, j)) * \
            binom_poly(r - j, n - 1 - j, n - 1)
    return total


def ehr_hypersimplex(r: int, n: int) -> Polynomial:
    """Ehrhart polynomial of the hypersimplex (the uniform matroid polytope).

    Counts integer points of the cube [0, t]^n on the hyperplane where the
    coordinates sum to r*t, by inclusion-exclusion on coordinates
    exceeding t.  Requires 1 <= r <= n-1.
    """
    if not 1 <= r <= n - 1:
        raise ValueError(f"hypersimplex needs 1 <= r <= n-1, got r={r}, n={n}")
    poly = _hypersimplex(r, n)
    assert poly.degree == n - 1 and poly.coefficient(0) == 1
    return poly


def ehr_product_simplex(r: int, s: int, n: int) -> Polynomial:
    """Ehrhart polynomial of the product of the two boundary pieces.

    The factors are the hypersimplex with rank r-1 on s elements and the
    standard-simplex hypersimplex with rank 1 on n-s elements; a factor
    degenerating to a single point contributes the constant polynomial 1.
    """
    validate_panhandle(r, s, n)
    return _hypersimplex(r - 1, s) * _hypersimplex(1, n - s)


def relaxation_correction(r: int, s: int, n: int) -> Polynomial:
    """Ehrhart difference contributed by relaxing one stressed hyperplane
    of size s in a rank-r matroid on [n]."""
    validate_panhandle(r, s, n)
    prefactor = Fraction(n - s, math.factorial(n - 1))
    return prefactor * binom_poly(1, n - s - 1, n - s) * psi_poly(r, s, n)


def ehr_paving(r: int, n: int, hyperplane_sizes: Sequence[int]) -> Polynomial:
    """Ehrhart polynomial of a paving matroid from its hyperplane sizes.

    Start from the hypersimplex and subtract one relaxation correction per
    stressed hyperplane of size at least r; only the sizes matter.  Sizes
    must lie in [r, n-1]; the list may be empty, which yields the
    hypersimplex itself.  Whether the multiset comes from an actual
    paving matroid is the caller's responsibility.
    """
    if not 1 <= r <= n - 1:
        raise ValueError(f"need 1 <= r <= n-1, got r={r}, n={n}")
    for size in hyperplane_sizes:
        if not r <= size <= n - 1:
            raise ValueError(
                f"hyperplane size {size} outside [{r}, {n - 1}]")
    poly = _hypersimplex(r, n)
    for size in hyperplane_sizes:
        poly = poly - relaxation_correction(r, size, n)
    assert poly.coefficient(0) == 1
    return poly


def upper_expression(q: int, s: int, k: int, ell: int, m: int) -> int:
    """The alternating sum whose nonnegativity gives the coefficientwise
    upper bound; equals the count of the shifted leader-1 forests."""
    if k < 1 or not 1 <= m <= k or q < 0 or not 0 <= ell <= s - 1:
        raise ValueError(
            f"need k >= 1, 1 <= m <= k, q >= 0, 0 <= ell <= s-1, "
            f"got q={q}, s={s}, k={k}, ell={ell}, m={m}")
    total = 0
    for i in range(q + 1):
        total += ((-1) ** i * binomial(s, i)
                  * pi_range(-i, s - ell - 2 - i, s - ell - m)
                  * pi_range(s - ell - i, s - 1 - i, ell - (k - m))
                  * binomial(k - 1 + q - i, k - 1))
    return total


def check_relaxation_positivity(r: int, s: int, n: int) -> bool:
    """True iff the relaxation correction binomial times psi has only
    nonnegative coefficients, so relaxing preserves Ehrhart positivity."""
    validate_panhandle(r, s, n)
    correction = binom_poly(1, n - s - 1, n - s) * psi_poly(r, s, n)
    return poly_leq(Polynomial(), correction)
