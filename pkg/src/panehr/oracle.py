"""Formula-independent ground truth: direct lattice-point counts.

Counts integer points in dilates of the panhandle, hypersimplex, and
sliced (paving) polytopes by dynamic programming over coordinates, plus
exact polynomial interpolation through the counts.  Nothing here shares
code with the closed-form engine, so agreement between the two is a real
certificate.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .exactmath import Polynomial


def _bounded_sum_counts(coords: int, cap: int) -> list[int]:
    """counts[j] = number of vectors in [0, cap]^coords with coordinate sum j."""
    counts = [1]
    for _ in range(coords):
        out = [0] * (len(counts) + cap)
        # sliding window sum of width cap+1 over the previous row
        acc = 0
        for j in range(len(out)):
            if j < len(counts):
                acc += counts[j]
            if 0 <= j - cap - 1 < len(counts):
                acc -= counts[j - cap - 1]
            out[j] = acc
        counts = out
    return counts


def count_points_panhandle(r: int, s: int, n: int, t: int) -> int:
    """Integer points of the t-dilated panhandle polytope.

    The polytope is cut out by 0 <= x_i <= t, sum of all coordinates
    equal to r*t, and the sum of the last n-s coordinates at most t.
    Counted by convolving coordinate ranges, splitting at coordinate s.
    """
    if t < 0:
        raise ValueError("dilation factor must be nonnegative")
    total = r * t
    head = _bounded_sum_counts(s, t)
    tail = _bounded_sum_counts(n - s, t)
    out = 0
    for tail_sum in range(min(t, total) + 1):
        head_sum = total - tail_sum
        if head_sum < len(head) and tail_sum < len(tail):
            out += head[head_sum] * tail[tail_sum]
    return out


def count_points_panhandle_slow(r: int, s: int, n: int, t: int) -> int:
    """Raw enumeration over the whole box; cross-check for small n."""
    total = r * t
    out = 0
    for x in product(range(t + 1), repeat=n):
        if sum(x) == total and sum(x[s:]) <= t:
            out += 1
    return out


def count_points_paving(r: int, n: int, hyperplanes: Sequence[frozenset[int]],
                        t: int) -> int:
    """Integer points of the t-dilated hypersimplex sliced by hyperplane cuts.

    Each listed subset H of [n] imposes the cut sum_{i in H} x_i <= (r-1)*t
    (a hyperplane has rank r-1).  An empty list gives the hypersimplex
    count.  Counted by dynamic programming whose state tracks the running
    total and the running sum inside each listed subset.
    """
    if t < 0:
        raise ValueError("dilation factor must be nonnegative")
    cuts = [frozenset(h) for h in hyperplanes]
    for h in cuts:
        if not h <= set(range(1, n + 1)) or len(h) >= n:
            raise ValueError(f"hyperplane {sorted(h)} is not a proper subset of [1..{n}]")
    total = r * t
    cap = (r - 1) * t
    states: dict[tuple[int, ...], int] = {(0,) * (len(cuts) + 1): 1}
    for coord in range(1, n + 1):
        member = [coord in h for h in cuts]
        nxt: dict[tuple[int, ...], int] = {}
        for key, cnt in states.items():
            for x in range(t + 1):
                tot = key[0] + x
                if tot > total:
                    break
                sums = list(key)
                sums[0] = tot
                ok = True
                for idx, inside in enumerate(member):
                    if inside:
                        sums[idx + 1] += x
                        if sums[idx + 1] > cap:
                            ok = False
                            break
                if not ok:
                    continue
                nk = tuple(sums)
                nxt[nk] = nxt.get(nk, 0) + cnt
        states = nxt
    return sum(cnt for key, cnt in states.items() if key[0] == total)


def count_points_paving_slow(r: int, n: int, hyperplanes: Sequence[frozenset[int]],
                             t: int) -> int:
    """Raw enumeration cross-check for the sliced count."""
    total = r * t
    cap = (r - 1) * t
    cuts = [sorted(h) for h in hyperplanes]
    out = 0
    for x in product(range(t + 1), repeat=n):
        if sum(x) != total:
            continue
        if all(sum(x[i - 1] for i in h) <= cap for h in cuts):
            out += 1
    return out


def interpolate(samples: Sequence[tuple[int, int]], degree: int) -> Polynomial:
    """Unique polynomial of the stated degree through the samples.

    Needs at least degree+1 distinct sample points; any extra samples must
    lie on the interpolating polynomial, otherwise the data was not
    produced by a polynomial of that degree and a ValueError is raised.
    Newton divided differences over exact rationals.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    seen: dict[int, int] = {}
    for x, y in samples:
        if x in seen and seen[x] != y:
            raise ValueError(f"contradictory samples at t={x}")
        seen[x] = y
    if len(seen) < degree + 1:
        raise ValueError(
            f"need at least {degree + 1} distinct samples, got {len(seen)}")
    xs = sorted(seen)[:degree + 1]
    ys = [Fraction(seen[x]) for x in xs]
    coeffs = list(ys)
    for level in range(1, degree + 1):
        for i in range(degree, level - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (xs[i] - xs[i - level])
    poly = Polynomial()
    basis = Polynomial([1])
    for i, c in enumerate(coeffs):
        poly = poly + c * basis
        basis = basis * Polynomial([-xs[i], 1])
    for x, y in seen.items():
        if poly.evaluate(x) != y:
            raise ValueError(
                f"samples are not a polynomial of degree {degree}: "
                f"mismatch at t={x}")
    return poly
