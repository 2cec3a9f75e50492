"""Piecewise-linear and birational rowmotion.

Both act on labelings of the poset extended by a global minimum and
maximum, whose values are pinned by convention: 0 and 1 for the
piecewise-linear map on the order polytope, 1 and 1 for the birational
map.  With these conventions the PL map restricted to ideal indicator
points (0 on the ideal, 1 off it) is exactly combinatorial rowmotion on
ideals, and orders are well defined.

Scalar arithmetic is exact: `Fraction` values, or integers mod a prime
for the fast screening path.  Iterating the birational map over the
rationals blows up coefficient sizes quickly (the largest bit length
seen is reported by `order_search`), which is why the prime-field mode
exists.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .errors import RetriesExhaustedError, ZeroInFieldError
from .poset import Poset, linear_extension
from .rowmotion import _ideal_mask

__all__ = [
    "LabeledPoint",
    "OrderSearchResult",
    "indicator_point",
    "ideal_of_indicator",
    "pl_toggle",
    "pl_rowmotion",
    "birational_toggle",
    "birational_rowmotion",
    "random_pl_point",
    "random_birational_point",
    "order_search",
    "DEFAULT_MAX_ITER",
    "RANDOM_VALUE_RANGE",
]

DEFAULT_MAX_ITER = 10**5
DEFAULT_MAX_RETRIES = 10
# numerators and denominators of random starts are drawn uniformly here
RANDOM_VALUE_RANGE = (1, 100)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LabeledPoint:
    """Values on the poset's elements; the two boundary values are implied.

    mode "rational" stores `Fraction`s, mode "modp" stores residues in
    [0, p).
    """

    poset: Poset
    values: tuple
    mode: str = "rational"
    p: Optional[int] = None

    def __post_init__(self):
        if len(self.values) != self.poset.n:
            raise ValueError("one value per poset element required")
        if self.mode == "rational":
            if self.p is not None:
                raise ValueError("rational points carry no modulus")
            object.__setattr__(
                self, "values", tuple(Fraction(v) for v in self.values)
            )
        elif self.mode == "modp":
            if self.p is None or self.p < 2:
                raise ValueError("modp points need a modulus >= 2")
            object.__setattr__(
                self, "values", tuple(int(v) % self.p for v in self.values)
            )
        else:
            raise ValueError(f"unknown scalar mode {self.mode!r}")

    def mode_string(self) -> str:
        return "rational" if self.mode == "rational" else f"modp:{self.p}"


def _require_rational(f: LabeledPoint) -> None:
    if f.mode != "rational":
        raise ValueError("piecewise-linear rowmotion works over the rationals")


def _check_polytope(poset: Poset, vals: Sequence[Fraction]) -> None:
    for x in range(poset.n):
        if not ZERO <= vals[x] <= ONE:
            raise ValueError(f"value at {x} is outside [0, 1]")
    for a, b in poset.covers:
        if vals[a] > vals[b]:
            raise ValueError(f"not order-preserving: f({a}) > f({b})")


def _pl_toggled(poset: Poset, vals: list, x: int):
    lo = poset.lower_covers[x]
    up = poset.upper_covers[x]
    big = max(vals[y] for y in lo) if lo else ZERO
    small = min(vals[z] for z in up) if up else ONE
    return big + small - vals[x]


def pl_toggle(poset: Poset, f: LabeledPoint, x: int) -> LabeledPoint:
    """Reflect f(x) inside the interval its neighbors allow."""
    _require_rational(f)
    if not 0 <= x < poset.n:
        raise ValueError(f"unknown node id {x}")
    vals = list(f.values)
    _check_polytope(poset, vals)
    vals[x] = _pl_toggled(poset, vals, x)
    return LabeledPoint(poset, tuple(vals))


def pl_rowmotion(
    poset: Poset, f: LabeledPoint, extension: Optional[Sequence[int]] = None
) -> LabeledPoint:
    """Toggle every element once, top of a linear extension first."""
    _require_rational(f)
    ext = linear_extension(poset) if extension is None else tuple(extension)
    vals = list(f.values)
    _check_polytope(poset, vals)
    for x in reversed(ext):
        vals[x] = _pl_toggled(poset, vals, x)
    return LabeledPoint(poset, tuple(vals))


def indicator_point(poset: Poset, ideal) -> LabeledPoint:
    """0 on the ideal, 1 off it (the polytope vertex matching the ideal)."""
    lmask = _ideal_mask(poset, ideal)
    return LabeledPoint(
        poset, tuple(ZERO if lmask >> x & 1 else ONE for x in range(poset.n))
    )


def ideal_of_indicator(f: LabeledPoint) -> frozenset[int]:
    if any(v not in (ZERO, ONE) for v in f.values):
        raise ValueError("not an indicator point")
    members = [x for x, v in enumerate(f.values) if v == ZERO]
    _ideal_mask(f.poset, members)
    return frozenset(members)


def _bi_toggled_rational(poset: Poset, vals: list, x: int) -> Fraction:
    lo = poset.lower_covers[x]
    up = poset.upper_covers[x]
    num = sum(vals[y] for y in lo) if lo else ONE
    recip = sum(1 / vals[z] for z in up) if up else ONE
    den = vals[x] * recip
    if den == 0:
        raise ZeroInFieldError(f"reciprocal sum vanishes toggling {x}")
    out = num / den
    if out == 0:
        raise ZeroInFieldError(f"toggling {x} produced zero")
    return out


def _bi_toggled_modp(poset: Poset, vals: list, x: int, p: int) -> int:
    lo = poset.lower_covers[x]
    up = poset.upper_covers[x]
    num = sum(vals[y] for y in lo) % p if lo else 1
    # sum of reciprocals as one fraction: only a single inverse per toggle
    prod = 1
    for z in up:
        prod = prod * vals[z] % p
    if up:
        snum = 0
        for z in up:
            term = 1
            for w in up:
                if w != z:
                    term = term * vals[w] % p
            snum = (snum + term) % p
    else:
        snum = 1
    den = vals[x] * snum % p
    if den == 0:
        raise ZeroInFieldError(f"reciprocal sum vanishes toggling {x} (mod {p})")
    out = num * prod * pow(den, -1, p) % p
    if out == 0:
        raise ZeroInFieldError(f"toggling {x} produced zero (mod {p})")
    return out


def _check_nonzero(f: LabeledPoint) -> None:
    if any(v == 0 for v in f.values):
        raise ZeroInFieldError("birational points must be nonzero everywhere")


def birational_toggle(poset: Poset, f: LabeledPoint, x: int) -> LabeledPoint:
    """g(x) = (sum of lower covers) / (f(x) * sum of upper reciprocals)."""
    if not 0 <= x < poset.n:
        raise ValueError(f"unknown node id {x}")
    _check_nonzero(f)
    vals = list(f.values)
    if f.mode == "rational":
        vals[x] = _bi_toggled_rational(poset, vals, x)
    else:
        vals[x] = _bi_toggled_modp(poset, vals, x, f.p)
    return LabeledPoint(poset, tuple(vals), f.mode, f.p)


def birational_rowmotion(
    poset: Poset, f: LabeledPoint, extension: Optional[Sequence[int]] = None
) -> LabeledPoint:
    ext = linear_extension(poset) if extension is None else tuple(extension)
    _check_nonzero(f)
    vals = list(f.values)
    if f.mode == "rational":
        for x in reversed(ext):
            vals[x] = _bi_toggled_rational(poset, vals, x)
    else:
        for x in reversed(ext):
            vals[x] = _bi_toggled_modp(poset, vals, x, f.p)
    return LabeledPoint(poset, tuple(vals), f.mode, f.p)


def random_pl_point(poset: Poset, rng: random.Random) -> LabeledPoint:
    """Strictly order-preserving interior point with small random slacks."""
    lo, hi = RANDOM_VALUE_RANGE
    weights = [rng.randint(lo, hi) for _ in range(poset.n)]
    total = sum(weights) + 1
    vals = []
    for x in range(poset.n):
        below = sum(w for y, w in enumerate(weights) if poset.le(y, x))
        vals.append(Fraction(below, total))
    return LabeledPoint(poset, tuple(vals))


def random_birational_point(
    poset: Poset, rng: random.Random, p: Optional[int] = None
) -> LabeledPoint:
    """num/den per element, both uniform on RANDOM_VALUE_RANGE; the mod-p
    variant maps the same draws through num * den^-1."""
    lo, hi = RANDOM_VALUE_RANGE

    def draw() -> tuple[int, int]:
        for _ in range(100):
            n, d = rng.randint(lo, hi), rng.randint(lo, hi)
            if p is None or (n % p and d % p):
                return n, d
        raise ZeroInFieldError(f"cannot draw values coprime to {p}")

    draws = [draw() for _ in range(poset.n)]
    if p is None:
        return LabeledPoint(poset, tuple(Fraction(n, d) for n, d in draws))
    return LabeledPoint(
        poset, tuple(n * pow(d, -1, p) % p for n, d in draws), "modp", p
    )


@dataclass(frozen=True)
class OrderSearchResult:
    outcome: str  # "finite-order" | "no-repeat"
    order: Optional[int]
    iterations_used: int
    kind: str  # "pl" | "birational"
    mode: str  # "rational" | "modp:P"
    restarts: int = 0
    max_bits: Optional[int] = None  # largest num/den bit length encountered


def _bits_of(vals) -> int:
    return max(
        max(v.numerator.bit_length(), v.denominator.bit_length()) for v in vals
    )


def order_search(
    poset: Poset,
    f0: Optional[LabeledPoint] = None,
    max_iter: int = DEFAULT_MAX_ITER,
    kind: str = "birational",
    p: Optional[int] = None,
    rng: Optional[random.Random] = None,
    max_retries: int = DEFAULT_MAX_RETRIES,
) -> OrderSearchResult:
    """First return time to the start under repeated rowmotion.

    Iterates are compared to the start only: the maps are invertible, so
    the first return is the order of the start.  In mod-p mode a vanishing
    denominator is an artifact of the field; the search restarts with
    fresh random values, up to `max_retries` times.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    if kind not in ("pl", "birational"):
        raise ValueError(f"unknown rowmotion kind {kind!r}")
    step: Callable[[LabeledPoint], LabeledPoint]
    if kind == "pl":
        if f0 is not None:
            _require_rational(f0)
        if p is not None:
            raise ValueError("piecewise-linear search runs over the rationals")
        step = lambda g: pl_rowmotion(poset, g)
        make = random_pl_point
    else:
        if f0 is not None and f0.mode == "modp":
            if p is not None and p != f0.p:
                raise ValueError("start point and search disagree on the modulus")
            p = f0.p
        step = lambda g: birational_rowmotion(poset, g)
        make = lambda ps, r: random_birational_point(ps, r, p)
    if f0 is None:
        if rng is None:
            raise ValueError("need a start point or an rng to draw one")
        f0 = make(poset, rng)
    track_bits = f0.mode == "rational" and kind == "birational"
    restarts = 0
    while True:
        try:
            bits = _bits_of(f0.values) if track_bits else None
            cur = f0
            for i in range(1, max_iter + 1):
                cur = step(cur)
                if track_bits:
                    bits = max(bits, _bits_of(cur.values))
                if cur.values == f0.values:
                    return OrderSearchResult(
                        "finite-order", i, i, kind, f0.mode_string(), restarts, bits
                    )
            return OrderSearchResult(
                "no-repeat", None, max_iter, kind, f0.mode_string(), restarts, bits
            )
        except ZeroInFieldError:
            if f0.mode != "modp" or rng is None:
                raise
            if restarts >= max_retries:
                raise RetriesExhaustedError(
                    f"gave up after {max_retries} restarts hitting zeros mod {f0.p}"
                ) from None
            restarts += 1
            f0 = make(poset, rng)
