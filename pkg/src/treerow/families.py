"""Tree families with closed-form orbit structure.

Each family constructor produces a rooted tree; for most of them the
whole orbit table (sizes, multiplicities, chi and hatchi sums per class)
is known in closed form and `predicted_profile` returns it without any
enumeration.  `verify_family` then diffs the prediction against brute
force.  `combine_profiles` implements the two-subtree composition that
underlies several of the closed forms; `extend_root_transfer` widens the
root branch of an already-profiled tree.

The complete binary tree is deliberately not predictable: at depth 3 it
is the standard witness that equal-size orbits can carry different chi
and hatchi sums, and the predictor refuses it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Optional, Union

from .errors import SpecParseError, UnsupportedFamilyError
from .poset import RootedTree, parse_tree
from .rowmotion import DEFAULT_ANTICHAIN_BUDGET, all_orbits
from .stats import Statistic, check_homometry, orbit_sum

__all__ = [
    "Star",
    "ExtendedStar",
    "ThreeLeaf",
    "Tk",
    "Comb",
    "ExtendedComb",
    "Zipper",
    "CompleteBinary",
    "FamilyDescriptor",
    "OrbitClass",
    "OrbitProfile",
    "FamilyReport",
    "parse_family",
    "descriptor_string",
    "family_spec",
    "make_family",
    "chain",
    "graft",
    "predicted_profile",
    "combine_profiles",
    "extend_root_transfer",
    "observed_profile",
    "verify_family",
]


@dataclass(frozen=True)
class Star:
    """Leaf chains of alpha_i - 1 nodes hanging off a common root."""

    alphas: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(self.alphas))
        if len(self.alphas) < 1 or any(a < 2 for a in self.alphas):
            raise ValueError("star needs at least one branch parameter, all >= 2")


@dataclass(frozen=True)
class ExtendedStar:
    b: int
    alphas: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(self.alphas))
        if self.b < 1:
            raise ValueError("root branch size must be >= 1")
        if len(self.alphas) < 1 or any(a < 2 for a in self.alphas):
            raise ValueError("star needs at least one branch parameter, all >= 2")


@dataclass(frozen=True)
class ThreeLeaf:
    """Branch sizes: a above the fork, then b over the (c, d) pair, e aside."""

    a: int
    b: int
    c: int
    d: int
    e: int

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d, self.e) < 1:
            raise ValueError("all five branch sizes must be >= 1")


@dataclass(frozen=True)
class Tk:
    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be >= 2")


@dataclass(frozen=True)
class Comb:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass(frozen=True)
class ExtendedComb:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be >= 1")


@dataclass(frozen=True)
class Zipper:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass(frozen=True)
class CompleteBinary:
    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")


FamilyDescriptor = Union[
    Star, ExtendedStar, ThreeLeaf, Tk, Comb, ExtendedComb, Zipper, CompleteBinary
]


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise SpecParseError(f"expected comma-separated integers, got {text!r}") from None


def parse_family(text: str) -> FamilyDescriptor:
    """`star:3,3,2`, `estar:b=2;3,3,2`, `threeleaf:2,2,1,1,1`, `tk:3`,
    `comb:4`, `ecomb:n=3,k=2`, `zipper:2`, `cbt:3`."""
    name, sep, rest = text.partition(":")
    if not sep or not rest:
        raise SpecParseError(f"family descriptor {text!r} needs a name:params form")
    if name == "star":
        return Star(_ints(rest))
    if name == "estar":
        m_b, sep2, m_alphas = rest.partition(";")
        if not sep2 or not m_b.startswith("b="):
            raise SpecParseError(f"extended star wants b=B;alphas, got {rest!r}")
        return ExtendedStar(_ints(m_b[2:])[0], _ints(m_alphas))
    if name == "threeleaf":
        params = _ints(rest)
        if len(params) != 5:
            raise SpecParseError("threeleaf takes exactly five branch sizes")
        return ThreeLeaf(*params)
    if name == "tk":
        return Tk(_ints(rest)[0])
    if name == "comb":
        return Comb(_ints(rest)[0])
    if name == "ecomb":
        pairs = dict(p.split("=", 1) for p in rest.split(",") if "=" in p)
        if set(pairs) != {"n", "k"}:
            raise SpecParseError(f"ecomb wants n=N,k=K, got {rest!r}")
        return ExtendedComb(_ints(pairs["n"])[0], _ints(pairs["k"])[0])
    if name == "zipper":
        return Zipper(_ints(rest)[0])
    if name == "cbt":
        return CompleteBinary(_ints(rest)[0])
    raise SpecParseError(f"unknown family {name!r}")


def descriptor_string(desc: FamilyDescriptor) -> str:
    if isinstance(desc, Star):
        return "star:" + ",".join(map(str, desc.alphas))
    if isinstance(desc, ExtendedStar):
        return f"estar:b={desc.b};" + ",".join(map(str, desc.alphas))
    if isinstance(desc, ThreeLeaf):
        return f"threeleaf:{desc.a},{desc.b},{desc.c},{desc.d},{desc.e}"
    if isinstance(desc, Tk):
        return f"tk:{desc.k}"
    if isinstance(desc, Comb):
        return f"comb:{desc.n}"
    if isinstance(desc, ExtendedComb):
        return f"ecomb:n={desc.n},k={desc.k}"
    if isinstance(desc, Zipper):
        return f"zipper:{desc.n}"
    if isinstance(desc, CompleteBinary):
        return f"cbt:{desc.depth}"
    raise UnsupportedFamilyError(f"unknown descriptor {desc!r}")


def _chain_spec(m: int) -> str:
    return "(" * m + ")" * m


def _star_body(alphas) -> str:
    return "".join(_chain_spec(a - 1) for a in alphas)


def _comb_spec(n: int) -> str:
    s = "(()())"
    for _ in range(n - 1):
        s = "(" + s + "()" + ")"
    return s


def _ecomb_spec(n: int, k: int) -> str:
    if n == 1:
        return "(()())"
    inner = "(" * k + "()()" + ")" * k
    for _ in range(n - 2):
        inner = "(" * k + inner + "()" + ")" * k
    return "(" + inner + "()" + ")"


def _cbt_spec(depth: int) -> str:
    s = "()"
    for _ in range(depth):
        s = "(" + s + s + ")"
    return s


def family_spec(desc: FamilyDescriptor) -> str:
    """Nested-parenthesis string of the family member."""
    if isinstance(desc, Star):
        return "(" + _star_body(desc.alphas) + ")"
    if isinstance(desc, ExtendedStar):
        return "(" * desc.b + _star_body(desc.alphas) + ")" * desc.b
    if isinstance(desc, ThreeLeaf):
        fork = "(" * desc.b + _chain_spec(desc.c) + _chain_spec(desc.d) + ")" * desc.b
        return "(" * desc.a + fork + _chain_spec(desc.e) + ")" * desc.a
    if isinstance(desc, Tk):
        k = desc.k
        return family_spec(ThreeLeaf(k, k, k - 1, k - 1, k - 1))
    if isinstance(desc, Comb):
        return _comb_spec(desc.n)
    if isinstance(desc, ExtendedComb):
        return _ecomb_spec(desc.n, desc.k)
    if isinstance(desc, Zipper):
        return "(" + _comb_spec(desc.n) + _comb_spec(desc.n) + ")"
    if isinstance(desc, CompleteBinary):
        return _cbt_spec(desc.depth)
    raise UnsupportedFamilyError(f"unknown descriptor {desc!r}")


def make_family(desc: FamilyDescriptor) -> RootedTree:
    return parse_tree(family_spec(desc))


def chain(m: int) -> RootedTree:
    """The path with m nodes."""
    if m < 1:
        raise ValueError("chain needs at least one node")
    return parse_tree(_chain_spec(m))


def graft(left: RootedTree, right: RootedTree, b: int) -> RootedTree:
    """Hang both trees below a new b-node root branch (left = lower leaf
    labels)."""
    if b < 1:
        raise ValueError("root branch size must be >= 1")
    return parse_tree("(" * b + left.to_spec() + right.to_spec() + ")" * b)


# ---------------------------------------------------------------------------
# orbit profiles


@dataclass(frozen=True)
class OrbitClass:
    label: str
    size: int
    count: int
    chi: int
    hatchi: int
    delta: int = 0  # 1 on the class of the orbit through the empty antichain


@dataclass(frozen=True)
class OrbitProfile:
    classes: tuple[OrbitClass, ...]
    params: dict[str, int] = field(default_factory=dict)

    @property
    def total_antichains(self) -> int:
        return sum(c.size * c.count for c in self.classes)

    def delta_class(self) -> OrbitClass:
        hits = [c for c in self.classes if c.delta]
        if len(hits) != 1 or hits[0].count != 1:
            raise ValueError("profile needs exactly one orbit through the empty antichain")
        return hits[0]


def _exact_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return int(x)


def _star_classes(b: int, alphas) -> list[OrbitClass]:
    l = lcm(*alphas)
    n_orbits = 1
    for a in alphas:
        n_orbits *= a
    n_orbits //= l
    chi_free = sum(l // a * (a - 1) for a in alphas)
    hatchi_free = l * b + sum(l // a * comb(a, 2) for a in alphas)
    classes = [
        OrbitClass("L", l + b, 1, b + chi_free, hatchi_free + comb(b, 2), delta=1)
    ]
    if n_orbits > 1:
        classes.append(OrbitClass("S", l, n_orbits - 1, chi_free, hatchi_free))
    return classes


def _comb_classes(n: int) -> list[OrbitClass]:
    return [
        OrbitClass("S", 2, 2 ** (n - 1), n + 1, 3 * n + 1),
        OrbitClass(
            "L",
            2 ** (n + 1) - 1,
            1,
            (2 * n + 1) * 2 ** (n - 1),
            2 ** (n - 1) * (6 * n - 5) + 3,
            delta=1,
        ),
    ]


def _ecomb_classes(n: int, k: int) -> list[OrbitClass]:
    if k % 2 == 1:
        return [
            OrbitClass("S", 2, 2 ** (n - 1), n + 1, (2 * k + 1) * n - 2 * k + 3),
            OrbitClass(
                "L",
                (k + 1) * 2**n - 2 * k + 1,
                1,
                ((k + 1) * n + 1) * 2 ** (n - 1) - k + 1,
                (2 * k + 1) * (k + 1) * n * 2 ** (n - 1)
                - (5 * k**2 + 3 * k - 3) * 2 ** (n - 1)
                + 3 * k**2,
                delta=1,
            ),
        ]
    qk = Fraction(k, 4)
    tail = comb(k - 2, 2) if k >= 2 else 0
    classes = []
    for i in range(1, n + 1):
        size = k * (i - 1) + 2
        chi = _exact_int(Fraction(size, 2) * n - qk * (i * i - 5 * i + 4) + 1)
        hatchi = _exact_int(
            Fraction((2 * k + 1) * size, 2) * n
            - Fraction(k * (2 * k + 1), 4) * i * i
            + Fraction(3 * k, 4) * i
            + tail
        )
        classes.append(OrbitClass(f"S{i}", size, 2 ** (n - i), chi, hatchi))
    classes.append(
        OrbitClass(
            "L",
            k * (n - 1) + 3,
            1,
            _exact_int(qk * n * n + Fraction(3 * k + 4, 4) * n - k + 2),
            _exact_int(
                Fraction(k * (2 * k + 1), 4) * n * n
                - Fraction(4 * k**2 - 9 * k - 4, 4) * n
                + tail
            ),
            delta=1,
        )
    )
    return classes


def _zipper_classes(n: int) -> list[OrbitClass]:
    p2 = 2**n
    return [
        OrbitClass("S", 2, 2 ** (2 * n - 1), 2 * n + 2, 6 * n + 4),
        OrbitClass(
            "M",
            2 * p2 - 1,
            2 * p2 - 2,
            p2 * (2 * n + 1),
            3 * p2 * (2 * n - 1) + 5,
        ),
        OrbitClass(
            "L", 2 * p2, 1, p2 * (2 * n + 1) + 1, 3 * p2 * (2 * n - 1) + 5, delta=1
        ),
        OrbitClass(
            "G",
            4 * p2 - 2,
            p2,
            p2 * (4 * n + 3) - n - 1,
            p2 * (12 * n + 1) - 3 * n + 3,
        ),
    ]


def _chain_profile(m: int) -> OrbitProfile:
    return OrbitProfile(
        (OrbitClass("L", m + 1, 1, m, comb(m + 1, 2), delta=1),),
        {"l": m + 1, "b": m},
    )


def predicted_profile(desc: FamilyDescriptor) -> OrbitProfile:
    """Closed-form orbit table; refuses the complete binary tree."""
    if isinstance(desc, (Star, ExtendedStar)):
        b = desc.b if isinstance(desc, ExtendedStar) else 1
        return OrbitProfile(
            tuple(_star_classes(b, desc.alphas)),
            {"l": lcm(*desc.alphas), "b": b},
        )
    if isinstance(desc, ThreeLeaf):
        fork = predicted_profile(ExtendedStar(desc.b, (desc.c + 1, desc.d + 1)))
        return combine_profiles(fork, _chain_profile(desc.e), desc.a)
    if isinstance(desc, Tk):
        k = desc.k
        classes = (
            OrbitClass("S", k, k * (k - 1), 3 * k - 3, (7 * k * k - 3 * k) // 2),
            OrbitClass("M", 2 * k, k - 1, 5 * k - 4, (11 * k * k - 5 * k) // 2),
            OrbitClass("L", 3 * k, 1, 6 * k - 4, 6 * k * k - 3 * k, delta=1),
        )
        return OrbitProfile(classes, {"b": k})
    if isinstance(desc, Comb):
        return OrbitProfile(tuple(_comb_classes(desc.n)), {"b": 1})
    if isinstance(desc, ExtendedComb):
        return OrbitProfile(tuple(_ecomb_classes(desc.n, desc.k)), {"b": 1})
    if isinstance(desc, Zipper):
        return OrbitProfile(tuple(_zipper_classes(desc.n)), {"b": 1})
    raise UnsupportedFamilyError(
        f"no closed-form orbit table for {descriptor_string(desc)}"
    )


def combine_profiles(
    left: OrbitProfile, right: OrbitProfile, b: int
) -> OrbitProfile:
    """Orbit table of the tree whose root branch (b nodes) splits into two
    subtrees with the given tables.

    A left orbit of size c' paired with a right orbit of size c'' yields
    gcd(c', c'') orbits of size lcm(c', c''); the pairing of the two
    empty-antichain orbits instead produces one orbit widened by the root
    tile (size + b) and gcd - 1 plain ones.  chi/hatchi scale with the
    number of repetitions and pick up the root-branch contribution.
    """
    if b < 1:
        raise ValueError("root branch size must be >= 1")
    left.delta_class()
    right.delta_class()
    merged: dict[tuple[int, int, int, int], int] = {}

    def add(size: int, delta: int, chi: int, hatchi: int, count: int) -> None:
        key = (size, delta, chi, hatchi)
        merged[key] = merged.get(key, 0) + count

    for cl in left.classes:
        for cr in right.classes:
            l = lcm(cl.size, cr.size)
            g = gcd(cl.size, cr.size)
            ql, qr = l // cl.size, l // cr.size
            chi = ql * cl.chi + qr * cr.chi
            hatchi = l * b + ql * cl.hatchi + qr * cr.hatchi
            pairs = cl.count * cr.count
            if cl.delta and cr.delta:
                add(l + b, 1, b + chi, hatchi + comb(b, 2), 1)
                if g > 1:
                    add(l, 0, chi, hatchi, g - 1)
            else:
                add(l, 0, chi, hatchi, pairs * g)
    classes = tuple(
        OrbitClass(f"O{idx}", size, count, chi, hatchi, delta)
        for idx, ((size, delta, chi, hatchi), count) in enumerate(
            sorted(merged.items(), key=lambda kv: (-kv[0][1], kv[0])), start=1
        )
    )
    return OrbitProfile(classes, {"b": b})


def extend_root_transfer(profile: OrbitProfile, delta_beta: int) -> OrbitProfile:
    """Widen the root branch by delta_beta nodes.

    Only the empty-antichain orbit changes size (its root tile gains
    delta_beta columns); every orbit's hatchi picks up the extra root
    branch members lying under each ideal.
    """
    if delta_beta < 0:
        raise ValueError("cannot shrink the root branch")
    if "b" not in profile.params:
        raise ValueError("profile does not carry its root branch size")
    if delta_beta == 0:
        return profile
    b = profile.params["b"]
    zero = profile.delta_class()
    classes = []
    for c in profile.classes:
        if c.delta:
            classes.append(
                OrbitClass(
                    c.label,
                    c.size + delta_beta,
                    c.count,
                    c.chi + delta_beta,
                    c.hatchi
                    + comb(b + delta_beta + 1, 2)
                    - comb(b + 1, 2)
                    + delta_beta * (zero.size - b - 1),
                    delta=1,
                )
            )
        else:
            classes.append(
                OrbitClass(
                    c.label,
                    c.size,
                    c.count,
                    c.chi,
                    c.hatchi + delta_beta * c.size,
                )
            )
    params = dict(profile.params)
    params["b"] = b + delta_beta
    return OrbitProfile(tuple(classes), params)


def observed_profile(
    tree: RootedTree, budget: int = DEFAULT_ANTICHAIN_BUDGET
) -> OrbitProfile:
    """Brute-force orbit table: enumerate, sum, group."""
    chi = Statistic.chi()
    hatchi = Statistic.hatchi()
    merged: dict[tuple[int, int, int, int], int] = {}
    for orbit in all_orbits(tree, budget=budget):
        key = (
            orbit.size,
            orbit.delta,
            orbit_sum(tree, chi, orbit),
            orbit_sum(tree, hatchi, orbit),
        )
        merged[key] = merged.get(key, 0) + 1
    classes = tuple(
        OrbitClass(f"O{idx}", size, count, chi_s, hatchi_s, delta)
        for idx, ((size, delta, chi_s, hatchi_s), count) in enumerate(
            sorted(merged.items(), key=lambda kv: (-kv[0][1], kv[0])), start=1
        )
    )
    return OrbitProfile(classes)


def _normalize(profile: OrbitProfile) -> dict[tuple[int, int, int, int], int]:
    out: dict[tuple[int, int, int, int], int] = {}
    for c in profile.classes:
        key = (c.size, c.delta, c.chi, c.hatchi)
        out[key] = out.get(key, 0) + c.count
    return out


@dataclass(frozen=True)
class ClassDiff:
    size: int
    delta: int
    chi: int
    hatchi: int
    predicted_count: int
    observed_count: int

    @property
    def ok(self) -> bool:
        return self.predicted_count == self.observed_count


@dataclass(frozen=True)
class FamilyReport:
    descriptor: str
    ok: bool
    diffs: tuple[ClassDiff, ...]
    predicted_total: int
    observed_total: int
    note: Optional[str] = None


def verify_family(
    desc: FamilyDescriptor, budget: int = DEFAULT_ANTICHAIN_BUDGET
) -> FamilyReport:
    """Diff the closed-form table against enumeration.

    The complete binary tree has no table; for it the check is inverted:
    at depth 3 the report is ok when equal-size orbits with unequal sums
    are actually found, reproducing the known failure.
    """
    name = descriptor_string(desc)
    tree = make_family(desc)
    if isinstance(desc, CompleteBinary):
        chi_v = check_homometry(tree, Statistic.chi(), budget=budget)
        hatchi_v = check_homometry(tree, Statistic.hatchi(), budget=budget)
        confirmed = not chi_v.is_homometric and not hatchi_v.is_homometric
        observed = observed_profile(tree, budget=budget)
        return FamilyReport(
            name,
            ok=confirmed if desc.depth == 3 else True,
            diffs=(),
            predicted_total=observed.total_antichains,
            observed_total=observed.total_antichains,
            note=(
                "no closed-form table; homometry failure "
                + ("confirmed" if confirmed else "NOT confirmed")
            ),
        )
    predicted = _normalize(predicted_profile(desc))
    observed = _normalize(observed_profile(tree, budget=budget))
    diffs = tuple(
        ClassDiff(*key, predicted.get(key, 0), observed.get(key, 0))
        for key in sorted(set(predicted) | set(observed), key=lambda k: (-k[1], k))
    )
    predicted_total = sum(k[0] * v for k, v in predicted.items())
    observed_total = tree.count_antichains()
    ok = all(d.ok for d in diffs) and predicted_total == observed_total
    return FamilyReport(name, ok, diffs, predicted_total, observed_total)
