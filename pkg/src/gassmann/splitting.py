"""Group-theoretic model of prime splitting.

A conjugacy class stands in for a Frobenius class; its cycle type on
G/H is the splitting type of the corresponding prime.  Every class
occurs as a Frobenius infinitely often, so "for all but finitely many
primes" becomes "for every conjugacy class" and all four equivalence
relations are decided exactly.  The membership-of-1, gcd, and lcm tests
read the splitting types alone and do not compare degrees, so subgroups
of unequal index may be compared under those relations.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Iterable, Union

from .errors import IndexMismatch, PreconditionViolated
from .permgroup import (
    ConjugacyClass,
    GroupLike,
    Permutation,
    _require_subgroup,
    coset_action,
)

__all__ = [
    "SplittingType",
    "NumericalSet",
    "splitting_type",
    "splitting_table",
    "arithmetically_equivalent",
    "kronecker_equivalent",
    "weakly_kronecker_equivalent",
    "ultra_coarse_equivalent",
    "numerical_set",
    "norm_count",
    "ultra_coarse_bound_check",
]


class SplittingType:
    """Multiset of positive integers (residue degrees), kept sorted.

    >>> SplittingType([2, 1, 2]).parts
    (1, 2, 2)
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]) -> None:
        ordered = tuple(sorted(parts))
        if not ordered:
            raise ValueError("a splitting type has at least one part")
        if any(not isinstance(p, int) or p < 1 for p in ordered):
            raise ValueError(f"parts must be positive integers: {ordered}")
        object.__setattr__(self, "parts", ordered)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SplittingType is immutable")

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def gcd(self) -> int:
        return gcd(*self.parts) if len(self.parts) > 1 else self.parts[0]

    def lcm(self) -> int:
        result = 1
        for p in self.parts:
            result = lcm(result, p)
        return result

    @property
    def contains_one(self) -> bool:
        return self.parts[0] == 1

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SplittingType) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return "{{" + ", ".join(str(p) for p in self.parts) + "}}"


class NumericalSet:
    """Truncated numerical semigroup generated by a splitting type.

    Equality compares the cap and the member set only, so two types
    generating the same semigroup compare equal.
    """

    __slots__ = ("base", "cap", "members")

    def __init__(self, base: SplittingType, cap: int,
                 members: frozenset) -> None:
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "cap", cap)
        object.__setattr__(self, "members", members)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("NumericalSet is immutable")

    def __contains__(self, value: int) -> bool:
        return value in self.members

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, NumericalSet)
                and self.cap == other.cap and self.members == other.members)

    def __hash__(self) -> int:
        return hash((self.cap, self.members))

    def __repr__(self) -> str:
        return f"NumericalSet(cap={self.cap}, |members|={len(self.members)})"


ClassLike = Union[ConjugacyClass, Permutation]


def _class_rep(c: ClassLike) -> Permutation:
    if isinstance(c, ConjugacyClass):
        return c.representative
    return c


def splitting_type(group: GroupLike, subgroup: GroupLike,
                   c: ClassLike) -> SplittingType:
    """Cycle type of the class on G/H; independent of the representative
    because conjugate permutations of the coset space share a cycle type.
    """
    _require_subgroup(group, subgroup)
    cosets = coset_action(group, subgroup)
    action = cosets.permutation_of(_class_rep(c))
    return SplittingType(action.cycle_type())


def splitting_table(group: GroupLike,
                    subgroup: GroupLike) -> list[SplittingType]:
    """One splitting type per conjugacy class, in conjugacy_classes
    order; the coset space is built once."""
    _require_subgroup(group, subgroup)
    cosets = coset_action(group, subgroup)
    return [SplittingType(
                cosets.permutation_of(cls.representative).cycle_type())
            for cls in group.conjugacy_classes()]


def arithmetically_equivalent(group: GroupLike, h1: GroupLike,
                              h2: GroupLike) -> bool:
    """Equal splitting type at every class; the multiset version of the
    fixed-point condition, so this agrees with the Gassmann test."""
    _require_subgroup(group, h1)
    _require_subgroup(group, h2)
    if h1.order != h2.order:
        raise IndexMismatch(
            f"indices differ: {group.order // h1.order} vs "
            f"{group.order // h2.order}")
    return splitting_table(group, h1) == splitting_table(group, h2)


def kronecker_equivalent(group: GroupLike, h1: GroupLike,
                         h2: GroupLike) -> bool:
    """1 belongs to both splitting types or neither, at every class."""
    _require_subgroup(group, h1)
    _require_subgroup(group, h2)
    t1 = splitting_table(group, h1)
    t2 = splitting_table(group, h2)
    return all(s1.contains_one == s2.contains_one
               for s1, s2 in zip(t1, t2))


def weakly_kronecker_equivalent(group: GroupLike, h1: GroupLike,
                                h2: GroupLike) -> bool:
    """Equal gcd of the splitting types at every class."""
    _require_subgroup(group, h1)
    _require_subgroup(group, h2)
    t1 = splitting_table(group, h1)
    t2 = splitting_table(group, h2)
    return all(s1.gcd() == s2.gcd() for s1, s2 in zip(t1, t2))


def ultra_coarse_equivalent(group: GroupLike, h1: GroupLike,
                            h2: GroupLike) -> bool:
    """Equal lcm of the splitting types at every class."""
    _require_subgroup(group, h1)
    _require_subgroup(group, h2)
    t1 = splitting_table(group, h1)
    t2 = splitting_table(group, h2)
    return all(s1.lcm() == s2.lcm() for s1, s2 in zip(t1, t2))


def numerical_set(s: SplittingType, cap: int) -> NumericalSet:
    """All sums of parts (each part usable any number of times) up to cap."""
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    reachable = [False] * (cap + 1)
    reachable[0] = True
    for part in set(s.parts):
        for total in range(part, cap + 1):
            if reachable[total - part]:
                reachable[total] = True
    return NumericalSet(s, cap,
                        frozenset(i for i, ok in enumerate(reachable) if ok))


def norm_count(s: SplittingType, k: int) -> int:
    """Number of ways to write k as an ordered choice of multiplicities,
    one multiplicity per part (parts with multiplicity count as distinct
    slots), i.e. the k-th coefficient of prod_j 1/(1 - x^(f_j)).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    ways = [0] * (k + 1)
    ways[0] = 1
    for part in s.parts:
        for total in range(part, k + 1):
            ways[total] += ways[total - part]
    return ways[k]


def ultra_coarse_bound_check(s1: SplittingType, s2: SplittingType,
                             c: int, cap: int) -> int:
    """A witness d in the numerical set of s2 with |c - d| < lcm.

    One always exists when the lcms agree: multiples of the common lcm
    lie in both sets, and c is within lcm of one of them.  Ties between
    equally close witnesses go to the smaller d; d = c is returned
    whenever possible.
    """
    lam = s1.lcm()
    if s2.lcm() != lam:
        raise PreconditionViolated(
            f"lcms differ: {lam} vs {s2.lcm()}")
    if c not in numerical_set(s1, cap):
        raise PreconditionViolated(
            f"{c} is not in the numerical set of {s1!r} at cap {cap}")
    candidates = [d for d in numerical_set(s2, cap + lam).members
                  if abs(c - d) < lam]
    if not candidates:
        raise AssertionError(
            "no witness found; the guaranteed multiple-of-lcm fallback "
            "failed, which indicates a bug")
    return min(candidates, key=lambda d: (abs(c - d), d))
