"""Odd-index K-groups of abelian number fields via the w-invariant rule.

A field is either the rationals or the subfield of a cyclotomic field
cut out by a unit subgroup mod the conductor; both make the Galois
groups of cyclotomic layers exactly computable inside (Z/M)^x.  The
structure of K_n for odd n >= 3 then follows a four-case rule on n mod 8
driven by the signature and by w_i with i = (n+1)/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from ._primes import is_prime, iter_primes
from .errors import EvenIndex, NotPrime, ParseError, UnsupportedSignature
from .permgroup import FinAbGroup

__all__ = [
    "FieldModel",
    "WInvariant",
    "cyclo_exponent",
    "w_invariant",
    "k_group",
    "compare_k_groups",
]


def _unit_residues(m: int) -> list[int]:
    if m == 1:
        return [0]
    return [x for x in range(m) if gcd(x, m) == 1]


def _mult_order(a: int, m: int) -> int:
    if m == 1:
        return 1
    order, power = 1, a % m
    while power != 1 % m:
        power = power * a % m
        order += 1
    return order


@dataclass(frozen=True)
class FieldModel:
    """Conductor m and the unit subgroup mod m fixing the field.

    The rationals are the degenerate case m = 1.  The subgroup is stored
    as the full element set, closed under multiplication; parsing closes
    whatever generators it is given.
    """

    conductor: int
    subgroup: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        m = self.conductor
        if m < 1:
            raise ValueError("conductor must be positive")
        units = set(_unit_residues(m))
        h = set(self.subgroup)
        if not h:
            h = {1 % m}
        if not h <= units:
            raise ValueError(
                f"subgroup elements must be units mod {m}: {sorted(h)}")
        closed = _multiplicative_closure(h, m)
        if closed != h:
            raise ValueError(
                f"not closed under multiplication mod {m}: {sorted(h)}")
        object.__setattr__(self, "subgroup", frozenset(h))
        if len(units) % len(h):
            raise ValueError("subgroup order does not divide phi(m)")

    @classmethod
    def rationals(cls) -> "FieldModel":
        return cls(1, frozenset({0}))

    @classmethod
    def abelian(cls, conductor: int, generators) -> "FieldModel":
        """Field fixed by the subgroup generated by the given residues."""
        h = _multiplicative_closure(
            {g % conductor for g in generators} or {1 % conductor},
            conductor)
        return cls(conductor, frozenset(h))

    @classmethod
    def parse(cls, text: str) -> "FieldModel":
        """Accepts "Q" or "abelian:m=5;H=1,4"."""
        body = text.strip()
        if body in ("Q", "q"):
            return cls.rationals()
        if not body.startswith("abelian:"):
            raise ParseError(f"unrecognized field {text!r}")
        m = None
        gens: list[int] = []
        for chunk in body[len("abelian:"):].split(";"):
            chunk = chunk.strip()
            if chunk.startswith("m="):
                m = int(chunk[2:])
            elif chunk.startswith("H="):
                gens = [int(tok) for tok in chunk[2:].split(",") if tok]
            elif chunk:
                raise ParseError(f"unrecognized field component {chunk!r}")
        if m is None:
            raise ParseError(f"missing conductor in {text!r}")
        return cls.abelian(m, gens)

    @property
    def is_rational(self) -> bool:
        return self.conductor == 1

    @property
    def degree(self) -> int:
        return len(_unit_residues(self.conductor)) // len(self.subgroup)

    @property
    def signature(self) -> tuple[int, int]:
        """(r1, r2): totally real iff complex conjugation (-1 mod m)
        fixes the field, i.e. lies in the subgroup."""
        if (-1) % self.conductor in self.subgroup:
            return (self.degree, 0)
        return (0, self.degree // 2)

    def describe(self) -> str:
        if self.is_rational:
            return "Q"
        elems = ",".join(str(x) for x in sorted(self.subgroup))
        return f"abelian:m={self.conductor};H={elems}"


def _multiplicative_closure(elements: set, m: int) -> set:
    closed = set(elements)
    closed.add(1 % m)
    while True:
        extra = {a * b % m for a in closed for b in closed} - closed
        if not extra:
            return closed
        closed |= extra


@dataclass(frozen=True)
class WInvariant:
    """w_i as a factored integer."""

    i: int
    value: int
    factorization: tuple[tuple[int, int], ...]


def cyclo_exponent(f: FieldModel, p: int, nu: int) -> int:
    """Exponent of the Galois group of F(zeta_{p^nu}) over F.

    The group is the image in (Z/p^nu)^x of the units mod M = lcm(m, p^nu)
    that fix F; its exponent is the lcm of the element orders.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    if nu == 0:
        return 1
    pn = p ** nu
    m = f.conductor
    big = lcm(m, pn)
    image = {x % pn for x in range(big)
             if gcd(x, big) == 1 and x % m in f.subgroup}
    exponent = 1
    for a in image:
        exponent = lcm(exponent, _mult_order(a, pn))
    return exponent


def w_invariant(f: FieldModel, i: int) -> WInvariant:
    """Largest integer whose cyclotomic layers over F all have Galois
    exponent dividing i.

    Only primes with p - 1 <= i * degree can contribute: the first layer
    already has a group with index at most the degree in (Z/p)^x.  For
    each such p the level is raised while the exponent divides i; the
    exponents are nondecreasing in the level, so the first failure is
    final.
    """
    if i < 1:
        raise ValueError("i must be positive")
    bound = i * f.degree + 1
    factorization = []
    value = 1
    for p in iter_primes():
        if p > bound:
            break
        nu = 0
        while i % cyclo_exponent(f, p, nu + 1) == 0:
            nu += 1
            if nu > 64:
                raise AssertionError(
                    "cyclotomic exponent failed to grow; bug")
        if nu:
            factorization.append((p, nu))
            value *= p ** nu
    return WInvariant(i, value, tuple(factorization))


def k_group(f: FieldModel, n: int) -> FinAbGroup:
    """Structure of K_n(F) for odd n >= 3, by the rule on n mod 8.

    With i = (n+1)/2, r1 and r2 the signature, and w = w_i(F):
    n = 1 mod 8: Z^(r1+r2) + Z/w          n = 3 mod 8: Z^r2 + (Z/2)^(r1-1) + Z/2w
    n = 5 mod 8: Z^(r1+r2) + Z/(w/2)      n = 7 mod 8: Z^r2 + Z/w
    The n = 3 mod 8 case needs r1 >= 1; totally imaginary fields are
    refused there rather than guessed at.
    """
    if n % 2 == 0:
        raise EvenIndex(f"n = {n} is even")
    if n < 3:
        raise ValueError(f"n must be at least 3: {n}")
    i = (n + 1) // 2
    r1, r2 = f.signature
    w = w_invariant(f, i).value
    residue = n % 8
    if residue == 1:
        return FinAbGroup.from_cyclic_orders([w], free_rank=r1 + r2)
    if residue == 3:
        if r1 == 0:
            raise UnsupportedSignature(
                "n = 3 mod 8 with no real place: the (Z/2)^(r1-1) factor "
                "is ill-formed")
        return FinAbGroup.from_cyclic_orders([2] * (r1 - 1) + [2 * w],
                                             free_rank=r2)
    if residue == 5:
        if w % 2:
            raise AssertionError("w must be even")
        return FinAbGroup.from_cyclic_orders([w // 2], free_rank=r1 + r2)
    return FinAbGroup.from_cyclic_orders([w], free_rank=r2)


def compare_k_groups(f1: FieldModel, f2: FieldModel, n_list) -> bool:
    """Structural equality of K_n for every n in the list."""
    return all(k_group(f1, n) == k_group(f2, n) for n in n_list)
