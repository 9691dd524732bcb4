"""Finite permutation group engine.

Generation by full enumeration (with an order cap), conjugacy classes,
coset and double-coset actions, normal cores, abelianizations with
explicit coordinates, and the degree-one transfer and inclusion maps.

Conventions: points are 0-indexed; composition is right-to-left,
(p * q)(i) = p(q(i)); coset 0 of a coset space is the subgroup itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from ._primes import factorize
from .errors import (
    InvalidPermutation,
    NotASubgroup,
    OrderCapExceeded,
    ParseError,
)
from .lattice import IntMat, adjugate, det, smith_with_transforms

__all__ = [
    "DEFAULT_ORDER_CAP",
    "Permutation",
    "PermGroup",
    "Subgroup",
    "ConjugacyClass",
    "CosetSpace",
    "FinAbGroup",
    "AbHom",
    "Abelianization",
    "generate",
    "conjugacy_classes",
    "coset_action",
    "double_cosets",
    "normal_core",
    "abelianization",
    "transfer",
    "inclusion_induced",
    "parse_group_file",
    "format_group_file",
]

DEFAULT_ORDER_CAP = 50_000


class Permutation:
    """Permutation of {0, ..., degree-1} stored as its image tuple.

    >>> a = Permutation.parse(3, "(0 1 2)")
    >>> b = Permutation.parse(3, "(0 1)")
    >>> (a * b).format()
    '(1 2)'
    """

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]) -> None:
        imgs = tuple(images)
        seen = [False] * len(imgs)
        for value in imgs:
            if not isinstance(value, int) or not 0 <= value < len(imgs):
                raise InvalidPermutation(
                    f"image {value!r} out of range for degree {len(imgs)}")
            if seen[value]:
                raise InvalidPermutation(f"repeated image {value}")
            seen[value] = True
        object.__setattr__(self, "images", imgs)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int,
                    cycles: Sequence[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        touched = set()
        for cycle in cycles:
            for point in cycle:
                if not isinstance(point, int) or not 0 <= point < degree:
                    raise InvalidPermutation(
                        f"point {point!r} out of range for degree {degree}")
                if point in touched:
                    raise InvalidPermutation(
                        f"point {point} appears in two cycles")
                touched.add(point)
            for pos, point in enumerate(cycle):
                images[point] = cycle[(pos + 1) % len(cycle)]
        return cls(images)

    @classmethod
    def parse(cls, degree: int, text: str) -> "Permutation":
        """Parse disjoint-cycle notation, e.g. "(0 1 2)(3 4)" or "()"."""
        body = text.strip()
        if body in ("", "()"):
            return cls.identity(degree)
        cycles: list[list[int]] = []
        rest = body
        while rest:
            if not rest.startswith("("):
                raise InvalidPermutation(f"expected '(' in {text!r}")
            end = rest.find(")")
            if end < 0:
                raise InvalidPermutation(f"unbalanced parentheses in {text!r}")
            inner = rest[1:end].replace(",", " ")
            points = []
            for token in inner.split():
                try:
                    points.append(int(token))
                except ValueError:
                    raise InvalidPermutation(
                        f"bad point {token!r} in {text!r}") from None
            if points:
                cycles.append(points)
            rest = rest[end + 1:].strip()
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self.images) != len(other.images):
            raise InvalidPermutation("degree mismatch in composition")
        result = object.__new__(Permutation)
        object.__setattr__(result, "images",
                           tuple(self.images[j] for j in other.images))
        return result

    def inverse(self) -> "Permutation":
        inverse_images = [0] * len(self.images)
        for point, image in enumerate(self.images):
            inverse_images[image] = point
        result = object.__new__(Permutation)
        object.__setattr__(result, "images", tuple(inverse_images))
        return result

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g * self * g^-1 in one pass."""
        if len(self.images) != len(g.images):
            raise InvalidPermutation("degree mismatch in conjugation")
        images = [0] * len(self.images)
        for point, image in enumerate(self.images):
            images[g.images[point]] = g.images[image]
        result = object.__new__(Permutation)
        object.__setattr__(result, "images", tuple(images))
        return result

    def __pow__(self, exponent: int) -> "Permutation":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Permutation.identity(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_identity(self) -> bool:
        return all(image == point for point, image in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cycle = [start]
            seen[start] = True
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen[point] = True
                point = self.images[point]
            out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """All cycle lengths including fixed points, sorted ascending."""
        lengths = [len(c) for c in self.cycles()]
        lengths.extend([1] * (self.degree - sum(lengths)))
        return tuple(sorted(lengths))

    def order(self) -> int:
        result = 1
        for cycle in self.cycles():
            result = lcm(result, len(cycle))
        return result

    def format(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")"
                       for c in cycles)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation.parse({self.degree}, {self.format()!r})"


def _closure(degree: int, generators: Sequence[Permutation],
             cap: int) -> list[Permutation]:
    """BFS closure; deterministic order with the identity first."""
    identity = Permutation.identity(degree)
    elements = [identity]
    seen = {identity}
    frontier = 0
    while frontier < len(elements):
        current = elements[frontier]
        frontier += 1
        for g in generators:
            candidate = current * g
            if candidate not in seen:
                seen.add(candidate)
                elements.append(candidate)
                if len(elements) > cap:
                    raise OrderCapExceeded(
                        f"group order exceeds cap {cap}")
    return elements


def _reduce_generators(elements: Sequence[Permutation],
                       degree: int) -> tuple[Permutation, ...]:
    """Greedy small generating set for an already-closed element list."""
    gens: list[Permutation] = []
    have = {Permutation.identity(degree)}
    for candidate in elements:
        if candidate in have:
            continue
        gens.append(candidate)
        have = set(_closure(degree, gens, cap=len(elements)))
        if len(have) == len(elements):
            break
    return tuple(gens)


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    members: frozenset

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def element_order(self) -> int:
        return self.representative.order()


class _GroupBase:
    """Shared behavior for PermGroup and Subgroup (both "group-likes")."""

    degree: int
    generators: tuple
    elements: tuple
    element_set: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self.element_set

    def conjugacy_classes(self) -> tuple[ConjugacyClass, ...]:
        """Partition into conjugacy classes by generator-conjugation orbits."""
        if self._classes is None:
            classes = []
            assigned: set[Permutation] = set()
            for seed in self.elements:
                if seed in assigned:
                    continue
                orbit = [seed]
                orbit_set = {seed}
                frontier = 0
                while frontier < len(orbit):
                    current = orbit[frontier]
                    frontier += 1
                    for g in self.generators:
                        moved = current.conjugate(g)
                        if moved not in orbit_set:
                            orbit_set.add(moved)
                            orbit.append(moved)
                assigned |= orbit_set
                classes.append(ConjugacyClass(seed, frozenset(orbit_set)))
            self._classes = tuple(classes)
        return self._classes

    def class_of(self, perm: Permutation) -> ConjugacyClass:
        for cls in self.conjugacy_classes():
            if perm in cls.members:
                return cls
        raise ValueError(f"{perm!r} is not an element of this group")

    def subgroup(self, generators: Iterable[Permutation]) -> "Subgroup":
        gens = tuple(generators)
        for g in gens:
            if g not in self.element_set:
                raise NotASubgroup(
                    f"generator {g.format()} lies outside the group")
        elements = _closure(self.degree, gens, cap=self.order)
        return Subgroup(self, elements, generators=gens)

    def subgroup_from_elements(self, elements: Iterable[Permutation], *,
                               validate: bool = True) -> "Subgroup":
        elems = sorted(set(elements))
        if not elems:
            raise NotASubgroup("a subgroup needs at least the identity")
        if validate:
            element_set = set(elems)
            if not element_set <= self.element_set:
                raise NotASubgroup("elements lie outside the group")
            for a in elems:
                for b in elems:
                    if a * b not in element_set:
                        raise NotASubgroup(
                            f"set not closed: {(a * b).format()} missing")
        return Subgroup(self, elems)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [Permutation.identity(self.degree)])

    def full_subgroup(self) -> "Subgroup":
        return Subgroup(self, self.elements, generators=self.generators)

    def point_stabilizer(self, point: int) -> "Subgroup":
        return Subgroup(self, [g for g in self.elements
                               if g.images[point] == point])

    def is_normal_subgroup(self, sub: "Subgroup") -> bool:
        _require_subgroup(self, sub)
        return all(h.conjugate(g) in sub.element_set
                   for g in self.generators for h in sub.generators)

    def all_subgroups(self) -> tuple["Subgroup", ...]:
        """Every subgroup, found by closing joins <S, x>; cached."""
        if self._subgroups is None:
            trivial = self.trivial_subgroup()
            found = {trivial.element_set: trivial}
            worklist = [trivial]
            while worklist:
                current = worklist.pop()
                if current.order == self.order:
                    continue
                for x in self.elements:
                    if x in current.element_set:
                        continue
                    gens = current.generators + (x,)
                    elements = _closure(self.degree, gens, cap=self.order)
                    key = frozenset(elements)
                    if key not in found:
                        bigger = Subgroup(self, elements, generators=gens)
                        found[key] = bigger
                        worklist.append(bigger)
            ordered = sorted(found.values(),
                             key=lambda s: (s.order, s.elements))
            self._subgroups = tuple(ordered)
        return self._subgroups


class PermGroup(_GroupBase):
    """Group generated by permutations, fully enumerated at construction."""

    def __init__(self, degree: int, generators: Iterable[Permutation], *,
                 order_cap: int = DEFAULT_ORDER_CAP) -> None:
        gens = tuple(generators)
        for g in gens:
            if not isinstance(g, Permutation):
                raise InvalidPermutation(f"not a permutation: {g!r}")
            if g.degree != degree:
                raise InvalidPermutation(
                    f"generator degree {g.degree} != group degree {degree}")
        self.degree = degree
        self.generators = tuple(g for g in gens if not g.is_identity())
        self.elements = tuple(_closure(degree, self.generators, order_cap))
        self.element_set = frozenset(self.elements)
        self._classes = None
        self._subgroups = None
        self._ab = None
        self._transfer_memo: dict = {}
        self._inclusion_memo: dict = {}

    def __repr__(self) -> str:
        return (f"PermGroup(degree={self.degree}, order={self.order}, "
                f"generators={[g.format() for g in self.generators]})")


class Subgroup(_GroupBase):
    """Subgroup of a PermGroup; equality is element-set equality."""

    def __init__(self, parent: _GroupBase,
                 elements: Iterable[Permutation], *,
                 generators: tuple[Permutation, ...] | None = None) -> None:
        self.parent = parent
        self.degree = parent.degree
        self.elements = tuple(sorted(set(elements)))
        self.element_set = frozenset(self.elements)
        if not self.element_set <= parent.element_set:
            raise NotASubgroup("subgroup elements lie outside the parent")
        if generators is not None:
            self.generators = tuple(g for g in generators
                                    if not g.is_identity())
            if not self.generators and self.order > 1:
                raise NotASubgroup("generators do not generate the elements")
        else:
            self.generators = _reduce_generators(self.elements, self.degree)
        self._classes = None
        self._subgroups = None
        self._ab = None
        self._transfer_memo: dict = {}
        self._inclusion_memo: dict = {}

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subgroup)
                and self.degree == other.degree
                and self.element_set == other.element_set)

    def __hash__(self) -> int:
        return hash(self.element_set)

    def __repr__(self) -> str:
        return (f"Subgroup(order={self.order}, index={self.index}, "
                f"generators={[g.format() for g in self.generators]})")


GroupLike = Union[PermGroup, Subgroup]


def _require_subgroup(group: GroupLike, sub: GroupLike) -> None:
    if group.degree != getattr(sub, "degree", None):
        raise NotASubgroup("degree mismatch")
    if not sub.element_set <= group.element_set:
        raise NotASubgroup("claimed subgroup is not contained in the group")


def generate(degree: int, generators: Iterable[Permutation],
             order_cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Closure of the generators as a PermGroup; order is exact."""
    return PermGroup(degree, generators, order_cap=order_cap)


def conjugacy_classes(group: GroupLike) -> tuple[ConjugacyClass, ...]:
    return group.conjugacy_classes()


class CosetSpace:
    """Left cosets gH with the action of the group by left multiplication.

    Coset 0 is H itself; representatives are in breadth-first order from
    the identity, so the transversal is canonical.
    """

    def __init__(self, group: GroupLike, subgroup: GroupLike) -> None:
        _require_subgroup(group, subgroup)
        self.group = group
        self.subgroup = subgroup
        sub_elements = subgroup.elements
        identity = group.identity

        def key_of(x: Permutation) -> Permutation:
            return min(x * h for h in sub_elements)

        self._key_of = key_of
        reps = [identity]
        key_to_index = {key_of(identity): 0}
        frontier = 0
        while frontier < len(reps):
            current = reps[frontier]
            frontier += 1
            for g in group.generators:
                candidate = g * current
                key = key_of(candidate)
                if key not in key_to_index:
                    key_to_index[key] = len(reps)
                    reps.append(candidate)
        self.coset_reps = tuple(reps)
        self._key_to_index = key_to_index

    @property
    def index(self) -> int:
        return len(self.coset_reps)

    def coset_index_of(self, x: Permutation) -> int:
        return self._key_to_index[self._key_of(x)]

    def permutation_of(self, g: Permutation) -> Permutation:
        """The permutation of coset indices induced by left multiplication."""
        return Permutation(self.coset_index_of(g * rep)
                           for rep in self.coset_reps)

    def h_components(self, g: Permutation) -> list[Permutation]:
        """For each coset i: the H-part of g, i.e. reps[g.i]^-1 * g * reps[i]."""
        out = []
        for rep in self.coset_reps:
            moved = g * rep
            target = self.coset_reps[self.coset_index_of(moved)]
            out.append(target.inverse() * moved)
        return out


def coset_action(group: GroupLike, subgroup: GroupLike) -> CosetSpace:
    """Action on G/H; its kernel is the normal core of H."""
    return CosetSpace(group, subgroup)


def double_cosets(group: GroupLike, h1: GroupLike,
                  h2: GroupLike) -> list[Permutation]:
    """Representatives of H1\\G/H2 in first-seen element order."""
    _require_subgroup(group, h1)
    _require_subgroup(group, h2)
    seen: set[Permutation] = set()
    reps = []
    for x in group.elements:
        if x in seen:
            continue
        reps.append(x)
        for a in h1.elements:
            left = a * x
            for b in h2.elements:
                seen.add(left * b)
    return reps


def normal_core(group: GroupLike, subgroup: GroupLike) -> Subgroup:
    """Largest normal subgroup of the group inside the subgroup.

    An element lies in the core iff its whole conjugacy class does.
    """
    _require_subgroup(group, subgroup)
    keep = [cls.members for cls in group.conjugacy_classes()
            if cls.members <= subgroup.element_set]
    core_elements = [x for members in keep for x in members]
    owner = group if isinstance(group, PermGroup) else group.parent
    return Subgroup(owner, core_elements)


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group in invariant-factor form.

    >>> FinAbGroup.from_cyclic_orders([2, 3])
    FinAbGroup(free_rank=0, invariant_factors=(6,))
    >>> str(FinAbGroup(1, (2,)))
    'Z x Z/2'
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        previous = None
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if previous is not None and d % previous:
                raise ValueError(
                    f"broken divisibility chain: {previous} does not "
                    f"divide {d}")
            previous = d

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int],
                           free_rank: int = 0) -> "FinAbGroup":
        """Normalize a direct sum of cyclic groups of the given orders."""
        per_prime: dict[int, list[int]] = {}
        for order in orders:
            if order < 1:
                raise ValueError(f"cyclic order {order} < 1")
            for p, e in factorize(order).items():
                per_prime.setdefault(p, []).append(e)
        width = max((len(v) for v in per_prime.values()), default=0)
        slots = [1] * width
        for p, exponents in per_prime.items():
            for position, e in enumerate(sorted(exponents, reverse=True)):
                slots[position] *= p ** e
        return cls(free_rank, tuple(reversed(slots)))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def torsion_order(self) -> int:
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    def tensor_mod(self, k: int) -> "FinAbGroup":
        """Tensor with Z/k: each Z/d becomes Z/gcd(d,k), each Z becomes Z/k."""
        if k < 1:
            raise ValueError("modulus must be positive")
        orders = [gcd(d, k) for d in self.invariant_factors]
        orders.extend([k] * self.free_rank)
        return FinAbGroup.from_cyclic_orders(o for o in orders if o > 1)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " x ".join(parts) if parts else "0"


class AbHom:
    """Homomorphism between finite abelian groups in invariant-factor
    coordinates; entries of row r are stored reduced mod the r-th target
    factor, so equal maps compare equal.
    """

    __slots__ = ("source_factors", "target_factors", "entries")

    def __init__(self, source_factors: Sequence[int],
                 target_factors: Sequence[int],
                 entries: Sequence[Sequence[int]]) -> None:
        src = tuple(source_factors)
        tgt = tuple(target_factors)
        rows = [tuple(row) for row in entries]
        if len(rows) != len(tgt) or any(len(r) != len(src) for r in rows):
            raise ValueError("entry shape does not match the factor lists")
        normalized = tuple(tuple(entry % tgt[r] for entry in row)
                           for r, row in enumerate(rows))
        for r, row in enumerate(normalized):
            for c, entry in enumerate(row):
                if (src[c] * entry) % tgt[r]:
                    raise ValueError(
                        "not a homomorphism: order of source basis vector "
                        f"{c} does not kill entry at ({r}, {c})")
        object.__setattr__(self, "source_factors", src)
        object.__setattr__(self, "target_factors", tgt)
        object.__setattr__(self, "entries", normalized)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("AbHom is immutable")

    @classmethod
    def identity(cls, factors: Sequence[int]) -> "AbHom":
        n = len(factors)
        return cls(factors, factors,
                   [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, factors: Sequence[int], c: int) -> "AbHom":
        n = len(factors)
        return cls(factors, factors,
                   [[c if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, source_factors: Sequence[int],
                     target_factors: Sequence[int],
                     columns: Sequence[Sequence[int]]) -> "AbHom":
        rows = [[col[r] for col in columns]
                for r in range(len(target_factors))]
        return cls(source_factors, target_factors, rows)

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        if len(vector) != len(self.source_factors):
            raise ValueError("vector length mismatch")
        return tuple(
            sum(entry * x for entry, x in zip(row, vector)) % d
            for row, d in zip(self.entries, self.target_factors))

    def compose(self, inner: "AbHom") -> "AbHom":
        """self after inner."""
        if inner.target_factors != self.source_factors:
            raise ValueError("composition factor mismatch")
        columns = [self.apply(inner.column(j))
                   for j in range(len(inner.source_factors))]
        return AbHom.from_columns(inner.source_factors, self.target_factors,
                                  columns)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def tensor_mod(self, k: int) -> "AbHom":
        """The induced map after tensoring source and target with Z/k."""
        keep_src = [j for j, d in enumerate(self.source_factors)
                    if gcd(d, k) > 1]
        keep_tgt = [r for r, d in enumerate(self.target_factors)
                    if gcd(d, k) > 1]
        return AbHom(
            [gcd(self.source_factors[j], k) for j in keep_src],
            [gcd(self.target_factors[r], k) for r in keep_tgt],
            [[self.entries[r][j] for j in keep_src] for r in keep_tgt])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, AbHom)
                and self.source_factors == other.source_factors
                and self.target_factors == other.target_factors
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.source_factors, self.target_factors, self.entries))

    def __repr__(self) -> str:
        return (f"AbHom({list(self.source_factors)} -> "
                f"{list(self.target_factors)}, "
                f"{[list(r) for r in self.entries]})")


class Abelianization:
    """G/[G,G] with explicit coordinates.

    Carries the canonical structure as a FinAbGroup, a projection taking a
    group element to its coordinate vector, and for each invariant-factor
    slot a representative element projecting to that basis vector.
    """

    def __init__(self, group: GroupLike) -> None:
        self.group = group
        gens: list[Permutation] = []
        for g in group.generators:
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self._gens = tuple(gens)
        if not gens:
            self._derived = (group.identity,)
            self._derived_set = frozenset(self._derived)
            self._coset_w = {group.identity: ()}
            self._proj_rows = ()
            self.structure = FinAbGroup(0, ())
            self.basis_reps = ()
            return

        derived = _normal_closure(
            group,
            [a * b * a.inverse() * b.inverse() for a in gens for b in gens])
        self._derived = tuple(derived)
        self._derived_set = frozenset(derived)

        k = len(gens)
        key_of = self._coset_key
        start = key_of(group.identity)
        zero = (0,) * k
        coords: dict[Permutation, tuple[int, ...]] = {start: zero}
        reps = [group.identity]
        words = [zero]
        relations: list[tuple[int, ...]] = []
        frontier = 0
        while frontier < len(reps):
            rep, word = reps[frontier], words[frontier]
            frontier += 1
            for idx, g in enumerate(gens):
                moved = rep * g
                stepped = tuple(w + (1 if t == idx else 0)
                                for t, w in enumerate(word))
                key = key_of(moved)
                known = coords.get(key)
                if known is None:
                    coords[key] = stepped
                    reps.append(moved)
                    words.append(stepped)
                else:
                    relation = tuple(a - b for a, b in zip(stepped, known))
                    if any(relation):
                        relations.append(relation)
        quotient_order = group.order // len(derived)
        if len(coords) != quotient_order:
            raise AssertionError("abelian quotient enumeration out of sync")
        self._coset_w = coords

        relation_matrix = IntMat([[rel[r] for rel in relations]
                                  for r in range(k)])
        diag, u, _ = smith_with_transforms(relation_matrix)
        diag_entries = [diag[i, i] for i in range(k)]
        if any(d == 0 for d in diag_entries):
            raise AssertionError("finite quotient produced a zero factor")
        total = 1
        for d in diag_entries:
            total *= d
        if total != quotient_order:
            raise AssertionError("invariant factors do not match the order")

        kept = [i for i, d in enumerate(diag_entries) if d > 1]
        self.structure = FinAbGroup(0, tuple(diag_entries[i] for i in kept))
        self._proj_rows = tuple(u.row(i) for i in kept)
        u_inverse = adjugate(u).scale(det(u))  # det is +-1
        basis = []
        for i in kept:
            word = u_inverse.column(i)
            element = group.identity
            for g, exponent in zip(gens, word):
                element = element * g ** exponent
            basis.append(element)
        self.basis_reps = tuple(basis)

    def _coset_key(self, x: Permutation) -> Permutation:
        return min(x * d for d in self._derived)

    @property
    def factors(self) -> tuple[int, ...]:
        return self.structure.invariant_factors

    def project(self, element: Permutation) -> tuple[int, ...]:
        """Coordinates of the element's class, one entry per factor."""
        if element not in self.group.element_set:
            raise ValueError("element lies outside the group")
        word = self._coset_w[self._coset_key(element)]
        return tuple(
            sum(r * w for r, w in zip(row, word)) % d
            for row, d in zip(self._proj_rows, self.factors))

    def derived_subgroup_order(self) -> int:
        return len(self._derived)

    def __repr__(self) -> str:
        return f"Abelianization({self.structure})"


def _normal_closure(group: GroupLike,
                    seeds: Iterable[Permutation]) -> list[Permutation]:
    gens: list[Permutation] = []
    for s in seeds:
        if not s.is_identity() and s not in gens:
            gens.append(s)
    elements = _closure(group.degree, gens, cap=group.order)
    element_set = set(elements)
    while True:
        extra = []
        for g in group.generators:
            for x in gens:
                moved = x.conjugate(g)
                if moved not in element_set and moved not in extra:
                    extra.append(moved)
        if not extra:
            return elements
        gens.extend(extra)
        elements = _closure(group.degree, gens, cap=group.order)
        element_set = set(elements)


def abelianization(group: GroupLike) -> Abelianization:
    """G/[G,G] with invariant factors, projection, and basis lifts; cached."""
    if group._ab is None:
        group._ab = Abelianization(group)
    return group._ab


def transfer(group: GroupLike, subgroup: GroupLike) -> AbHom:
    """Matrix of the transfer map H1(G) -> H1(H) over the canonical
    transversal: g goes to the product of its H-components on the cosets.
    Memoized on the group, keyed by the subgroup's elements.
    """
    _require_subgroup(group, subgroup)
    # the cached matrix is only valid in the coordinates of the
    # abelianization it was computed against, so that is cached with it
    # and adopted by equal-element instances that have none yet
    cached = group._transfer_memo.get(subgroup.element_set)
    if cached is not None:
        ab_cached, hom = cached
        if subgroup._ab is None:
            subgroup._ab = ab_cached
        if subgroup._ab is ab_cached:
            return hom
    ab_g = abelianization(group)
    ab_h = abelianization(subgroup)
    cosets = coset_action(group, subgroup)
    columns = []
    for rep in ab_g.basis_reps:
        product = group.identity
        for component in cosets.h_components(rep):
            product = product * component
        columns.append(ab_h.project(product))
    result = AbHom.from_columns(ab_g.factors, ab_h.factors, columns)
    group._transfer_memo[subgroup.element_set] = (ab_h, result)
    return result


def inclusion_induced(subgroup: GroupLike, group: GroupLike) -> AbHom:
    """Matrix of the map H1(H) -> H1(G) sending a class to its class."""
    _require_subgroup(group, subgroup)
    cached = group._inclusion_memo.get(subgroup.element_set)
    if cached is not None:
        ab_cached, hom = cached
        if subgroup._ab is None:
            subgroup._ab = ab_cached
        if subgroup._ab is ab_cached:
            return hom
    ab_h = abelianization(subgroup)
    ab_g = abelianization(group)
    columns = [ab_g.project(rep) for rep in ab_h.basis_reps]
    result = AbHom.from_columns(ab_h.factors, ab_g.factors, columns)
    group._inclusion_memo[subgroup.element_set] = (ab_h, result)
    return result


def parse_group_file(text: str, *, path: str | None = None,
                     order_cap: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Parse the group file format: `degree: N`, then `gen: <cycles>` lines."""
    degree: int | None = None
    generators: list[Permutation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("degree:"):
            if degree is not None:
                raise ParseError("duplicate degree line",
                                 line=lineno, path=path)
            body = line[len("degree:"):].strip()
            try:
                degree = int(body)
            except ValueError:
                raise ParseError(f"bad degree {body!r}",
                                 line=lineno, path=path) from None
            if degree <= 0:
                raise ParseError("degree must be positive",
                                 line=lineno, path=path)
        elif line.startswith("gen:"):
            if degree is None:
                raise ParseError("gen line before degree line",
                                 line=lineno, path=path)
            body = line[len("gen:"):].strip()
            try:
                generators.append(Permutation.parse(degree, body))
            except InvalidPermutation as exc:
                raise ParseError(str(exc), line=lineno, path=path) from None
        else:
            raise ParseError(f"unrecognized line {line!r}",
                             line=lineno, path=path)
    if degree is None:
        raise ParseError("missing `degree: N` line", path=path)
    return PermGroup(degree, generators, order_cap=order_cap)


def format_group_file(group: GroupLike) -> str:
    lines = [f"degree: {group.degree}"]
    generators = group.generators or (group.identity,)
    lines.extend(f"gen: {g.format()}" for g in generators)
    return "\n".join(lines) + "\n"
