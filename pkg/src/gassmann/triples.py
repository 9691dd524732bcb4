"""Gassmann triples and integral equivalence.

A triple (G, H1, H2) of a group with two finite-index subgroups has
equal permutation characters when every conjugacy class has the same
number of fixed cosets on G/H1 and on G/H2.  Integral equivalence asks
for more: a unimodular matrix intertwining the two coset actions.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence, Union

from .errors import (
    IndexMismatch,
    MixedSigns,
    NonSquare,
    NotFoundWithinBudget,
    PreconditionViolated,
)
from .lattice import IntMat, adjugate, det
from .permgroup import (
    CosetSpace,
    GroupLike,
    Permutation,
    Subgroup,
    _require_subgroup,
    coset_action,
)

__all__ = [
    "GassmannTriple",
    "CorrespondenceMatrix",
    "is_gassmann",
    "are_conjugate",
    "permutation_character",
    "intertwiner_basis",
    "integral_search",
    "verify_integral_triple",
    "sign_normalize",
]


def permutation_character(group: GroupLike, subgroup: GroupLike,
                          cosets: CosetSpace | None = None) -> tuple[int, ...]:
    """Fixed-coset counts on G/H, one entry per conjugacy class of G
    (in conjugacy_classes order)."""
    if cosets is None:
        cosets = coset_action(group, subgroup)
    counts = []
    for cls in group.conjugacy_classes():
        action = cosets.permutation_of(cls.representative)
        counts.append(sum(1 for i, j in enumerate(action.images) if i == j))
    return tuple(counts)


def is_gassmann(group: GroupLike, h1: GroupLike, h2: GroupLike) -> bool:
    """Equal permutation characters on G/H1 and G/H2.

    Fixed-point counts are class functions, so checking one
    representative per class is exact.
    """
    _require_subgroup(group, h1)
    _require_subgroup(group, h2)
    if h1.order != h2.order:
        raise IndexMismatch(
            f"indices differ: {group.order // h1.order} vs "
            f"{group.order // h2.order}")
    cs1 = coset_action(group, h1)
    cs2 = coset_action(group, h2)
    for cls in group.conjugacy_classes():
        rep = cls.representative
        fix1 = sum(1 for i, j in
                   enumerate(cs1.permutation_of(rep).images) if i == j)
        fix2 = sum(1 for i, j in
                   enumerate(cs2.permutation_of(rep).images) if i == j)
        if fix1 != fix2:
            return False
    return True


def are_conjugate(group: GroupLike, h1: GroupLike, h2: GroupLike) -> bool:
    """Whether gH1g^-1 = H2 for some g in the group."""
    _require_subgroup(group, h1)
    _require_subgroup(group, h2)
    if h1.order != h2.order:
        return False
    return _conjugator(group, h1, h2) is not None


def _conjugator(group: GroupLike, h1: GroupLike,
                h2: GroupLike) -> Permutation | None:
    if h1.order != h2.order:
        return None
    target = h2.element_set
    for g in group.elements:
        if all(x.conjugate(g) in target for x in h1.generators):
            return g
    return None


class GassmannTriple:
    """(G, H1, H2) with equal index and equal permutation characters,
    both checked at construction."""

    def __init__(self, group: GroupLike, h1: GroupLike,
                 h2: GroupLike) -> None:
        _require_subgroup(group, h1)
        _require_subgroup(group, h2)
        if h1.order != h2.order:
            raise IndexMismatch(
                f"indices differ: {group.order // h1.order} vs "
                f"{group.order // h2.order}")
        self.group = group
        self.h1 = h1
        self.h2 = h2
        self.cosets1 = coset_action(group, h1)
        self.cosets2 = coset_action(group, h2)
        if permutation_character(group, h1, self.cosets1) != \
                permutation_character(group, h2, self.cosets2):
            raise PreconditionViolated(
                "permutation characters differ: not a Gassmann triple")
        self.index = self.cosets1.index

    def __repr__(self) -> str:
        return (f"GassmannTriple(|G|={self.group.order}, "
                f"index={self.index})")


def _action_images(triple: GassmannTriple) -> list[tuple[Permutation,
                                                          Permutation]]:
    """(sigma1(g), sigma2(g)) on coset indices, per generator g."""
    return [(triple.cosets1.permutation_of(g),
             triple.cosets2.permutation_of(g))
            for g in triple.group.generators]


class CorrespondenceMatrix:
    """Unimodular matrix intertwining the two coset actions.

    Rows are indexed by G/H2 cosets and columns by G/H1 cosets, so the
    equivariance condition reads A[s2(r)][s1(c)] = A[r][c].  The all-ones
    vector is an eigenvector of A and of A^T with a common eigenvalue
    `sign` in {+1, -1}.  `triple` may be None for a matrix supplied
    without group context (the lattice pipeline accepts those).
    """

    def __init__(self, a: IntMat, triple: GassmannTriple | None = None, *,
                 sign: int | None = None) -> None:
        if not a.is_square:
            raise NonSquare("correspondence matrices are square")
        d = det(a)
        if d not in (1, -1):
            raise ValueError(f"not unimodular: det = {d}")
        eps = _ones_eigenvalue(a)
        if sign is not None and sign != eps:
            raise MixedSigns(f"declared sign {sign} but eigenvalue {eps}")
        if triple is not None:
            if a.nrows != triple.index:
                raise NonSquare(
                    f"size {a.nrows} does not match index {triple.index}")
            bad = _equivariance_failures(a, triple)
            if bad:
                raise PreconditionViolated(
                    "not equivariant on generators: " + ", ".join(bad))
        self.A = a
        self.triple = triple
        self.sign = eps
        self.det = d

    def __repr__(self) -> str:
        return (f"CorrespondenceMatrix(n={self.A.nrows}, det={self.det}, "
                f"sign={self.sign})")


def _ones_eigenvalue(a: IntMat) -> int:
    """The common row/column sum; MixedSigns when sums are inconsistent
    or not a unit (a unimodular equivariant matrix always has one)."""
    row_sums = {sum(row) for row in a.rows}
    col_sums = {sum(a.column(j)) for j in range(a.ncols)}
    if len(row_sums) != 1 or len(col_sums) != 1:
        raise MixedSigns("row or column sums are not constant")
    (eps_row,), (eps_col,) = row_sums, col_sums
    if eps_row != eps_col:
        raise MixedSigns(
            f"row-sum eigenvalue {eps_row} != column-sum {eps_col}")
    if eps_row not in (1, -1):
        raise MixedSigns(f"eigenvalue {eps_row} is not a unit")
    return eps_row


def _equivariance_failures(a: IntMat, triple: GassmannTriple) -> list[str]:
    failures = []
    n = a.nrows
    for g, (s1, s2) in zip(triple.group.generators, _action_images(triple)):
        ok = all(a[s2.images[r], s1.images[c]] == a[r, c]
                 for r in range(n) for c in range(n))
        if not ok:
            failures.append(g.format())
    return failures


def intertwiner_basis(group: GroupLike, h1: GroupLike,
                      h2: GroupLike) -> list[IntMat]:
    """0/1 basis of the integer intertwiner space.

    The group acts on (G/H2)-row x (G/H1)-column index pairs; each orbit
    gives one basis matrix, and the orbits partition all of the pairs,
    so every equivariant integer matrix is a unique integer combination.
    Orbits are sorted by their least pair.
    """
    _require_subgroup(group, h1)
    _require_subgroup(group, h2)
    if h1.order != h2.order:
        raise IndexMismatch("intertwiners need equal coset counts")
    triple_like_cs1 = coset_action(group, h1)
    triple_like_cs2 = coset_action(group, h2)
    n = triple_like_cs1.index
    pairs = [(triple_like_cs2.permutation_of(g).images,
              triple_like_cs1.permutation_of(g).images)
             for g in group.generators]
    orbit_id = [[-1] * n for _ in range(n)]
    orbits: list[list[tuple[int, int]]] = []
    for r0 in range(n):
        for c0 in range(n):
            if orbit_id[r0][c0] >= 0:
                continue
            oid = len(orbits)
            stack = [(r0, c0)]
            orbit_id[r0][c0] = oid
            members = []
            while stack:
                r, c = stack.pop()
                members.append((r, c))
                for s2, s1 in pairs:
                    nr, nc = s2[r], s1[c]
                    if orbit_id[nr][nc] < 0:
                        orbit_id[nr][nc] = oid
                        stack.append((nr, nc))
            orbits.append(members)
    basis = []
    for members in orbits:
        rows = [[0] * n for _ in range(n)]
        for r, c in members:
            rows[r][c] = 1
        basis.append(IntMat(rows))
    return basis


def _orbit_structure(triple: GassmannTriple) -> tuple[list[list[int]],
                                                      list[int]]:
    """(orbit ids per cell, per-orbit count of cells in each row).

    Row transitivity makes the per-row count constant, so the row sum of
    any combination sum(c_d B_d) is sum(c_d k_d) independent of the row.
    """
    basis = intertwiner_basis(triple.group, triple.h1, triple.h2)
    n = triple.index
    orbit_id = [[-1] * n for _ in range(n)]
    row_counts = []
    for oid, b in enumerate(basis):
        cells = 0
        for r in range(n):
            for c in range(n):
                if b[r, c]:
                    orbit_id[r][c] = oid
                    cells += 1
        assert cells % n == 0
        row_counts.append(cells // n)
    return orbit_id, row_counts


def _assemble(orbit_id: Sequence[Sequence[int]],
              coeffs: Sequence[int]) -> IntMat:
    return IntMat([[coeffs[oid] for oid in row] for row in orbit_id])


def _conjugate_correspondence(triple: GassmannTriple,
                              g: Permutation) -> CorrespondenceMatrix:
    """The coset bijection xH1 -> xg^-1 H2 as a permutation matrix."""
    n = triple.index
    g_inv = g.inverse()
    rows = [[0] * n for _ in range(n)]
    for c, rep in enumerate(triple.cosets1.coset_reps):
        rows[triple.cosets2.coset_index_of(rep * g_inv)][c] = 1
    return CorrespondenceMatrix(IntMat(rows), triple)


def integral_search(group: GroupLike, h1: GroupLike, h2: GroupLike,
                    coeff_bound: int, budget: int, *,
                    seed: int = 0) -> CorrespondenceMatrix:
    """Search for a unimodular intertwiner.

    Conjugate subgroups short-circuit to the coset bijection.  Otherwise
    candidates are integer combinations of the orbit basis; the search
    is exhaustive over the coefficient box when it is small (basis size
    <= 6 and bound <= 3) and seeded-random sampling beyond that.  Only
    combinations whose constant row sum is +-1 can be unimodular, which
    prunes most of the box before any determinant is computed.

    Raises NotFoundWithinBudget with search statistics on failure; that
    is a report, not a nonexistence proof (except when `exhausted`).
    """
    if not is_gassmann(group, h1, h2):
        raise PreconditionViolated("not a Gassmann triple")
    triple = GassmannTriple(group, h1, h2)
    g = _conjugator(group, h1, h2)
    if g is not None:
        return _conjugate_correspondence(triple, g)

    orbit_id, row_counts = _orbit_structure(triple)
    k = len(row_counts)

    def try_coeffs(coeffs: Sequence[int]) -> CorrespondenceMatrix | None:
        if sum(c * w for c, w in zip(coeffs, row_counts)) not in (1, -1):
            return None
        a = _assemble(orbit_id, coeffs)
        if det(a) in (1, -1):
            return sign_normalize(CorrespondenceMatrix(a, triple))
        return None

    if k <= 6 and coeff_bound <= 3:
        box = itertools.product(range(-coeff_bound, coeff_bound + 1),
                                repeat=k)
        ordered = sorted(box, key=lambda c: (sum(abs(x) for x in c),
                                             tuple(abs(x) for x in c),
                                             tuple(x < 0 for x in c)))
        trials = 0
        for coeffs in ordered:
            trials += 1
            found = try_coeffs(coeffs)
            if found is not None:
                return found
        raise NotFoundWithinBudget(
            "no unimodular combination in the coefficient box",
            trials=trials, exhausted=True, coeff_bound=coeff_bound,
            basis_size=k)

    rng = random.Random(seed)
    for trial in range(budget):
        coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in range(k)]
        found = try_coeffs(coeffs)
        if found is not None:
            return found
    raise NotFoundWithinBudget(
        f"no unimodular combination in {budget} random samples",
        trials=budget, exhausted=False, coeff_bound=coeff_bound,
        basis_size=k)


def verify_integral_triple(triple: GassmannTriple,
                           a: Union[IntMat, CorrespondenceMatrix]) -> dict:
    """Full report on a candidate intertwiner.

    Checks unimodularity, equivariance generator by generator, the
    common +-1 eigenvalue on the all-ones vector, and, for non-conjugate
    subgroup pairs, that every row of A and of A^-1 has at least two
    nonzero entries.  Failures are reported, never raised.
    """
    if isinstance(a, CorrespondenceMatrix):
        a = a.A
    if not a.is_square:
        raise NonSquare("candidate must be square")
    if a.nrows != triple.index:
        raise NonSquare(
            f"size {a.nrows} does not match index {triple.index}")
    d = det(a)
    unimodular = d in (1, -1)
    failures = _equivariance_failures(a, triple)

    sign = None
    row_sums = {sum(row) for row in a.rows}
    col_sums = {sum(a.column(j)) for j in range(a.ncols)}
    sign_consistent = (len(row_sums) == 1 and row_sums == col_sums
                       and next(iter(row_sums)) in (1, -1))
    if sign_consistent:
        sign = next(iter(row_sums))

    conjugate = are_conjugate(triple.group, triple.h1, triple.h2)
    report = {
        "det": d,
        "unimodular": unimodular,
        "equivariant": not failures,
        "equivariance_failures": failures,
        "sign": sign,
        "sign_consistent": sign_consistent,
        "conjugate_pair": conjugate,
    }
    if not conjugate:
        report["rows_multi_support"] = _rows_multi_support(a)
        if unimodular:
            inverse = adjugate(a).scale(d)
            report["inverse_rows_multi_support"] = \
                _rows_multi_support(inverse)
        else:
            report["inverse_rows_multi_support"] = None
    passed = unimodular and not failures and sign_consistent
    if not conjugate:
        passed = passed and report["rows_multi_support"] \
            and bool(report["inverse_rows_multi_support"])
    report["passed"] = passed
    return report


def _rows_multi_support(a: IntMat) -> bool:
    return all(sum(1 for x in row if x) >= 2 for row in a.rows)


def sign_normalize(
        a: Union[IntMat, CorrespondenceMatrix]) -> CorrespondenceMatrix:
    """Flip the overall sign so row sums are +1; idempotent.

    MixedSigns when the sums are inconsistent (non-constant, non-unit,
    or row/column eigenvalues disagree), the mark of a non-equivariant
    input.
    """
    triple = None
    if isinstance(a, CorrespondenceMatrix):
        triple = a.triple
        a = a.A
    eps = _ones_eigenvalue(a)
    if eps == -1:
        a = -a
    return CorrespondenceMatrix(a, triple)
