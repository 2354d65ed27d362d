"""Finitely generated closed algebras of step functions.

The closed unital algebra generated by finitely many step functions is
finite dimensional; it consists of all step functions that are constant
on each class of the equivalence "every generator takes the same value
on both partition pieces".  An optional ``domain`` restricts everything
to a closed subset of the double arrow (needed to talk about restrictions
``A|P`` and about kernels of sets with isolated points).
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import DomainError
from .exact import ONE, ZERO, GaussianRational, as_fraction
from .orderspace import (
    DOUBLE_ARROW,
    ClosedInterval,
    ClosedSet,
    Point,
    intersection,
    is_subset,
    kernel,
    left_end,
    right_end,
    union,
)
from .stepcalc import Measure, StepFunction, common_refinement, on_partition


def _piece(partition: Sequence[Fraction], i: int) -> ClosedSet:
    lo = partition[i - 1] if i > 0 else Fraction(0)
    hi = partition[i] if i < len(partition) else Fraction(1)
    return ClosedSet([ClosedInterval(left_end(lo), right_end(hi))])


@dataclass(frozen=True)
class FinStepAlgebra:
    """Class partition of the pieces of ``partition``.

    ``classes`` lists blocks of piece indices; pieces that miss ``domain``
    belong to no class.
    """

    partition: tuple[Fraction, ...]
    classes: tuple[tuple[int, ...], ...]
    domain: ClosedSet | None = None

    def __post_init__(self):
        part = tuple(as_fraction(x) for x in self.partition)
        if any(not a < b for a, b in zip(part, part[1:])):
            raise ValueError("partition must be strictly increasing")
        classes = tuple(sorted((tuple(sorted(c)) for c in self.classes if c), key=lambda c: c[0]))
        seen = [i for c in classes for i in c]
        if len(seen) != len(set(seen)):
            raise ValueError("classes overlap")
        m = len(part) + 1
        if any(not 0 <= i < m for i in seen):
            raise ValueError("class index out of range")
        live = set(self.live_pieces_of(part, self.domain))
        if set(seen) != live:
            raise ValueError("classes must cover exactly the pieces meeting the domain")
        object.__setattr__(self, "partition", part)
        object.__setattr__(self, "classes", classes)

    @staticmethod
    def live_pieces_of(partition, domain) -> list[int]:
        m = len(partition) + 1
        if domain is None:
            return list(range(m))
        return [i for i in range(m) if intersection(_piece(partition, i), domain)]

    @property
    def piece_count(self) -> int:
        return len(self.partition) + 1

    @property
    def dimension(self) -> int:
        return len(self.classes)

    @property
    def space(self) -> ClosedSet:
        return self.domain if self.domain is not None else DOUBLE_ARROW.whole()

    def piece_set(self, i: int) -> ClosedSet:
        """Piece ``i`` intersected with the domain."""
        s = _piece(self.partition, i)
        return s if self.domain is None else intersection(s, self.domain)

    def class_of(self) -> dict[int, int]:
        return {i: k for k, c in enumerate(self.classes) for i in c}

    def basis(self) -> list[StepFunction]:
        """Indicators of the classes (on the full double arrow)."""
        out = []
        for c in self.classes:
            vals = [ONE if i in c else ZERO for i in range(self.piece_count)]
            out.append(StepFunction(self.partition, vals))
        return out

    def element(self, coeffs: Sequence) -> StepFunction:
        """``sum coeffs[k] * indicator(class k)``."""
        if len(coeffs) != len(self.classes):
            raise ValueError("one coefficient per class")
        vals = [ZERO] * self.piece_count
        for k, c in enumerate(self.classes):
            for i in c:
                vals[i] = GaussianRational.coerce(coeffs[k])
        return StepFunction(self.partition, vals)


def saturate(gens: Iterable[StepFunction], domain: ClosedSet | None = None) -> FinStepAlgebra:
    """Closed unital algebra generated by ``gens`` (restricted to ``domain``)."""
    gens = list(gens)
    part = common_refinement(*gens) if gens else ()
    columns = [on_partition(g, part) for g in gens]
    live = FinStepAlgebra.live_pieces_of(part, domain)
    groups: dict[tuple, list[int]] = {}
    for i in live:
        groups.setdefault(tuple(col[i] for col in columns), []).append(i)
    return FinStepAlgebra(part, tuple(tuple(v) for v in groups.values()), domain)


def _refined_values(A: FinStepAlgebra, f: StepFunction):
    """Yield ``(class index, value)`` for every piece of the common refinement
    of A's partition and f's breaks that meets the domain."""
    part = tuple(sorted(set(A.partition) | set(f.breaks)))
    owner = A.class_of()
    bounds = [Fraction(0), *part, Fraction(1)]
    for j, (lo, hi) in enumerate(zip(bounds, bounds[1:])):
        mid = (lo + hi) / 2
        k = owner.get(_index_of(A.partition, mid))
        if k is None:
            continue
        if A.domain is not None:
            cell = ClosedSet([ClosedInterval(left_end(lo), right_end(hi))])
            if not intersection(cell, A.domain):
                continue
        yield k, j, lo, hi, f.value_at_coordinate(mid)


def _index_of(partition: Sequence[Fraction], x: Fraction) -> int:
    return bisect_left(partition, x)


def contains(A: FinStepAlgebra, f: StepFunction) -> bool:
    """Whether ``f`` (restricted to A's domain) is constant on every class."""
    seen: dict[int, GaussianRational] = {}
    for k, _, _, _, v in _refined_values(A, f):
        if seen.setdefault(k, v) != v:
            return False
    return True


def classes(A: FinStepAlgebra) -> list[ClosedSet]:
    """The equivalence classes as closed sets (atoms of the boolean algebra B_A)."""
    out = []
    for c in A.classes:
        s = ClosedSet()
        for i in c:
            s = union(s, A.piece_set(i))
        out.append(s)
    return out


def boolean_algebra(A: FinStepAlgebra) -> set[ClosedSet]:
    """All members of B_A: every union of classes, including the empty set."""
    atoms = classes(A)
    out = set()
    for mask in range(1 << len(atoms)):
        s = ClosedSet()
        for k, atom in enumerate(atoms):
            if mask >> k & 1:
                s = union(s, atom)
        out.add(s)
    return out


def tilde(A: FinStepAlgebra, P: ClosedSet) -> ClosedSet:
    """Smallest member of B_A containing ``P``: the union of the classes meeting P."""
    out = ClosedSet()
    for c in classes(A):
        if intersection(c, P):
            out = union(out, c)
    return out


def factors_through(A: FinStepAlgebra, P: ClosedSet) -> bool:
    return is_subset(P, A.space) and tilde(A, P) == P


def restrict_algebra(A: FinStepAlgebra, P: ClosedSet) -> FinStepAlgebra:
    """The algebra ``A|P`` on the domain ``P``.

    ``P`` must be a union of classes, or the kernel of A's domain.
    """
    if not (factors_through(A, P) or (P == kernel(A.space) and is_subset(P, A.space))):
        raise DomainError("does not factor through ~",
                          "P is neither a union of classes nor the kernel of the domain")
    sub = FinStepAlgebra.live_pieces_of(A.partition, P)
    owner = A.class_of()
    groups: dict[int, list[int]] = {}
    for i in sub:
        groups.setdefault(owner[i], []).append(i)
    return FinStepAlgebra(A.partition, tuple(tuple(g) for g in groups.values()), P)


def extension_witness(A: FinStepAlgebra, f: StepFunction, P: ClosedSet) -> StepFunction:
    """``f * chi_K`` with ``K`` the smallest member of B_A containing P.

    It agrees with ``f`` on ``P``; when P factors through the classes,
    ``K = P`` and its norm equals ``||f||_P``.
    """
    if not contains(A, f):
        raise DomainError("not in algebra", "f must belong to A")
    hit = {i for c, s in zip(A.classes, classes(A)) if intersection(s, P) for i in c}
    chi = StepFunction(A.partition, [ONE if i in hit else ZERO for i in range(A.piece_count)])
    return f * chi


def representative(A: FinStepAlgebra, i: int) -> Point:
    """First point of piece ``i`` inside the domain."""
    return A.piece_set(i).first_point()


def annihilator_measure(A: FinStepAlgebra, g: StepFunction) -> Measure | None:
    """An atomic measure killing A but not ``g``; ``None`` when ``g`` lies in A.

    The linear system "sum of weights over each class is 0" has, whenever
    g takes two different values u != v on one class, the solution
    ``delta(u-piece) - delta(v-piece)``; its integral against g is
    ``u - v != 0``.
    """
    first: dict[int, tuple] = {}
    for k, j, lo, hi, v in _refined_values(A, g):
        if k not in first:
            first[k] = (lo, hi, v)
            continue
        lo0, hi0, v0 = first[k]
        if v != v0:
            p = _first_point_in(A, lo0, hi0)
            q = _first_point_in(A, lo, hi)
            return Measure(((p, ONE), (q, -ONE)))
    return None


def _first_point_in(A: FinStepAlgebra, lo: Fraction, hi: Fraction) -> Point:
    cell = ClosedSet([ClosedInterval(left_end(lo), right_end(hi))])
    if A.domain is not None:
        cell = intersection(cell, A.domain)
    return cell.first_point()


# --------------------------------------------------------------------------
# brute-force closure, used as an independent check of ``saturate``


def _rank_basis(vectors: list[list[GaussianRational]]) -> list[list[GaussianRational]]:
    """Row-reduce and return a basis of the span (exact Gaussian elimination)."""
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[GaussianRational]] = []
    pivots: list[int] = []
    for row in rows:
        r = list(row)
        for b, p in zip(basis, pivots):
            if r[p]:
                factor = r[p]
                r = [x - factor * y for x, y in zip(r, b)]
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is None:
            continue
        inv = ONE / r[piv]
        r = [x * inv for x in r]
        for idx, b in enumerate(basis):
            if b[piv]:
                factor = b[piv]
                basis[idx] = [x - factor * y for x, y in zip(b, r)]
        basis.append(r)
        pivots.append(piv)
    return basis


def in_span(basis: list[list[GaussianRational]], v: list[GaussianRational]) -> bool:
    return len(_rank_basis(basis + [v])) == len(_rank_basis(basis))


def product_closure(gens: Sequence[StepFunction], partition: Sequence[Fraction]) -> list[list[GaussianRational]]:
    """Span of all finite products of ``{1} + gens`` as vectors over ``partition``'s pieces."""
    m = len(partition) + 1
    vecs = [[ONE] * m] + [on_partition(g, partition) for g in gens]
    basis = _rank_basis(vecs)
    while True:
        prods = [[x * y for x, y in zip(a, b)] for a, b in combinations_with_replacement(basis, 2)]
        nxt = _rank_basis(basis + prods)
        if len(nxt) == len(basis):
            return basis
        basis = nxt
