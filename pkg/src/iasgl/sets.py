"""Exact arithmetic over finite sets of non-negative integers.

Sumsets A + B = {a + b : a in A, b in B}, power-set enumeration over a
ground set, and the classification of the ground set's non-empty subsets
into non-trivial sumsets and non-trivial summands. The classification
drives every structural bound downstream: sets that cannot be written as
a non-trivial sumset force edges at the zero-labeled vertex, and sets
that cannot act as a non-trivial summand force pendant vertices.

Sumsets are always computed in the full non-negative integers and never
truncated to the ground set: a sum escaping the ground set is precisely
what makes a candidate edge infeasible, and truncation would hide that.

Subsets of a ground set are mirrored as bitmasks in two ways:

* subset mask: bit i set means the i-th smallest element is present
  (the enumeration order of ``enumerate_nonempty_subsets``);
* value mask: bit v set means the integer v is present, so a sumset is
  an OR of shifted value masks and containment is a bit test.

Both mappings are part of this module's contract; ``subset_to_mask`` /
``mask_to_subset`` expose the subset-mask side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

#: Soft ceiling on |X| for power-set enumeration (2^20 subsets).
SUBSET_ENUMERATION_CAP = 20


class SummandMode(Enum):
    """Whether a decomposition C = A + B may use equal operands.

    DISTINCT_LABELS requires A != B, matching what an edge can realize:
    vertex labels are injective, so the endpoint labels of an edge are
    always different sets. ALLOW_EQUAL keeps the permissive reading of
    "sum of two subsets" available for study.
    """

    DISTINCT_LABELS = "distinct-labels"
    ALLOW_EQUAL = "allow-equal"


@dataclass(frozen=True, order=True)
class IntegerSet:
    """A finite set of non-negative integers, stored strictly ascending.

    Ordering is lexicographic on the element tuple, which gives every
    family of sets a deterministic sort.
    """

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(self.elements)))
        if any(e < 0 for e in elems):
            raise ValueError(f"negative element in set-label: {self.elements}")
        if elems != self.elements:
            object.__setattr__(self, "elements", elems)

    @classmethod
    def of(cls, *elements: int) -> "IntegerSet":
        return cls(tuple(elements))

    @classmethod
    def from_iterable(cls, elements: Iterable[int]) -> "IntegerSet":
        return cls(tuple(elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, value: int) -> bool:
        return value in self.elements

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"

    def is_empty(self) -> bool:
        return not self.elements

    def is_subset_of(self, other: "IntegerSet") -> bool:
        return set(self.elements) <= set(other.elements)

    def value_mask(self) -> int:
        """Bitmask with bit v set for every element v."""
        mask = 0
        for e in self.elements:
            mask |= 1 << e
        return mask


#: The set {0}, the additive identity of the sumset operation.
ZERO_SET = IntegerSet.of(0)


@dataclass(frozen=True, order=True)
class GroundSet:
    """The finite set X of non-negative integers supplying all labels."""

    base: IntegerSet

    def __post_init__(self) -> None:
        if self.base.is_empty():
            raise ValueError("ground set must be non-empty")

    @classmethod
    def of(cls, *elements: int) -> "GroundSet":
        return cls(IntegerSet.of(*elements))

    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def max_element(self) -> int:
        return self.base.elements[-1]

    def contains_zero(self) -> bool:
        return 0 in self.base

    def __str__(self) -> str:
        return str(self.base)


@dataclass(frozen=True)
class Classification:
    """Partition of the non-empty subsets of X other than {0}.

    non_sumsets: subsets that are not a non-trivial sumset of any two
    subsets of X; these can only appear as the edge label of an edge at
    the {0}-vertex. non_summands: subsets A with no B != {0} keeping
    A + B inside X; vertices carrying them must be pendant. neither is
    the intersection and lower-bounds the pendant count. Families are
    sorted by (cardinality, elements) for determinism.
    """

    ground: GroundSet
    mode: SummandMode
    non_sumsets: tuple[IntegerSet, ...]
    non_summands: tuple[IntegerSet, ...]
    neither: tuple[IntegerSet, ...]


def sumset(a: IntegerSet, b: IntegerSet) -> IntegerSet:
    """Return {x + y : x in a, y in b}, never truncated to a ground set."""
    if a.is_empty() or b.is_empty():
        raise ValueError("empty set-label")
    return IntegerSet.from_iterable(x + y for x in a for y in b)


def _family_sorted(sets: Iterable[IntegerSet]) -> tuple[IntegerSet, ...]:
    # Cardinality first, then element order: {0,3} before {0,1,3}.
    return tuple(sorted(sets, key=lambda s: (len(s), s.elements)))


def subset_to_mask(x: GroundSet, s: IntegerSet) -> int:
    """Subset mask of s relative to X (bit i = i-th smallest element)."""
    index = {e: i for i, e in enumerate(x.base.elements)}
    mask = 0
    for e in s.elements:
        if e not in index:
            raise ValueError("not a subset of ground set")
        mask |= 1 << index[e]
    return mask


def mask_to_subset(x: GroundSet, mask: int) -> IntegerSet:
    """Inverse of subset_to_mask."""
    if mask < 0 or mask >= 1 << x.n:
        raise ValueError(f"subset mask out of range: {mask}")
    elems = x.base.elements
    return IntegerSet.from_iterable(elems[i] for i in range(x.n) if mask >> i & 1)


def enumerate_nonempty_subsets(x: GroundSet, cap: int = SUBSET_ENUMERATION_CAP) -> list[IntegerSet]:
    """All 2^n - 1 non-empty subsets of X, ascending by subset mask."""
    if x.n > cap:
        raise ValueError("ground set too large")
    elems = x.base.elements
    out = []
    for mask in range(1, 1 << x.n):
        out.append(IntegerSet.from_iterable(elems[i] for i in range(x.n) if mask >> i & 1))
    return out


def _require_subset(c: IntegerSet, x: GroundSet) -> None:
    if c.is_empty():
        raise ValueError("empty set-label")
    if not c.is_subset_of(x.base):
        raise ValueError("not a subset of ground set")


def _subset_value_masks(x: GroundSet) -> list[int]:
    """Value mask of every subset of X, indexed by subset mask."""
    elems = x.base.elements
    masks = [0] * (1 << x.n)
    for m in range(1, 1 << x.n):
        low = m & -m
        masks[m] = masks[m ^ low] | (1 << elems[low.bit_length() - 1])
    return masks


def _sum_value_mask(a_elements: tuple[int, ...], b_value_mask: int) -> int:
    vm = 0
    for e in a_elements:
        vm |= b_value_mask << e
    return vm


def nontrivial_sumset_decompositions(
    c: IntegerSet, x: GroundSet, mode: SummandMode = SummandMode.DISTINCT_LABELS
) -> list[tuple[IntegerSet, IntegerSet]]:
    """Every unordered pair {A, B} of non-empty subsets of X with A + B = c.

    A and B must both differ from {0}; under DISTINCT_LABELS they must
    also differ from each other. Each pair is reported once, ordered
    (A, B) with A <= B, pairs sorted.
    """
    _require_subset(c, x)
    subsets = enumerate_nonempty_subsets(x)
    target = c.value_mask()
    pairs = []
    for i, a in enumerate(subsets):
        if a == ZERO_SET:
            continue
        start = i if mode is SummandMode.ALLOW_EQUAL else i + 1
        for b in subsets[start:]:
            if b == ZERO_SET:
                continue
            if _sum_value_mask(a.elements, b.value_mask()) == target:
                pairs.append((a, b))
    pairs.sort()
    return pairs


def is_nontrivial_sumset(
    c: IntegerSet, x: GroundSet, mode: SummandMode = SummandMode.DISTINCT_LABELS
) -> bool:
    """True iff c = A + B for some subsets A, B of X with A, B != {0}."""
    _require_subset(c, x)
    subsets = enumerate_nonempty_subsets(x)
    target = c.value_mask()
    for i, a in enumerate(subsets):
        if a == ZERO_SET:
            continue
        # min(A)+min(B) and max(A)+max(B) bound the sum; cheap reject.
        if a.elements[0] > c.elements[0] or a.elements[-1] > c.elements[-1]:
            continue
        start = i if mode is SummandMode.ALLOW_EQUAL else i + 1
        for b in subsets[start:]:
            if b == ZERO_SET:
                continue
            if _sum_value_mask(a.elements, b.value_mask()) == target:
                return True
    return False


def is_nontrivial_summand(
    a: IntegerSet, x: GroundSet, mode: SummandMode = SummandMode.DISTINCT_LABELS
) -> bool:
    """True iff some non-empty B != {0} (B != a when labels must be
    distinct) keeps a + B inside X."""
    _require_subset(a, x)
    x_vm = x.base.value_mask()
    for b in enumerate_nonempty_subsets(x):
        if b == ZERO_SET:
            continue
        if mode is SummandMode.DISTINCT_LABELS and b == a:
            continue
        if _sum_value_mask(a.elements, b.value_mask()) & ~x_vm == 0:
            return True
    return False


_CLASSIFY_CACHE: dict[tuple[tuple[int, ...], SummandMode], Classification] = {}


def classify_ground_set(
    x: GroundSet, mode: SummandMode = SummandMode.DISTINCT_LABELS
) -> Classification:
    """Classify every non-empty subset of X except {0}.

    Single batch pass: one loop over subset pairs marks every value
    realizable as a non-trivial sumset, one loop per subset decides
    summand-hood. Results are cached per (X, mode); racing writers
    compute identical values, so the cache is idempotent.
    """
    if not x.contains_zero():
        raise ValueError("graceful ground set must contain 0")
    if x.n < 2:
        raise ValueError("classification needs a ground set with at least 2 elements")
    key = (x.base.elements, mode)
    cached = _CLASSIFY_CACHE.get(key)
    if cached is not None:
        return cached

    subsets = enumerate_nonempty_subsets(x)
    value = _subset_value_masks(x)
    x_vm = value[(1 << x.n) - 1]
    zero_mask = 1  # 0 is the smallest element, so {0} is subset mask 1

    sum_values: set[int] = set()
    n_subs = len(subsets)
    for i in range(n_subs):
        mi = i + 1
        if mi == zero_mask:
            continue
        elems_i = subsets[i].elements
        j_from = i if mode is SummandMode.ALLOW_EQUAL else i + 1
        for j in range(j_from, n_subs):
            mj = j + 1
            if mj == zero_mask:
                continue
            sum_values.add(_sum_value_mask(elems_i, value[mj]))

    non_sumsets = []
    non_summands = []
    for m in range(1, 1 << x.n):
        if m == zero_mask:
            continue
        s = subsets[m - 1]
        if value[m] not in sum_values:
            non_sumsets.append(s)
        summand = False
        for mb in range(1, 1 << x.n):
            if mb == zero_mask or (mode is SummandMode.DISTINCT_LABELS and mb == m):
                continue
            if _sum_value_mask(s.elements, value[mb]) & ~x_vm == 0:
                summand = True
                break
        if not summand:
            non_summands.append(s)

    neither = [s for s in non_sumsets if s in set(non_summands)]
    result = Classification(
        ground=x,
        mode=mode,
        non_sumsets=_family_sorted(non_sumsets),
        non_summands=_family_sorted(non_summands),
        neither=_family_sorted(neither),
    )
    _CLASSIFY_CACHE[key] = result
    return result


def canonicalize_ground_set(x: GroundSet) -> GroundSet:
    """Scale X down by the gcd of its nonzero elements.

    Two ground sets that differ by an integer scale factor label exactly
    the same graphs, so enumeration only needs the canonical (gcd 1)
    representative.
    """
    if not x.contains_zero():
        raise ValueError("graceful ground set must contain 0")
    if x.n < 2:
        raise ValueError("canonical form needs a ground set with at least 2 elements")
    g = 0
    for e in x.base.elements:
        g = math.gcd(g, e)
    if g <= 1:
        return x
    return GroundSet(IntegerSet.from_iterable(e // g for e in x.base.elements))


def is_canonical_ground_set(x: GroundSet) -> bool:
    return canonicalize_ground_set(x) == x


def enumerate_canonical_ground_sets(n: int, max_element: int) -> list[GroundSet]:
    """All canonical ground sets with |X| = n, 0 in X, max element bounded."""
    if n < 2:
        raise ValueError("ground set cardinality must be at least 2")
    if max_element < n - 1:
        raise ValueError("empty ground-set family")
    from itertools import combinations

    out = []
    for rest in combinations(range(1, max_element + 1), n - 1):
        g = 0
        for e in rest:
            g = math.gcd(g, e)
        if g == 1:
            out.append(GroundSet(IntegerSet.from_iterable((0, *rest))))
    if not out:
        raise ValueError("empty ground-set family")
    out.sort()
    return out
