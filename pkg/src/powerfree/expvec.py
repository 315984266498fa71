"""Exponent vectors modulo d and zero-sum detection over Z_d^r.

An integer n = prod p_i^a_i maps to the sparse vector (a_i mod d). A product
of distinct integers is a perfect d-th power exactly when their vectors sum
to zero, so power-free sets correspond to zero-sum-free multisets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InvalidArgument, ResourceLimit
from .primes import PrimeTable, factorize

DEFAULT_CLOSURE_CAP = 10**7

Entries = tuple[tuple[int, int], ...]


@dataclass(frozen=True, order=True)
class ExponentVector:
    """Sparse element of Z_d^r keyed by 1-based prime index.

    Zero residues are never stored, so the zero vector has no entries.
    """

    modulus: int
    entries: Entries = ()

    def __post_init__(self):
        if self.modulus < 2:
            raise InvalidArgument(f"modulus must be >= 2, got {self.modulus}")
        last = 0
        for idx, res in self.entries:
            if idx <= last:
                raise InvalidArgument("prime indices must be positive and strictly ascending")
            if not 1 <= res < self.modulus:
                raise InvalidArgument(f"residue {res} outside 1..{self.modulus - 1}")
            last = idx

    @classmethod
    def from_dict(cls, modulus, coords):
        entries = tuple(sorted((i, r % modulus) for i, r in coords.items() if r % modulus))
        return cls(modulus, entries)

    def is_zero(self):
        return not self.entries

    def as_dict(self):
        return dict(self.entries)

    def support(self):
        return [i for i, _ in self.entries]

    def __getitem__(self, idx):
        for i, r in self.entries:
            if i == idx:
                return r
        return 0

    def __add__(self, other):
        return add(self, other)

    def __neg__(self):
        return ExponentVector(self.modulus, tuple((i, self.modulus - r) for i, r in self.entries))

    def dense(self, coords):
        return [self[i] for i in coords]


@dataclass(frozen=True)
class VectorMultiset:
    modulus: int
    items: tuple[tuple[int, ExponentVector], ...] = ()

    def __post_init__(self):
        labels = [label for label, _ in self.items]
        if len(set(labels)) != len(labels):
            raise InvalidArgument("multiset labels must be pairwise distinct")
        for _, vec in self.items:
            if vec.modulus != self.modulus:
                raise InvalidArgument(f"vector modulus {vec.modulus} != multiset modulus {self.modulus}")

    @classmethod
    def from_integers(cls, numbers: Iterable[int], d: int, table: PrimeTable):
        return cls(d, tuple((int(n), to_vector(n, d, table)) for n in numbers))

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def labels(self):
        return [label for label, _ in self.items]

    def vectors(self):
        return [vec for _, vec in self.items]

    def coordinates(self):
        """Sorted prime indices touched by at least one vector."""
        return sorted({i for _, vec in self.items for i, _ in vec.entries})

    def dense(self, coords=None):
        """Return ``(coords, matrix)`` with one row per item."""
        if coords is None:
            coords = self.coordinates()
        col = {c: j for j, c in enumerate(coords)}
        mat = np.zeros((len(self.items), len(coords)), dtype=np.int64)
        for row, (_, vec) in enumerate(self.items):
            for i, r in vec.entries:
                mat[row, col[i]] = r
        return coords, mat

    def subset(self, labels):
        keep = set(labels)
        return VectorMultiset(self.modulus, tuple(it for it in self.items if it[0] in keep))

    def without(self, labels):
        drop = set(labels)
        return VectorMultiset(self.modulus, tuple(it for it in self.items if it[0] not in drop))


@dataclass(frozen=True)
class ZeroSumReport:
    has_zero_sum: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.has_zero_sum


def to_vector(n: int, d: int, table: PrimeTable) -> ExponentVector:
    if d < 2:
        raise InvalidArgument(f"modulus must be >= 2, got {d}")
    fac = factorize(n, table)
    entries = tuple((int(table.pi_cache[p]), e % d) for p, e in fac.factors if e % d)
    return ExponentVector(d, entries)


def _add_entries(a: Entries, b: Entries, d: int) -> Entries:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        ka, ra = a[i]
        kb, rb = b[j]
        if ka == kb:
            r = (ra + rb) % d
            if r:
                out.append((ka, r))
            i += 1
            j += 1
        elif ka < kb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def add(u: ExponentVector, v: ExponentVector) -> ExponentVector:
    if u.modulus != v.modulus:
        raise InvalidArgument(f"cannot add vectors mod {u.modulus} and mod {v.modulus}")
    return ExponentVector(u.modulus, _add_entries(u.entries, v.entries, u.modulus))


def _neg_entries(a: Entries, d: int) -> Entries:
    return tuple((i, d - r) for i, r in a)


def _check_cap(size, cap):
    if size > cap:
        raise ResourceLimit(f"subset-sum closure exceeded the cap of {cap} distinct sums", limit=cap)


def subset_sum_closure(ms: VectorMultiset, cap: int = DEFAULT_CLOSURE_CAP) -> set[ExponentVector]:
    """All sums of non-empty sub-multisets of ``ms``."""
    d = ms.modulus
    sums: set[Entries] = set()
    for _, vec in ms.items:
        v = vec.entries
        fresh = {_add_entries(s, v, d) for s in sums}
        fresh.add(v)
        sums |= fresh
        _check_cap(len(sums), cap)
    return {ExponentVector(d, s) for s in sums}


def find_zero_sum(ms: VectorMultiset, cap: int = DEFAULT_CLOSURE_CAP) -> ZeroSumReport:
    """Decide whether some non-empty sub-multiset sums to zero.

    Items are absorbed in ascending label order. Each reachable sum remembers
    the item that first produced it and the sum it extended, so a witness is
    read off by walking predecessors back to a single-item sum.
    """
    d = ms.modulus
    # sum -> (label, predecessor sum or None)
    reach: dict[Entries, tuple[int, Entries | None]] = {}

    def trace(s):
        out = []
        while s is not None:
            label, s = reach[s]
            out.append(label)
        return out

    for label, vec in sorted(ms.items, key=lambda it: it[0]):
        v = vec.entries
        if not v:
            return ZeroSumReport(True, (label,))
        need = _neg_entries(v, d)
        if need in reach:
            return ZeroSumReport(True, tuple(sorted(trace(need) + [label])))
        fresh = {}
        for s in reach:
            t = _add_entries(s, v, d)
            if t not in reach and t not in fresh:
                fresh[t] = (label, s)
        if v not in reach:
            fresh.setdefault(v, (label, None))
        reach.update(fresh)
        _check_cap(len(reach), cap)
    return ZeroSumReport(False, None)


def residues_admit_zero_sum(residues: Iterable[int], d: int) -> bool:
    """d-state reachability: can a non-empty sub-multiset of residues sum to 0 mod d?"""
    full = (1 << d) - 1
    reach = 0
    for r in residues:
        r %= d
        if r == 0:
            return True
        rotated = ((reach << r) | (reach >> (d - r))) & full
        reach |= rotated | (1 << r)
        if reach & 1:
            return True
    return False


def eliminate(ms: VectorMultiset, passes: int | None = None) -> tuple[VectorMultiset, list[int]]:
    """Drop items that provably cannot take part in any zero sum.

    For a coordinate whose non-zero residues admit no zero-sum sub-multiset,
    every item touching that coordinate is excluded from all zero sums.
    Removing such items can free further coordinates, so by default this
    runs to a fixpoint; ``passes`` caps the number of sweeps. Either way
    ``ms`` has a zero sum iff the residual does.
    """
    d = ms.modulus
    items = list(ms.items)
    removed: list[int] = []
    changed = True
    sweeps = 0
    while changed and (passes is None or sweeps < passes):
        changed = False
        sweeps += 1
        by_coord: dict[int, list[int]] = {}
        for _, vec in items:
            for i, r in vec.entries:
                by_coord.setdefault(i, []).append(r)
        dead = {i for i, res in by_coord.items() if not residues_admit_zero_sum(res, d)}
        if dead:
            keep = []
            for label, vec in items:
                if any(i in dead for i, _ in vec.entries):
                    removed.append(label)
                else:
                    keep.append((label, vec))
            items = keep
            changed = True
    return VectorMultiset(d, tuple(items)), sorted(removed)
