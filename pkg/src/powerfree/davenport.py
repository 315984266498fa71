"""Davenport constants of finite abelian groups."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

from ._kernels import GroupIndexer, max_zero_sum_free
from .errors import CapacityError, InvalidArgument, NotApplicable, ResourceLimit
from .primes import prime_power

EXACT_MAX_ORDER = 4096
EXACT_MAX_DEPTH = 32
DEFAULT_BUDGET = 50_000_000


@dataclass(frozen=True)
class GroupSpec:
    """The group Z_{n_1} + ... + Z_{n_r}."""

    components: tuple[int, ...]

    def __post_init__(self):
        if not self.components:
            raise InvalidArgument("a group needs at least one cyclic component")
        if any(int(n) < 2 for n in self.components):
            raise InvalidArgument(f"cyclic orders must be >= 2, got {list(self.components)}")
        object.__setattr__(self, "components", tuple(int(n) for n in self.components))

    @classmethod
    def power(cls, n, r):
        return cls((n,) * r)

    @property
    def order(self):
        return math.prod(self.components)

    @property
    def exponent(self):
        return reduce(math.lcm, self.components, 1)

    @property
    def rank(self):
        return len(self.components)

    def p_group_prime(self):
        """The prime p if every component is a power of p, else None."""
        primes = set()
        for n in self.components:
            pp = prime_power(n)
            if pp is None:
                return None
            primes.add(pp[0])
        return primes.pop() if len(primes) == 1 else None

    def __str__(self):
        parts = []
        for n in sorted(set(self.components)):
            k = self.components.count(n)
            parts.append(f"{n}^{k}" if k > 1 else str(n))
        return ",".join(parts)


_TERM = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_group_spec(text: str) -> GroupSpec:
    """Parse ``"3^2"``, ``"2,4"`` or mixtures such as ``"2^2,4"``."""
    comps = []
    for term in text.split(","):
        m = _TERM.match(term)
        if not m:
            raise InvalidArgument(f"cannot parse group component {term!r} in {text!r}")
        n = int(m.group(1))
        r = int(m.group(2)) if m.group(2) is not None else 1
        if r < 1:
            raise InvalidArgument(f"repetition count must be >= 1 in {term!r}")
        comps.extend([n] * r)
    return GroupSpec(tuple(comps))


def olson_davenport(spec: GroupSpec) -> int:
    if spec.p_group_prime() is None:
        raise NotApplicable(f"Olson's formula needs a p-group; {spec} is not one")
    return 1 + sum(n - 1 for n in spec.components)


def davenport_upper_bound_real(spec: GroupSpec) -> float:
    e = spec.exponent
    return e * (1.0 + math.log(spec.order / e))


def davenport_upper_bound(spec: GroupSpec) -> int:
    """Floor of exp(G) * (1 + ln(|G| / exp(G))); D(G) is an integer."""
    return math.floor(davenport_upper_bound_real(spec))


def davenport_value(spec: GroupSpec | None) -> tuple[int, bool]:
    """Olson's value for p-groups, otherwise the logarithmic bound.

    The flag is True when the number is only an upper bound. ``None`` stands
    for the trivial group, whose Davenport constant is 1.
    """
    if spec is None:
        return 1, False
    if spec.p_group_prime() is not None:
        return olson_davenport(spec), False
    return davenport_upper_bound(spec), True


@dataclass(frozen=True)
class DavenportSearch:
    value: int
    witness: tuple[tuple[int, ...], ...]  # a longest zero-sum-free sequence
    nodes: int


def _candidates(spec: GroupSpec):
    grp = GroupIndexer(spec.components)
    mods = grp.mods
    elems = np.arange(1, grp.order, dtype=np.int64)
    digits = grp.digits[elems]
    orders = np.ones(len(elems), dtype=np.int64)
    for i, n in enumerate(mods):
        orders = np.lcm(orders, n // np.gcd(digits[:, i], n))
    copies = orders - 1
    cand_elem = np.repeat(np.arange(len(elems)), copies)
    starts = np.concatenate(([0], np.cumsum(copies)[:-1]))
    same_prev = np.arange(len(cand_elem), dtype=np.int64) - 1
    same_prev[starts[copies > 0]] = -1
    return grp, elems, cand_elem, same_prev


def davenport_search(spec: GroupSpec, budget: int = DEFAULT_BUDGET, jit=None) -> DavenportSearch:
    """Exhaustive search for the longest zero-sum-free sequence over ``spec``.

    Sequences are enumerated as non-decreasing runs in lexicographic element
    order; an element of order m may occur at most m - 1 times. Pruning uses
    only the fact that each new element grows the subset-sum set, so the
    result is independent of any closed formula.
    """
    depth_guess = davenport_upper_bound(spec) - 1
    if spec.order > EXACT_MAX_ORDER or depth_guess > EXACT_MAX_DEPTH:
        raise CapacityError(
            f"exhaustive D({spec}) is limited to |G| <= {EXACT_MAX_ORDER} and depth <= {EXACT_MAX_DEPTH} "
            f"(|G| = {spec.order}, depth bound {depth_guess})"
        )
    grp, elems, cand_elem, same_prev = _candidates(spec)
    out = max_zero_sum_free(
        grp.minus_tables(elems),
        cand_elem,
        elems,
        grp.negate(elems),
        same_prev,
        cap=grp.order - 1,
        best_init=0,
        budget=budget,
        jit=jit,
    )
    if out.exhausted:
        raise ResourceLimit(
            f"node budget {budget} exhausted while computing D({spec}); D >= {out.best + 1}",
            limit=budget,
            lower=out.best + 1,
        )
    witness = tuple(tuple(int(x) for x in grp.digits[elems[cand_elem[j]]]) for j in out.selection)
    return DavenportSearch(out.best + 1, witness, out.nodes)


def davenport_exact(spec: GroupSpec, budget: int = DEFAULT_BUDGET) -> int:
    return davenport_search(spec, budget).value
