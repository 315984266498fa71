"""Exact rho_d(N) by branch and bound over exponent vectors.

The candidates are 2..N minus the d-th powers (their vectors are zero).
Elimination splits them into *free* elements, which can never take part in a
zero sum and so belong to every optimum, and a *core*. The core is searched
exhaustively in the dense group Z_d^r spanned by its coordinates, pruned by
the remaining-candidate count, by the growth of the subset-sum set, and by
D(Z_d^r) - 1. When N reaches the construction threshold the explicit set
seeds the incumbent, and for prime-power d the search then closes at once.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._config import env_int
from ._kernels import GroupIndexer, max_zero_sum_free
from .bounds import thm4_upper, threshold
from .construction import build, verify_certificate
from .davenport import GroupSpec, davenport_value
from .errors import CapacityError, InvalidArgument, PowerFreeError, ResourceLimit
from .expvec import VectorMultiset, eliminate
from .primes import PrimeTable, build_table

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000_000
MAX_DENSE_ORDER = 1 << 22
# desk-scale guard: largest N per d (d not listed uses the d >= 4 entry)
DEFAULT_GUARD = {2: 60, 3: 60, 4: 40}


def desk_limit(d, guard=None):
    """Largest N allowed for ``d``: the entry of the largest key <= d."""
    guard = DEFAULT_GUARD if guard is None else guard
    keys = [k for k in guard if k <= d]
    return guard[max(keys)] if keys else 0


@dataclass
class SolveResult:
    d: int
    N: int
    value: int
    witness: list[int]
    nodes_explored: int
    upper_bound_used: int
    elapsed: float
    free_count: int = 0
    core_size: int = 0
    core_rank: int = 0
    seeded: bool = False
    stats: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "d": self.d,
            "N": self.N,
            "value": self.value,
            "witness": list(self.witness),
            "nodes_explored": self.nodes_explored,
            "upper_bound_used": self.upper_bound_used,
            "elapsed": self.elapsed,
            "free_count": self.free_count,
            "core_size": self.core_size,
            "core_rank": self.core_rank,
            "seeded": self.seeded,
        }


@dataclass
class SolveFailure:
    """A sweep entry whose solve raised; keeps the bracket when one exists."""

    d: int
    N: int
    error: PowerFreeError

    @property
    def bracket(self):
        err = self.error
        return (getattr(err, "lower", None), getattr(err, "upper", None))

    def as_dict(self):
        lo, hi = self.bracket
        return {"d": self.d, "N": self.N, "error": str(self.error), "lower": lo, "upper": hi}


@dataclass
class CoreProblem:
    """Dense search input derived from the eliminated candidate set."""

    labels: np.ndarray  # candidate labels in branch order
    shift: np.ndarray
    cand_elem: np.ndarray
    elem_index: np.ndarray
    neg_index: np.ndarray
    same_prev: np.ndarray
    order: int
    rank: int


def _branch_order(core: VectorMultiset, table: PrimeTable):
    """Descending largest prime of the vector support; copies of a vector adjacent."""
    first_label = {}
    for label, vec in sorted(core.items, key=lambda it: it[0]):
        first_label.setdefault(vec.entries, label)

    def key(item):
        label, vec = item
        top = int(table.primes[vec.entries[-1][0] - 1])
        return (-top, first_label[vec.entries], label)

    return sorted(core.items, key=key)


def prepare_core(core: VectorMultiset, table: PrimeTable) -> CoreProblem:
    d = core.modulus
    items = _branch_order(core, table)
    coords = core.coordinates()
    grp = GroupIndexer([d] * len(coords))
    if grp.order > MAX_DENSE_ORDER:
        raise CapacityError(f"core group Z_{d}^{len(coords)} has {grp.order} elements, above {MAX_DENSE_ORDER}")
    ordered = VectorMultiset(d, tuple(items))
    _, mat = ordered.dense(coords)
    idx = grp.encode(mat)
    elems, cand_elem = np.unique(idx, return_inverse=True)
    same_prev = np.full(len(items), -1, dtype=np.int64)
    last_seen = {}
    for j, e in enumerate(cand_elem):
        same_prev[j] = last_seen.get(int(e), -1)
        last_seen[int(e)] = j
    return CoreProblem(
        labels=np.array([label for label, _ in items], dtype=np.int64),
        shift=grp.minus_tables(elems),
        cand_elem=cand_elem.astype(np.int64),
        elem_index=elems,
        neg_index=grp.negate(elems),
        same_prev=same_prev,
        order=grp.order,
        rank=len(coords),
    )


def candidates(d: int, N: int, table: PrimeTable) -> VectorMultiset:
    """Integers 2..N whose exponent vector mod d is non-zero."""
    ms = VectorMultiset.from_integers(range(2, N + 1), d, table)
    return VectorMultiset(d, tuple(it for it in ms.items if not it[1].is_zero()))


def solve(
    d: int,
    N: int,
    table: PrimeTable | None = None,
    budget: int | None = None,
    *,
    guard: dict | None = None,
    force: bool = False,
    seed: bool = True,
    jit=None,
) -> SolveResult:
    """Exact rho_d(N) with a witness set."""
    if d < 2:
        raise InvalidArgument(f"d must be >= 2, got {d}")
    if N < 1:
        raise InvalidArgument(f"N must be >= 1, got {N}")
    limit = desk_limit(d, guard)
    if N > limit and not force:
        raise CapacityError(f"N = {N} exceeds the desk-scale limit {limit} for d = {d}; pass force to override")
    if budget is None:
        budget = env_int("POWERFREE_BUDGET", DEFAULT_BUDGET)
    if table is None:
        table = build_table(max(N, 2))
    if table.limit < N:
        raise CapacityError(f"sieve limit {table.limit} is below N = {N}")
    start = time.perf_counter()

    cands = candidates(d, N, table)
    core, free = eliminate(cands)
    prob = prepare_core(core, table)
    dav, _ = davenport_value(GroupSpec.power(d, prob.rank) if prob.rank else None)
    core_cap = min(dav - 1, len(core))
    upper = min(thm4_upper(d, N, table), len(free) + core_cap)

    seed_set = None
    if seed and N >= threshold(d):
        cert = build(d, N, table)
        if verify_certificate(cert, table) and len(cert.full_set) > len(free):
            seed_set = sorted(cert.full_set)
    best_init = len(seed_set) - len(free) if seed_set else 0

    out = max_zero_sum_free(
        prob.shift,
        prob.cand_elem,
        prob.elem_index,
        prob.neg_index,
        prob.same_prev,
        cap=core_cap,
        best_init=best_init,
        budget=budget,
        jit=jit,
    )
    if len(out.selection):
        witness = sorted(free + [int(x) for x in prob.labels[out.selection]])
    elif seed_set is not None:
        witness = seed_set
    else:
        witness = sorted(free)
    value = len(witness)
    if out.exhausted:
        raise ResourceLimit(
            f"node budget {budget} exhausted for d={d}, N={N}; rho in [{value}, {upper}]",
            limit=budget,
            lower=value,
            upper=upper,
            incumbent=witness,
        )
    if value != len(free) + out.best:
        raise AssertionError("incumbent bookkeeping out of sync")  # pragma: no cover
    elapsed = time.perf_counter() - start
    log.debug("solve d=%d N=%d value=%d nodes=%d in %.3fs", d, N, value, out.nodes, elapsed)
    return SolveResult(
        d=d,
        N=N,
        value=value,
        witness=witness,
        nodes_explored=out.nodes,
        upper_bound_used=upper,
        elapsed=elapsed,
        free_count=len(free),
        core_size=len(core),
        core_rank=prob.rank,
        seeded=seed_set is not None,
        stats={"core_cap": core_cap, "group_order": prob.order},
    )


def solve_range(
    d: int,
    N_lo: int,
    N_hi: int,
    table: PrimeTable | None = None,
    budget: int | None = None,
    *,
    threads: int = 1,
    **kwargs,
) -> list[SolveResult | SolveFailure]:
    """Independent solves for every N in [N_lo, N_hi], in order of N."""
    if N_lo > N_hi:
        raise InvalidArgument(f"empty range {N_lo}..{N_hi}")
    if table is None:
        table = build_table(max(N_hi, 2))

    def one(N):
        try:
            return solve(d, N, table, budget, **kwargs)
        except PowerFreeError as exc:
            return SolveFailure(d, N, exc)

    Ns = range(N_lo, N_hi + 1)
    if threads <= 1:
        return [one(N) for N in Ns]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, Ns))
