"""Dense subset-sum-closure search kernels.

A finite abelian group ``Z_{m_1} + ... + Z_{m_r}`` is indexed in mixed radix
with the first coordinate most significant, so index order is lexicographic
order on coordinate tuples. A subset-sum closure is a uint8 mask over the
group. Adding an element ``g`` maps a closure ``C`` to ``C | C[y - g] | {g}``
and the shift ``y -> y - g`` is precomputed once per distinct element.

Two interchangeable implementations of the depth-first search exist: an
``@njit`` kernel and a numpy fallback with the same control flow (and hence
the same node counts). ``POWERFREE_JIT=0`` selects the fallback.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._config import jit_enabled

STATUS_DONE = 0
STATUS_BUDGET = 1


class GroupIndexer:
    def __init__(self, mods):
        self.mods = np.asarray(mods, dtype=np.int64)
        if self.mods.ndim != 1 or np.any(self.mods < 1):
            raise ValueError("cyclic orders must be a 1-d array of positive integers")
        self.rank = len(self.mods)
        self.order = int(np.prod(self.mods)) if self.rank else 1
        w = np.ones(self.rank, dtype=np.int64)
        for i in range(self.rank - 2, -1, -1):
            w[i] = w[i + 1] * self.mods[i + 1]
        self.weights = w
        idx = np.arange(self.order, dtype=np.int64)
        if self.rank:
            self.digits = (idx[:, None] // w[None, :]) % self.mods[None, :]
        else:
            self.digits = np.zeros((1, 0), dtype=np.int64)

    def encode(self, vectors):
        vecs = np.asarray(vectors, dtype=np.int64)
        if vecs.ndim == 1:
            vecs = vecs[None, :]
        return ((vecs % self.mods) @ self.weights).astype(np.int64)

    def negate(self, indices):
        return self.encode(-self.digits[np.asarray(indices, dtype=np.int64)])

    def minus_tables(self, indices):
        """Row k maps y to the index of y - g_k."""
        indices = np.asarray(indices, dtype=np.int64)
        out = np.empty((len(indices), self.order), dtype=np.int32)
        for k, g in enumerate(indices):
            out[k] = ((self.digits - self.digits[g]) % self.mods) @ self.weights
        return out


@dataclass
class SearchOutcome:
    best: int
    selection: np.ndarray  # candidate positions, empty if best_init was never beaten
    nodes: int
    status: int

    @property
    def exhausted(self):
        return self.status == STATUS_BUDGET


def _search_numpy(shift, cand_elem, elem_index, neg_index, same_prev, cap, best_init, budget):
    n = len(cand_elem)
    order = shift.shape[1]
    maxdepth = min(cap, n)
    closures = np.zeros((maxdepth + 1, order), dtype=np.uint8)
    lists = [np.arange(n, dtype=np.int64)] + [None] * maxdepth
    pos = np.zeros(maxdepth + 1, dtype=np.int64)
    chosen = np.full(maxdepth + 1, -1, dtype=np.int64)
    best = best_init
    best_sel = np.empty(0, dtype=np.int64)
    nodes = 0
    status = STATUS_DONE
    depth = 0 if n > best else -1
    neg_of_cand = neg_index[cand_elem]
    while depth >= 0:
        if best >= cap:
            break
        cur = lists[depth]
        q = pos[depth]
        if q >= len(cur) or depth + len(cur) - q <= best:
            depth -= 1
            continue
        pos[depth] = q + 1
        j = cur[q]
        sp = same_prev[j]
        if sp >= 0 and (depth == 0 or chosen[depth - 1] != sp):
            continue
        nodes += 1
        if nodes > budget:
            status = STATUS_BUDGET
            break
        e = cand_elem[j]
        child = closures[depth] | closures[depth][shift[e]]
        child[elem_index[e]] = 1
        closures[depth + 1] = child
        size = int(child.sum())
        chosen[depth] = j
        t = depth + 1
        if t > best:
            best = t
            best_sel = chosen[:t].copy()
        rest = cur[q + 1 :]
        rest = rest[child[neg_of_cand[rest]] == 0]
        bound = t + min(len(rest), order - 1 - size)
        if t < maxdepth and bound > best:
            lists[t] = rest
            pos[t] = 0
            depth = t
    return best, best_sel, nodes, status


def _search_loops(shift, cand_elem, elem_index, neg_index, same_prev, cap, best_init, budget):
    n = cand_elem.shape[0]
    order = shift.shape[1]
    maxdepth = min(cap, n)
    closures = np.zeros((maxdepth + 1, order), dtype=np.uint8)
    lists = np.empty((maxdepth + 1, max(n, 1)), dtype=np.int64)
    lens = np.zeros(maxdepth + 1, dtype=np.int64)
    pos = np.zeros(maxdepth + 1, dtype=np.int64)
    chosen = np.full(maxdepth + 1, -1, dtype=np.int64)
    best = best_init
    best_sel = np.empty(0, dtype=np.int64)
    nodes = 0
    status = 0
    for k in range(n):
        lists[0, k] = k
    lens[0] = n
    depth = 0 if n > best else -1
    while depth >= 0:
        if best >= cap:
            break
        q = pos[depth]
        if q >= lens[depth] or depth + lens[depth] - q <= best:
            depth -= 1
            continue
        pos[depth] = q + 1
        j = lists[depth, q]
        sp = same_prev[j]
        if sp >= 0 and (depth == 0 or chosen[depth - 1] != sp):
            continue
        nodes += 1
        if nodes > budget:
            status = 1
            break
        e = cand_elem[j]
        sh = shift[e]
        parent = closures[depth]
        child = closures[depth + 1]
        size = 0
        for y in range(order):
            v = parent[y] | parent[sh[y]]
            child[y] = v
            size += v
        g = elem_index[e]
        if child[g] == 0:
            child[g] = 1
            size += 1
        chosen[depth] = j
        t = depth + 1
        if t > best:
            best = t
            best_sel = chosen[:t].copy()
        length = 0
        for qq in range(q + 1, lens[depth]):
            jj = lists[depth, qq]
            if child[neg_index[cand_elem[jj]]] == 0:
                lists[t, length] = jj
                length += 1
        room = order - 1 - size
        bound = t + (length if length < room else room)
        if t < maxdepth and bound > best:
            lens[t] = length
            pos[t] = 0
            depth = t
    return best, best_sel, nodes, status


_search_jit = None


def _get_jit():
    """Compile the loop kernel on first use (cached on disk by numba)."""
    global _search_jit
    if _search_jit is None:
        from numba import njit

        _search_jit = njit(cache=True, nogil=True)(_search_loops)
    return _search_jit


def max_zero_sum_free(
    shift,
    cand_elem,
    elem_index,
    neg_index,
    same_prev,
    *,
    cap,
    best_init=0,
    budget=10**9,
    jit=None,
):
    """Largest zero-sum-free choice of candidates, by depth-first search.

    Candidate ``j`` is the group element ``elem_index[cand_elem[j]]``;
    ``shift[e]`` is the minus-table of element slot ``e`` and ``neg_index[e]``
    the index of its negative. ``same_prev[j]`` is the previous candidate
    carrying the same element (or -1): copies may only be taken as a prefix,
    which removes multiset symmetry. Only selections strictly larger than
    ``best_init`` are reported. The search stops early once ``cap`` is met.
    """
    if jit is None:
        jit = jit_enabled()
    args = (
        np.ascontiguousarray(shift, dtype=np.int32),
        np.ascontiguousarray(cand_elem, dtype=np.int64),
        np.ascontiguousarray(elem_index, dtype=np.int64),
        np.ascontiguousarray(neg_index, dtype=np.int64),
        np.ascontiguousarray(same_prev, dtype=np.int64),
        int(cap),
        int(best_init),
        int(budget),
    )
    fn = _get_jit() if jit else _search_numpy
    best, sel, nodes, status = fn(*args)
    return SearchOutcome(int(best), np.asarray(sel, dtype=np.int64), int(nodes), int(status))
