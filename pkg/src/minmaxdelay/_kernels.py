"""Integer search kernels.

Written in the numba-compatible subset of Python over int64 arrays.  With
``MINMAXDELAY_JIT=0`` in the environment (or numba missing) the very same
functions run as plain Python; ``KERNELS_JITTED`` tells which path is live.
Dispatchers keep the interpreted version reachable as ``.py_func``.
"""

import os

import numpy as np

_flag = os.environ.get("MINMAXDELAY_JIT", "1").strip().lower()
_want_jit = _flag not in ("0", "false", "no", "off")

try:
    if not _want_jit:
        raise ImportError
    from numba import njit as _njit

    def jit(fn):
        return _njit(cache=True, nogil=True)(fn)

    KERNELS_JITTED = True
except ImportError:

    def jit(fn):
        fn.py_func = fn
        return fn

    KERNELS_JITTED = False

STATUS_OK = 0
STATUS_BUDGET = 1


@jit
def enumerate_paths_csr(indptr, adj_edge, adj_head, edge_delay, s, t, n_nodes, budget):
    """Depth-first enumeration of simple s-t paths over a CSR adjacency.

    Returns ``(path_ptr, path_edges, path_delay, status)``; ``path_edges``
    concatenates the edge indices of all paths, delimited by ``path_ptr``.
    """
    cap_edges = 64
    cap_paths = 16
    path_edges = np.empty(cap_edges, np.int64)
    path_ptr = np.zeros(cap_paths + 1, np.int64)
    path_delay = np.empty(cap_paths, np.int64)
    n_paths = 0
    n_edges_out = 0

    on_path = np.zeros(n_nodes, np.bool_)
    stack_node = np.empty(n_nodes + 1, np.int64)
    stack_pos = np.empty(n_nodes + 1, np.int64)
    trail = np.empty(n_nodes + 1, np.int64)
    depth = 0
    stack_node[0] = s
    stack_pos[0] = indptr[s]
    on_path[s] = True
    delay = 0
    status = 0

    while depth >= 0:
        v = stack_node[depth]
        pos = stack_pos[depth]
        if v == t or pos >= indptr[v + 1]:
            on_path[v] = False
            depth -= 1
            if depth >= 0:
                delay -= edge_delay[trail[depth]]
            continue
        stack_pos[depth] = pos + 1
        w = adj_head[pos]
        if on_path[w]:
            continue
        e = adj_edge[pos]
        trail[depth] = e
        delay += edge_delay[e]
        if w == t:
            if n_paths >= budget:
                status = 1
                break
            if n_paths == cap_paths:
                cap_paths *= 2
                grown = np.zeros(cap_paths + 1, np.int64)
                grown[: n_paths + 1] = path_ptr[: n_paths + 1]
                path_ptr = grown
                grown_d = np.empty(cap_paths, np.int64)
                grown_d[:n_paths] = path_delay[:n_paths]
                path_delay = grown_d
            while n_edges_out + depth + 1 > cap_edges:
                cap_edges *= 2
                grown_e = np.empty(cap_edges, np.int64)
                grown_e[:n_edges_out] = path_edges[:n_edges_out]
                path_edges = grown_e
            for k in range(depth + 1):
                path_edges[n_edges_out + k] = trail[k]
            n_edges_out += depth + 1
            path_delay[n_paths] = delay
            n_paths += 1
            path_ptr[n_paths] = n_edges_out
            delay -= edge_delay[e]
            continue
        depth += 1
        on_path[w] = True
        stack_node[depth] = w
        stack_pos[depth] = indptr[w]

    return path_ptr[: n_paths + 1].copy(), path_edges[:n_edges_out].copy(), path_delay[:n_paths].copy(), status


@jit
def delay_budget_bound(resid, tail, head, delay, n_nodes, s, t, D, cap):
    """Largest k <= cap with mincost(k) <= k * D, where mincost(k) is the least
    total delay of a k-unit s-t flow in the residual capacities ``resid``.

    Any k units on paths of delay <= D cost at most k * D, so this bounds the
    additional rate reachable.  Successive shortest paths with Bellman-Ford;
    unit costs along the augmentations are non-decreasing, so the scan can
    stop at the first augmentation costing more than D.
    """
    m = resid.shape[0]
    flow = np.zeros(m, np.int64)
    dist = np.empty(n_nodes, np.int64)
    pred = np.empty(n_nodes, np.int64)
    inf = np.int64(1) << 60
    k = 0
    spent = 0
    while k < cap:
        for v in range(n_nodes):
            dist[v] = inf
            pred[v] = -1
        dist[s] = 0
        for _ in range(n_nodes):
            changed = False
            for e in range(m):
                u = tail[e]
                w = head[e]
                if resid[e] - flow[e] > 0 and dist[u] < inf and dist[u] + delay[e] < dist[w]:
                    dist[w] = dist[u] + delay[e]
                    pred[w] = e
                    changed = True
                if flow[e] > 0 and dist[w] < inf and dist[w] - delay[e] < dist[u]:
                    dist[u] = dist[w] - delay[e]
                    pred[u] = -2 - e
                    changed = True
            if not changed:
                break
        if dist[t] >= inf:
            break
        bottleneck = cap - k
        v = t
        while v != s:
            p = pred[v]
            if p >= 0:
                room = resid[p] - flow[p]
                v = tail[p]
            else:
                room = flow[-2 - p]
                v = head[-2 - p]
            if room < bottleneck:
                bottleneck = room
        unit = dist[t]
        if unit > D:
            slack = k * D - spent
            extra = slack // (unit - D)
            if extra > bottleneck:
                extra = bottleneck
            k += extra
            break
        v = t
        while v != s:
            p = pred[v]
            if p >= 0:
                flow[p] += bottleneck
                v = tail[p]
            else:
                flow[-2 - p] -= bottleneck
                v = head[-2 - p]
        k += bottleneck
        spent += bottleneck * unit
    return k


@jit
def search_max_rate(path_ptr, path_edges, resid0, tail, head, delay, n_nodes, s, t, D, target, node_budget):
    """Branch-and-bound for the largest integer rate (capped at ``target``)
    routable on the given paths.

    A solution is a multiset of unit paths, built in non-decreasing path index
    order.  Each partial solution must fit the residual capacities and is
    pruned when ``placed + delay_budget_bound(...)`` cannot beat the best
    rate seen.  Returns ``(best, units per path, nodes explored, status)``.
    """
    n_paths = path_ptr.shape[0] - 1
    resid = resid0.copy()
    counts = np.zeros(n_paths, np.int64)
    best_counts = np.zeros(n_paths, np.int64)
    best = 0
    nodes = 0
    if n_paths == 0 or target <= 0:
        return best, best_counts, nodes, 0
    if delay_budget_bound(resid, tail, head, delay, n_nodes, s, t, D, target) == 0:
        return best, best_counts, nodes, 0
    chosen = np.empty(target, np.int64)
    depth = 0
    j = 0
    while True:
        found = -1
        while j < n_paths:
            fits = True
            for q in range(path_ptr[j], path_ptr[j + 1]):
                if resid[path_edges[q]] <= 0:
                    fits = False
                    break
            if fits:
                found = j
                break
            j += 1
        if found >= 0:
            for q in range(path_ptr[found], path_ptr[found + 1]):
                resid[path_edges[q]] -= 1
            counts[found] += 1
            chosen[depth] = found
            depth += 1
            nodes += 1
            if depth > best:
                best = depth
                best_counts[:] = counts
                if best >= target:
                    return best, best_counts, nodes, 0
            if nodes >= node_budget:
                return best, best_counts, nodes, 1
            ub = delay_budget_bound(resid, tail, head, delay, n_nodes, s, t, D, target - depth)
            if depth + ub <= best:
                depth -= 1
                counts[found] -= 1
                for q in range(path_ptr[found], path_ptr[found + 1]):
                    resid[path_edges[q]] += 1
                j = found + 1
            else:
                j = found
        else:
            if depth == 0:
                break
            depth -= 1
            last = chosen[depth]
            counts[last] -= 1
            for q in range(path_ptr[last], path_ptr[last + 1]):
                resid[path_edges[q]] += 1
            j = last + 1
    return best, best_counts, nodes, 0
