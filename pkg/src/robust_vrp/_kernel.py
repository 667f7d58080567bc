"""Compiled annealing loop.

Routes live in a ``(K, N)`` integer array with a length per row. A move
writes the one or two routes it changes into scratch rows, their statistics
are recomputed, and the candidate is copied back only when accepted. The
random stream is numba's per-thread MT19937, seeded once per run.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

TOL = 1e-9
SHIFT, EXCHANGE, TWO_OPT = 0, 1, 2


@njit(cache=True)
def seed(value):
    np.random.seed(value)


@njit(cache=True)
def accept(delta, temperature):
    """Metropolis rule: always take improvements, else with exp(-delta / T)."""
    if delta <= 0:
        return True
    return np.random.random() < math.exp(-delta / temperature)


@njit(cache=True)
def route_stats(route, m, cost, succ, demand, alpha):
    if m == 0:
        return 0.0, 0.0, 0.0, 0.0
    c = 0.0
    load = 0.0
    s = 0.0
    short = 0.0
    phi = 1.0
    prev = 0
    for i in range(m):
        node = route[i]
        c += cost[prev, node]
        phi *= succ[prev, node]
        load += demand[node]
        s += phi
        if phi < alpha:
            short += alpha - phi
        prev = node
    return c + cost[prev, 0], load, s, short


@njit(cache=True)
def score(stats, capacity, min_cost, beta, big_m):
    # stats rows: cost, load, success, shortfall
    cost = 0.0
    s = 0.0
    short = 0.0
    cap = 0.0
    for r in range(stats.shape[0]):
        cost += stats[r, 0]
        s += stats[r, 2]
        short += stats[r, 3]
        over = stats[r, 1] - capacity
        if over > TOL:
            cap += over
    if min_cost:
        viol = short if short > TOL else 0.0
        base = cost
    else:
        excess = cost - beta
        viol = excess if excess > TOL else 0.0
        base = -s
    total = cap + viol
    if total > 0:
        return base + big_m * total, False
    return base, True


@njit(cache=True)
def locate(lengths, flat):
    for r in range(lengths.shape[0]):
        if flat < lengths[r]:
            return r, flat
        flat -= lengths[r]
    return -1, -1


@njit(cache=True)
def propose(routes, lengths, kind, out, out_len, out_idx):
    """Write the routes changed by one random move into ``out``.

    Returns how many routes changed (0 when the move is impossible); their
    indices go to ``out_idx``.
    """
    k = lengths.shape[0]
    n = 0
    for r in range(k):
        n += lengths[r]
    if kind == SHIFT:
        slots = n - 1 + k
        if n == 0 or slots < 2:
            return 0
        r0, i0 = locate(lengths, np.random.randint(0, n))
        home = r0 + i0
        for r in range(r0):
            home += lengths[r]
        slot = np.random.randint(0, slots - 1)
        if slot >= home:
            slot += 1
        dst = -1
        pos = 0
        for r in range(k):
            width = lengths[r] if r == r0 else lengths[r] + 1
            if slot < width:
                dst = r
                pos = slot
                break
            slot -= width
        node = routes[r0, i0]
        # source route without the node
        m = 0
        for i in range(lengths[r0]):
            if i != i0:
                out[0, m] = routes[r0, i]
                m += 1
        out_len[0] = m
        out_idx[0] = r0
        if dst == r0:
            for i in range(m, pos, -1):
                out[0, i] = out[0, i - 1]
            out[0, pos] = node
            out_len[0] = m + 1
            return 1
        m = 0
        for i in range(lengths[dst] + 1):
            if i == pos:
                out[1, m] = node
            else:
                out[1, m] = routes[dst, i if i < pos else i - 1]
            m += 1
        out_len[1] = m
        out_idx[1] = dst
        return 2
    if kind == EXCHANGE:
        if n < 2:
            return 0
        a = np.random.randint(0, n)
        b = np.random.randint(0, n - 1)
        if b >= a:
            b += 1
        ra, ia = locate(lengths, a)
        rb, ib = locate(lengths, b)
        for i in range(lengths[ra]):
            out[0, i] = routes[ra, i]
        out_len[0] = lengths[ra]
        out_idx[0] = ra
        if ra == rb:
            out[0, ia] = routes[rb, ib]
            out[0, ib] = routes[ra, ia]
            return 1
        for i in range(lengths[rb]):
            out[1, i] = routes[rb, i]
        out_len[1] = lengths[rb]
        out_idx[1] = rb
        out[0, ia] = routes[rb, ib]
        out[1, ib] = routes[ra, ia]
        return 2
    # two-opt
    n_long = 0
    for r in range(k):
        if lengths[r] >= 2:
            n_long += 1
    if n_long == 0:
        return 0
    pick = np.random.randint(0, n_long)
    r = 0
    for q in range(k):
        if lengths[q] >= 2:
            if pick == 0:
                r = q
                break
            pick -= 1
    m = lengths[r]
    i = np.random.randint(0, m)
    j = np.random.randint(0, m - 1)
    if j >= i:
        j += 1
    if i > j:
        i, j = j, i
    for q in range(m):
        if i <= q <= j:
            out[0, q] = routes[r, i + j - q]
        else:
            out[0, q] = routes[r, q]
    out_len[0] = m
    out_idx[0] = r
    return 1


@njit(cache=True)
def random_routes(n, k, routes, lengths):
    symbols = np.empty(n + k - 1, np.int64)
    for i in range(n):
        symbols[i] = i + 1
    for i in range(n, n + k - 1):
        symbols[i] = 0
    for i in range(symbols.shape[0] - 1, 0, -1):
        j = np.random.randint(0, i + 1)
        symbols[i], symbols[j] = symbols[j], symbols[i]
    lengths[:] = 0
    r = 0
    for s in symbols:
        if s == 0:
            r += 1
        else:
            routes[r, lengths[r]] = s
            lengths[r] += 1


@njit(cache=True)
def anneal(cost, succ, demand, capacity, k, min_cost, alpha, beta, big_m,
           delta, outer, inner, init_samples, final_temperature, seed_value):
    np.random.seed(seed_value)
    n = demand.shape[0] - 1
    width = max(n, 1) + 1
    routes = np.zeros((k, width), np.int64)
    lengths = np.zeros(k, np.int64)
    stats = np.zeros((k, 4))
    cand_routes = np.zeros((k, width), np.int64)
    cand_lengths = np.zeros(k, np.int64)

    sample_f = np.empty(init_samples)
    f_cur = math.inf
    ok_cur = False
    for t in range(init_samples):
        random_routes(n, k, cand_routes, cand_lengths)
        cand_stats = np.zeros((k, 4))
        for r in range(k):
            c, load, s, sh = route_stats(cand_routes[r], cand_lengths[r], cost, succ, demand, alpha)
            cand_stats[r, 0] = c
            cand_stats[r, 1] = load
            cand_stats[r, 2] = s
            cand_stats[r, 3] = sh
        f, ok = score(cand_stats, capacity, min_cost, beta, big_m)
        sample_f[t] = f
        if f < f_cur:
            f_cur = f
            ok_cur = ok
            routes[:, :] = cand_routes
            lengths[:] = cand_lengths
            stats[:, :] = cand_stats

    f_min = sample_f.min()
    f_max = sample_f.max()
    temperature = f_min + 0.1 * (f_max - f_min)
    if not temperature > 0:
        temperature = 0.1 * (f_max - f_min)
        if not temperature > 0:
            temperature = 1.0
    t0 = temperature
    cooling = delta
    if final_temperature > 0 and final_temperature < t0:
        cooling = (final_temperature / t0) ** (1.0 / outer)

    best_bad = not ok_cur
    best_f = f_cur
    best_routes = routes.copy()
    best_lengths = lengths.copy()
    trace_it = np.zeros(outer + 1, np.int64)
    trace_f = np.zeros(outer + 1)
    temps = np.zeros(outer + 1)
    current_f = np.zeros(outer + 1)
    current_f[0] = f_cur
    trace_f[0] = f_cur
    temps[0] = temperature

    out = np.zeros((2, width), np.int64)
    out_len = np.zeros(2, np.int64)
    out_idx = np.zeros(2, np.int64)
    new_stats = stats.copy()
    accepted = 0
    moves = 0
    it = 0
    for level in range(outer):
        for _ in range(inner):
            it += 1
            kind = np.random.randint(0, 3)
            changed = propose(routes, lengths, kind, out, out_len, out_idx)
            if changed == 0:
                continue
            moves += 1
            new_stats[:, :] = stats
            for q in range(changed):
                r = out_idx[q]
                c, load, s, sh = route_stats(out[q], out_len[q], cost, succ, demand, alpha)
                new_stats[r, 0] = c
                new_stats[r, 1] = load
                new_stats[r, 2] = s
                new_stats[r, 3] = sh
            f_new, ok_new = score(new_stats, capacity, min_cost, beta, big_m)
            if accept(f_new - f_cur, temperature):
                accepted += 1
                for q in range(changed):
                    r = out_idx[q]
                    m = out_len[q]
                    routes[r, :m] = out[q, :m]
                    lengths[r] = m
                stats[:, :] = new_stats
                f_cur = f_new
                bad = not ok_new
                if (bad < best_bad) or (bad == best_bad and f_new < best_f):
                    best_bad = bad
                    best_f = f_new
                    best_routes[:, :] = routes
                    best_lengths[:] = lengths
        temperature *= cooling
        temps[level + 1] = temperature
        trace_it[level + 1] = it
        trace_f[level + 1] = best_f
        current_f[level + 1] = f_cur
    return (best_routes, best_lengths, trace_it, trace_f, current_f, temps, sample_f, t0, cooling,
            accepted, moves)
