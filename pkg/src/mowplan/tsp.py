"""Open-path tour construction for the mow-then-visit baseline.

Euclidean edge lengths order the visits even though execution uses
bounded-curvature legs; the ordering error stays small while the turn
radius is well below typical leg lengths.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Tour:
    """Visit order over the target list, as indices. Open path: the
    mower does not return to the start point."""

    order: tuple
    length: float
    start: tuple


def _dist_table(start, pts):
    """d0[i] = start->i, d[i, j] = i->j."""
    pts = np.asarray(pts, dtype=float)
    d0 = np.hypot(pts[:, 0] - start[0], pts[:, 1] - start[1])
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.hypot(diff[..., 0], diff[..., 1])
    return d0, d


def _order_length(d0, d, order):
    total = d0[order[0]]
    for a, b in zip(order[:-1], order[1:]):
        total += d[a, b]
    return float(total)


def heuristic_tour(start, targets) -> Tour:
    """Nearest-neighbor construction from the fixed start, then
    first-improvement 2-opt until no segment reversal helps."""
    n = len(targets)
    if n == 0:
        raise ValueError("targets must be nonempty")
    start = (float(start[0]), float(start[1]))
    d0, d = _dist_table(start, targets)

    unvisited = list(range(n))
    order = []
    here = None
    while unvisited:
        costs = d0[unvisited] if here is None else d[here, unvisited]
        pick = unvisited[int(np.argmin(costs))]
        order.append(pick)
        unvisited.remove(pick)
        here = pick

    improved = True
    while improved:
        improved = False
        for i in range(n - 1):
            prev = order[i - 1] if i > 0 else None
            base_in = d[prev, order[i]] if prev is not None else d0[order[i]]
            for j in range(i + 2, n + 1):
                new_in = d[prev, order[j - 1]] if prev is not None else d0[order[j - 1]]
                if j < n:
                    # Reversing order[i:j] swaps both boundary edges.
                    delta = (
                        new_in
                        + d[order[i], order[j]]
                        - base_in
                        - d[order[j - 1], order[j]]
                    )
                else:
                    # Suffix reversal only changes the entry edge.
                    delta = new_in - base_in
                if delta < -1e-12:
                    order[i:j] = order[i:j][::-1]
                    improved = True
                    base_in = new_in
    return Tour(tuple(order), _order_length(d0, d, order), start)


def brute_force_tour(start, targets, max_n: int = 9) -> Tour:
    """Exact optimal open path by exhaustive permutation search.

    Partial orders already longer than the best complete tour are
    pruned, seeded with the heuristic length, so the enumeration stays
    fast at the n <= max_n sizes this oracle is meant for.
    """
    n = len(targets)
    if n == 0:
        raise ValueError("targets must be nonempty")
    if n > max_n:
        raise ValueError(f"brute force limited to {max_n} targets, got {n}")
    start = (float(start[0]), float(start[1]))
    d0, d = _dist_table(start, targets)

    seed = heuristic_tour(start, targets)
    best_len = seed.length + 1e-12
    best_order = list(seed.order)

    order = []
    used = [False] * n

    def extend(partial_len):
        nonlocal best_len, best_order
        if partial_len >= best_len:
            return
        k = len(order)
        if k == n:
            best_len = partial_len
            best_order = order.copy()
            return
        here = order[-1] if order else None
        for i in range(n):
            if used[i]:
                continue
            edge = d0[i] if here is None else d[here, i]
            used[i] = True
            order.append(i)
            extend(partial_len + edge)
            order.pop()
            used[i] = False

    extend(0.0)
    return Tour(tuple(best_order), _order_length(d0, d, best_order), start)
