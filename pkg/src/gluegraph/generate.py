"""Exhaustive small-graph generator: one representative per isomorphism class."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .canon import DEFAULT_CAP, canonical_form, graph_from_code
from .errors import SizeCapError
from .graph import MultiGraph


def enumerate_all_graphs(
    max_n: int, max_m: int, simple_only: bool = False, cap: int = DEFAULT_CAP
) -> Iterator[MultiGraph]:
    """Yield canonical representatives with ``n <= max_n`` and ``m <= max_m``.

    Order is by ``(n, m, canonical code)``. The null graph is included.
    """
    if max_n > cap or max_n < 0:
        raise SizeCapError(f"max_n={max_n} outside [0, {cap}]")
    if max_m > cap * cap or max_m < 0:
        raise SizeCapError(f"max_m={max_m} outside [0, {cap * cap}]")
    for n in range(max_n + 1):
        for codes in _levels(n, max_m, simple_only):
            for code in codes:
                yield graph_from_code(code)


def graphs_with(n: int, m: int, simple_only: bool = False) -> list[MultiGraph]:
    """Representatives with exactly ``n`` vertices and ``m`` edges."""
    return [graph_from_code(c) for c in _levels(n, m, simple_only)[m]]


def count_by_n(max_n: int, max_m: int, simple_only: bool = False) -> dict[int, int]:
    out: dict[int, int] = {}
    for g in enumerate_all_graphs(max_n, max_m, simple_only):
        out[g.n] = out.get(g.n, 0) + 1
    return out


@lru_cache(maxsize=None)
def _levels(n: int, max_m: int, simple_only: bool) -> tuple[tuple[bytes, ...], ...]:
    # every m-edge graph is an (m-1)-edge graph plus one edge, so grow level by level
    if n == 0:
        return ((canonical_form(MultiGraph(0)),),) + ((),) * max_m
    if max_m > 0:
        prev = _levels(n, max_m - 1, simple_only)
    else:
        return ((canonical_form(MultiGraph(n)),),)
    slots = [(u, v) for u in range(n) for v in range(u, n) if not (simple_only and u == v)]
    last = prev[-1]
    nxt: set[bytes] = set()
    for code in last:
        g = graph_from_code(code)
        present = set(g.edges)
        for s in slots:
            if simple_only and s in present:
                continue
            nxt.add(canonical_form(g.add_edges(s)))
    return prev + (tuple(sorted(nxt)),)
