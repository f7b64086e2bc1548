"""Exact unweighted set cover over bitmask incidence.

Elements are bit positions; each candidate is the mask of elements it covers.
"""

from __future__ import annotations

from itertools import combinations
from typing import List, Optional, Sequence, Tuple


class BudgetExceeded(Exception):
    """The optimum is larger than the permitted number of sets."""

    def __init__(self, budget: int):
        super().__init__(f"optimum > budget ({budget})")
        self.budget = budget


class Uncoverable(ValueError):
    def __init__(self, element: int):
        super().__init__(f"element {element} is covered by no candidate")
        self.element = element


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def greedy_cover(masks: Sequence[int], universe: int) -> List[int]:
    chosen = []
    left = universe
    while left:
        best = max(range(len(masks)), key=lambda k: (bin(masks[k] & left).count("1"), -k))
        if not masks[best] & left:
            raise Uncoverable(next(_bits(left)))
        chosen.append(best)
        left &= ~masks[best]
    return sorted(chosen)


class _Search:
    """Depth-first branch and bound with a disjoint-element packing bound."""

    def __init__(self, masks: Sequence[int], n_elements: int):
        self.masks = list(masks)
        self.n = n_elements
        self.cover_of: List[List[int]] = [[] for _ in range(n_elements)]
        for k, m in enumerate(self.masks):
            for e in _bits(m):
                self.cover_of[e].append(k)
        # elements sharing a candidate with e (including e)
        self.reach = [0] * n_elements
        for e in range(n_elements):
            acc = 0
            for k in self.cover_of[e]:
                acc |= self.masks[k]
            self.reach[e] = acc

    def lower_bound(self, left: int) -> int:
        """Elements pairwise not coverable by a common candidate."""
        bound = 0
        blocked = 0
        for e in sorted(_bits(left), key=lambda e: len(self.cover_of[e])):
            if not (blocked >> e) & 1:
                bound += 1
                blocked |= self.reach[e]
        return bound

    def solve(self, universe: int, limit: int, allowed_from: int = 0,
              first: bool = False) -> Optional[List[int]]:
        """Smallest cover of ``universe`` with fewer than ``limit`` sets, using
        candidates with index >= ``allowed_from``; ``None`` if none exists.
        With ``first=True`` any such cover is returned."""
        self.best: Optional[List[int]] = None
        self.limit = limit
        self.floor = allowed_from
        self.first = first
        for e in _bits(universe):
            if not any(k >= allowed_from for k in self.cover_of[e]):
                return None
        self._dfs(universe, [])
        return self.best

    def _dfs(self, left: int, chosen: List[int]):
        if not left:
            self.best = sorted(chosen)
            self.limit = 0 if self.first else len(chosen)
            return
        if len(chosen) + self.lower_bound(left) >= self.limit:
            return
        pivot = min(_bits(left), key=lambda e: len(self.cover_of[e]))
        options = [k for k in self.cover_of[pivot] if k >= self.floor]
        options.sort(key=lambda k: (-bin(self.masks[k] & left).count("1"), k))
        for k in options:
            chosen.append(k)
            self._dfs(left & ~self.masks[k], chosen)
            chosen.pop()
            if len(chosen) + 1 >= self.limit:
                return


def _reduce(masks: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Drop empty, duplicate and dominated masks; returns (masks, original index)."""
    first = {}
    for k, m in enumerate(masks):
        if m and m not in first:
            first[m] = k
    uniq = sorted(first.items(), key=lambda item: -bin(item[0]).count("1"))
    kept: List[Tuple[int, int]] = []
    for m, k in uniq:
        if not any((m | km) == km for km, _ in kept):
            kept.append((m, k))
    kept.sort(key=lambda item: item[1])
    return [m for m, _ in kept], [k for _, k in kept]


def min_set_cover(masks: Sequence[int], n_elements: int, budget: Optional[int] = None,
                  mode: str = "bnb", canonical: bool = True) -> List[int]:
    """Indices of a minimum-cardinality cover of all ``n_elements`` elements.

    ``mode="bnb"`` runs branch and bound (with dominance reduction) for the
    optimum; ``mode="sweep"`` tries every subset of size 1, 2, ... in
    lexicographic order. With ``canonical=True`` the answer is the
    lexicographically smallest optimal index set; the sweep yields that
    directly.
    """
    universe = (1 << n_elements) - 1
    if n_elements == 0:
        return []
    covered = 0
    for m in masks:
        covered |= m
    if covered & universe != universe:
        raise Uncoverable(next(_bits(universe & ~covered)))
    cap = budget if budget is not None else n_elements

    if mode == "sweep":
        # a repeated mask can always be swapped for its first occurrence,
        # which keeps the lexicographically smallest answer unchanged
        seen = set()
        distinct = []
        for k, m in enumerate(masks):
            if m and m not in seen:
                seen.add(m)
                distinct.append(k)
        for k in range(1, cap + 1):
            for combo in combinations(distinct, k):
                acc = 0
                for c in combo:
                    acc |= masks[c]
                if acc & universe == universe:
                    return list(combo)
        raise BudgetExceeded(cap)
    if mode != "bnb":
        raise ValueError(f"unknown mode {mode!r}")

    reduced, index = _reduce(masks)
    search = _Search(reduced, n_elements)
    upper = greedy_cover(reduced, universe)
    limit = min(len(upper), cap + 1)
    best = [index[k] for k in upper] if len(upper) <= cap else None
    found = search.solve(universe, limit)
    if found is not None:
        best = [index[k] for k in found]
    if best is None:
        raise BudgetExceeded(cap)
    if not canonical:
        return sorted(best)
    return _lex_smallest(masks, n_elements, len(best))


def _lex_smallest(masks: Sequence[int], n_elements: int, k: int) -> List[int]:
    """Lexicographically smallest cover of size ``k`` (``k`` known optimal)."""
    universe = (1 << n_elements) - 1
    search = _Search(masks, n_elements)
    chosen: List[int] = []
    left = universe
    start = 0
    while left:
        need = k - len(chosen)
        for i in range(start, len(masks)):
            if not masks[i] & left:
                continue
            rest = left & ~masks[i]
            if not rest or (need > 1 and search.solve(rest, need, i + 1, first=True) is not None):
                chosen.append(i)
                left = rest
                start = i + 1
                break
        else:
            raise AssertionError("optimal size not attainable; inconsistent incidence")
    return chosen
