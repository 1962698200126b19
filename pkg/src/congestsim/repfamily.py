"""Representative subfamilies of small-set families.

Given a family F of sets of size at most p, a q-representative
subfamily Fhat keeps, for every blocker set C with |C| <= q, at least
one member disjoint from C whenever F has one.  Two constructions are
provided:

  * greedy deletion: walk the members in lexicographic order and drop
    any member whose removal is still q-representative.  Minimal
    witnesses obtained this way have size at most C(p+q, p).
  * search tree: repeatedly take the first member disjoint from the
    current blocker set X and branch on its elements, growing X until
    |X| = q.  At most sum_{i=0..q} p^i members are kept.

The guaranteed size bound per call is the larger of the two, and the
returned witness records which construction produced it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import InvalidParams, NotASubfamily

GREEDY_GROUND_CAP = 12
GREEDY_Q_CAP = 3


def _canon(sets) -> tuple[frozenset[int], ...]:
    dedup = {frozenset(s) for s in sets}
    return tuple(sorted(dedup, key=lambda s: tuple(sorted(s))))


@dataclass(frozen=True)
class SetFamily:
    sets: tuple[frozenset[int], ...]
    ground: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.sets)


def family(sets) -> SetFamily:
    canon = _canon(sets)
    ground = frozenset(itertools.chain.from_iterable(canon))
    return SetFamily(sets=canon, ground=ground)


@dataclass(frozen=True)
class Witness:
    """A representative subfamily plus which construction built it."""

    sets: tuple[frozenset[int], ...]
    construction: str
    p: int
    q: int

    @property
    def size(self) -> int:
        return len(self.sets)


def binomial_bound(p: int, q: int) -> int:
    return comb(p + q, p)


def search_tree_bound(p: int, q: int) -> int:
    return sum(p ** i for i in range(q + 1))


def size_bound(p: int, q: int) -> int:
    """The bound every compact_representation call is guaranteed to meet."""
    return max(binomial_bound(p, q), search_tree_bound(p, q))


def _validate(fam: SetFamily, p: int, q: int) -> None:
    if p < 1:
        raise InvalidParams("p must be at least 1")
    if q < 0:
        raise InvalidParams("q must be non-negative")
    for s in fam.sets:
        if len(s) > p:
            raise InvalidParams(f"member of size {len(s)} exceeds p={p}")


def _blockers(ground, q: int):
    g = sorted(ground)
    for size in range(q + 1):
        for combo in itertools.combinations(g, size):
            yield frozenset(combo)


def _greedy(fam: SetFamily, q: int) -> tuple[frozenset[int], ...]:
    members = list(fam.sets)
    avoided_by = {
        m: [c for c in _blockers(fam.ground, q) if not (m & c)] for m in members
    }
    avoider_count: dict[frozenset, int] = {}
    for m in members:
        for c in avoided_by[m]:
            avoider_count[c] = avoider_count.get(c, 0) + 1
    kept = set(members)
    for m in members:
        if all(avoider_count[c] >= 2 for c in avoided_by[m]):
            kept.remove(m)
            for c in avoided_by[m]:
                avoider_count[c] -= 1
    return tuple(s for s in fam.sets if s in kept)


def _search_tree(fam: SetFamily, q: int) -> tuple[frozenset[int], ...]:
    kept: set[frozenset[int]] = set()
    seen: set[frozenset[int]] = set()

    def rec(blocked: frozenset[int]) -> None:
        if blocked in seen:
            return
        seen.add(blocked)
        pick = next((m for m in fam.sets if not (m & blocked)), None)
        if pick is None:
            return
        kept.add(pick)
        if len(blocked) < q:
            for e in sorted(pick):
                rec(blocked | {e})

    rec(frozenset())
    return tuple(s for s in fam.sets if s in kept)


def compact_representation(fam: SetFamily, p: int, q: int, method: str = "auto") -> Witness:
    """A q-representative subfamily of `fam` within size_bound(p, q).

    method "auto" picks greedy deletion on small ground sets (adversary
    enumeration stays cheap) and the search tree otherwise; "greedy" and
    "tree" force a construction.
    """
    _validate(fam, p, q)
    if method == "auto":
        method = (
            "greedy"
            if len(fam.ground) <= GREEDY_GROUND_CAP and q <= GREEDY_Q_CAP
            else "tree"
        )
    if method == "greedy":
        sets = _greedy(fam, q)
    elif method == "tree":
        sets = _search_tree(fam, q)
    else:
        raise InvalidParams(f"unknown method {method!r}")
    if len(sets) > size_bound(p, q):
        raise AssertionError(
            f"{method} witness of size {len(sets)} exceeds bound {size_bound(p, q)}"
        )
    return Witness(sets=sets, construction=method, p=p, q=q)


def verify_witness(fam: SetFamily, witness, q: int) -> bool:
    """Exhaustively check q-representativity against every blocker set."""
    sub = witness.sets if isinstance(witness, Witness) else _canon(witness)
    members = set(fam.sets)
    for s in sub:
        if s not in members:
            raise NotASubfamily(f"{sorted(s)} is not a member of the family")
    subset = list(sub)
    for c in _blockers(fam.ground, q):
        if any(not (m & c) for m in fam.sets) and not any(not (m & c) for m in subset):
            return False
    return True
