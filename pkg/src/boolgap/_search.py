"""Backtracking search with generalised arc consistency over index-based
constraints.  Domains are bitmasks; variables are branched in index order and
values in ascending order, so every result is deterministic."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Sequence


def _lowest(x: int) -> int:
    return (x & -x).bit_length() - 1


class Problem:
    def __init__(self, domain_size: int, n_vars: int,
                 constraints: Iterable[tuple[Sequence[int], Iterable[Sequence[int]]]]):
        self.d = domain_size
        self.n = n_vars
        self.full = (1 << domain_size) - 1
        self.cons: list[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]] = []
        self.watch: list[list[int]] = [[] for _ in range(n_vars)]
        self.trivially_false = False
        seen = {}
        for scope, rows in constraints:
            distinct = tuple(dict.fromkeys(scope))
            pos = [distinct.index(v) for v in scope]
            kept = set()
            for row in rows:
                vals = [-1] * len(distinct)
                ok = True
                for p, val in zip(pos, row):
                    if vals[p] < 0:
                        vals[p] = val
                    elif vals[p] != val:
                        ok = False
                        break
                if ok:
                    kept.add(tuple(vals))
            if not kept:
                self.trivially_false = True
            key = (distinct, frozenset(kept))
            if key in seen:
                continue
            seen[key] = len(self.cons)
            ci = len(self.cons)
            self.cons.append((distinct, tuple(sorted(kept))))
            for v in distinct:
                self.watch[v].append(ci)

    # -- propagation -----------------------------------------------------

    def _propagate(self, doms: list[int], queue: list[int]) -> bool:
        pending = set(queue)
        cons, watch = self.cons, self.watch
        while queue:
            ci = queue.pop()
            pending.discard(ci)
            vs, rows = cons[ci]
            cur = [doms[v] for v in vs]
            supp = [0] * len(vs)
            for row in rows:
                for i, val in enumerate(row):
                    if not (cur[i] >> val) & 1:
                        break
                else:
                    for i, val in enumerate(row):
                        supp[i] |= 1 << val
            for i, v in enumerate(vs):
                s = supp[i]
                if s != cur[i]:
                    if not s:
                        return False
                    doms[v] = s
                    for cj in watch[v]:
                        if cj != ci and cj not in pending:
                            pending.add(cj)
                            queue.append(cj)
        return True

    def initial(self, pins: Mapping[int, int] | None = None) -> list[int] | None:
        if self.trivially_false:
            return None
        doms = [self.full] * self.n
        for v, a in (pins or {}).items():
            if doms[v] != self.full and not (doms[v] >> a) & 1:
                return None
            doms[v] &= 1 << a
            if not doms[v]:
                return None
        if not self._propagate(doms, list(range(len(self.cons)))):
            return None
        return doms

    # -- search ----------------------------------------------------------

    def _branch_var(self, doms: list[int], order: Sequence[int]) -> int:
        for v in order:
            if doms[v] & (doms[v] - 1):
                return v
        return -1

    def _solutions(self, doms: list[int], order: Sequence[int]) -> Iterator[list[int]]:
        v = self._branch_var(doms, order)
        if v < 0:
            yield doms
            return
        m = doms[v]
        while m:
            a = _lowest(m)
            m &= m - 1
            child = list(doms)
            child[v] = 1 << a
            if self._propagate(child, list(self.watch[v])):
                yield from self._solutions(child, order)

    def solutions(self, pins: Mapping[int, int] | None = None) -> Iterator[tuple[int, ...]]:
        doms = self.initial(pins)
        if doms is None:
            return
        order = range(self.n)
        for leaf in self._solutions(doms, order):
            yield tuple(_lowest(x) for x in leaf)

    def first(self, pins: Mapping[int, int] | None = None) -> tuple[int, ...] | None:
        return next(self.solutions(pins), None)

    def satisfiable(self, pins: Mapping[int, int] | None = None) -> bool:
        return self.first(pins) is not None

    def project(self, keep: Sequence[int]) -> Iterator[tuple[int, ...]]:
        """Distinct value tuples on ``keep`` that extend to a full solution."""
        doms = self.initial()
        if doms is None:
            return
        keep = list(keep)
        rest = [v for v in range(self.n) if v not in set(keep)]

        def rec(doms):
            v = self._branch_var(doms, keep)
            if v < 0:
                if next(self._solutions(doms, rest), None) is not None:
                    yield tuple(_lowest(doms[u]) for u in keep)
                return
            m = doms[v]
            while m:
                a = _lowest(m)
                m &= m - 1
                child = list(doms)
                child[v] = 1 << a
                if self._propagate(child, list(self.watch[v])):
                    yield from rec(child)

        yield from rec(doms)
