"""Finite groups stored as dense multiplication tables.

Elements are plain integers ``0 <= q < order``.  Groups are built either
from abelian invariants (mixed-radix enumeration, last factor varying
fastest) or by closing a list of permutations under composition
(breadth-first, generators tried in input order).
"""

from __future__ import annotations

import re
from collections import deque
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import AlphabetError, SizeLimitError

DEFAULT_CHECK_BOUND = 512
DEFAULT_MAX_ORDER = 5040

_POWER = re.compile(r"^(?P<name>.+?)(?:\^(?P<exp>-?\d+))?$")


def default_generator_names(k: int) -> tuple[str, ...]:
    if k == 1:
        return ("h",)
    if k == 2:
        return ("g", "h")
    return tuple(f"g{i + 1}" for i in range(k))


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Parameters
    ----------
    table:
        ``n x n`` array with ``table[a, b]`` the index of ``a*b``.
    generators:
        Optional mapping from generator name to element index; used to
        name elements and to parse element words such as ``"g h^2"``.
    element_names:
        Optional display names, one per element.  Derived from the named
        generators when omitted.
    check_bound:
        Group axioms are verified on construction when ``n <= check_bound``.
    """

    def __init__(
        self,
        table,
        generators: dict[str, int] | None = None,
        element_names: Sequence[str] | None = None,
        check_bound: int = DEFAULT_CHECK_BOUND,
    ):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ValueError("multiplication table must be a non-empty square array")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise ValueError("table entries must be element indices")
        t.setflags(write=False)
        self.table = t
        self.order = n
        self._rows = t.tolist()
        ident = [a for a in range(n) if all(self._rows[a][b] == b for b in range(n))]
        if not ident:
            raise ValueError("table has no left identity")
        self.identity = ident[0]
        inverses = []
        for a in range(n):
            row = self._rows[a]
            try:
                inverses.append(row.index(self.identity))
            except ValueError:
                raise ValueError(f"element {a} has no right inverse") from None
        self.inverses = tuple(inverses)
        if n <= check_bound:
            self._check_axioms()
        self.generators = dict(generators or {})
        for name, q in self.generators.items():
            if not 0 <= q < n:
                raise ValueError(f"generator {name!r} is not an element")
        if element_names is None:
            element_names = self._derive_names()
        self.element_names = tuple(element_names)
        self._name_index = {name: q for q, name in enumerate(self.element_names)}

    def _check_axioms(self) -> None:
        t = self.table
        n = self.order
        e = self.identity
        if not (np.all(t[:, e] == np.arange(n)) and np.all(t[e, :] == np.arange(n))):
            raise ValueError("identity is not two-sided")
        for a in range(n):
            if self._rows[self.inverses[a]][a] != e:
                raise ValueError(f"inverse of {a} is not two-sided")
            # (a*b)*c == a*(b*c) for all b, c
            if not np.array_equal(t[t[a]], t[a][t]):
                raise ValueError("multiplication table is not associative")

    def _derive_names(self) -> list[str]:
        names: list[str | None] = [None] * self.order
        names[self.identity] = "1"
        gens = list(self.generators.items())
        if not gens:
            return [str(q) if q != self.identity else "1" for q in range(self.order)]
        # breadth-first over positive generator words; runs collapse to powers
        words = {self.identity: ()}
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for k, (_, g) in enumerate(gens):
                b = self._rows[a][g]
                if b not in words:
                    words[b] = words[a] + (k,)
                    queue.append(b)
        for q, w in words.items():
            if q == self.identity:
                continue
            runs: list[list[int]] = []
            for k in w:
                if runs and runs[-1][0] == k:
                    runs[-1][1] += 1
                else:
                    runs.append([k, 1])
            names[q] = " ".join(gens[k][0] if e == 1 else f"{gens[k][0]}^{e}" for k, e in runs)
        return [nm if nm is not None else f"#{q}" for q, nm in enumerate(names)]

    def __repr__(self) -> str:
        return f"<FiniteGroup of order {self.order}>"

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def prod(self, elements: Iterable[int]) -> int:
        acc = self.identity
        rows = self._rows
        for q in elements:
            acc = rows[acc][q]
        return acc

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        acc = self.identity
        for _ in range(k):
            acc = self._rows[acc][a]
        return acc

    def conjugate(self, q: int, by: int) -> int:
        """``by^-1 * q * by``."""
        return self.prod((self.inverses[by], q, by))

    def commutator(self, a: int, b: int) -> int:
        """``a b a^-1 b^-1``."""
        return self.prod((a, b, self.inverses[a], self.inverses[b]))

    def element_order(self, q: int) -> int:
        k, acc = 1, q
        while acc != self.identity:
            acc = self._rows[acc][q]
            k += 1
        return k

    def closure(self, subset: Iterable[int]) -> frozenset[int]:
        gens = list(dict.fromkeys(subset))
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for g in gens:
                b = self._rows[a][g]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return frozenset(seen)

    def generates(self, subset: Iterable[int]) -> bool:
        return len(self.closure(subset)) == self.order

    def subgroup_cosets(self, gens: Iterable[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The subgroup ``H`` generated by ``gens`` and a right transversal.

        Right cosets are ``H*q``; each is represented by its lowest element
        index.  Returns ``(sorted elements of H, representatives)``.
        """
        sub = sorted(self.closure(gens))
        covered: set[int] = set()
        reps = []
        for q in range(self.order):
            if q in covered:
                continue
            reps.append(q)
            covered.update(self._rows[h][q] for h in sub)
        return tuple(sub), tuple(reps)

    def cyclic_subgroup(self, q: int) -> tuple[int, ...]:
        out = [self.identity]
        acc = q
        while acc != self.identity:
            out.append(acc)
            acc = self._rows[acc][q]
        return tuple(out)

    def name(self, q: int) -> str:
        return self.element_names[q]

    def parse_element(self, text: str) -> int:
        """Evaluate a word in named generators (``"g h h"``, ``"h^-1"``, ``"1"``).

        A full element name (``"g h^2"``) is also accepted.
        """
        text = text.strip()
        if text in self._name_index:
            return self._name_index[text]
        acc = self.identity
        for token in text.split():
            if token == "1":
                continue
            m = _POWER.match(token)
            name = m.group("name")
            if name not in self.generators:
                raise AlphabetError(f"unknown group generator {name!r}")
            acc = self._rows[acc][self.power(self.generators[name], int(m.group("exp") or 1))]
        return acc


def from_abelian_invariants(
    invariants: Sequence[int], names: Sequence[str] | None = None
) -> FiniteGroup:
    """Direct product of cyclic groups ``Z_{k1} x Z_{k2} x ...``.

    Element ``(e1, e2, ...)`` has mixed-radix index with the last factor
    varying fastest; its name is the normal form ``g^e1 h^e2 ...``.
    """
    invariants = [int(k) for k in invariants]
    if any(k < 2 for k in invariants):
        raise ValueError(f"abelian invariants must be >= 2, got {invariants}")
    names = tuple(names) if names is not None else default_generator_names(len(invariants))
    if len(names) != len(invariants):
        raise ValueError("one generator name per invariant is required")
    tuples = list(product(*(range(k) for k in invariants)))
    index = {e: i for i, e in enumerate(tuples)}
    n = len(tuples)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(tuples):
        for j, b in enumerate(tuples):
            table[i, j] = index[tuple((x + y) % k for x, y, k in zip(a, b, invariants))]
    generators = {}
    for pos, name in enumerate(names):
        e = [0] * len(invariants)
        e[pos] = 1
        generators[name] = index[tuple(e)]
    element_names = []
    for e in tuples:
        parts = [nm if x == 1 else f"{nm}^{x}" for nm, x in zip(names, e) if x]
        element_names.append(" ".join(parts) if parts else "1")
    group = FiniteGroup(table, generators, element_names)
    group.invariants = tuple(invariants)
    return group


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # apply p first, then q
    return tuple(q[i] for i in p)


def from_permutations(
    generators: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    degree: int | None = None,
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Group generated by permutations of ``{0, ..., k-1}``.

    The product ``p*q`` applies ``p`` first.  Elements are enumerated by
    breadth-first closure from the identity, multiplying on the right by
    the generators in the given order.
    """
    perms = [tuple(int(i) for i in p) for p in generators]
    if degree is None:
        degree = len(perms[0]) if perms else 1
    for p in perms:
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise ValueError(f"{list(p)} is not a permutation of range({degree})")
    names = tuple(names) if names is not None else default_generator_names(len(perms))
    if len(names) != len(perms):
        raise ValueError("one name per permutation generator is required")
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        a = queue.popleft()
        for p in perms:
            b = _compose(a, p)
            if b not in index:
                if len(elements) >= max_order:
                    raise SizeLimitError(f"permutation group exceeds order bound {max_order}")
                index[b] = len(elements)
                elements.append(b)
                queue.append(b)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        table[i] = [index[_compose(a, b)] for b in elements]
    group = FiniteGroup(table, {nm: index[p] for nm, p in zip(names, perms)})
    group.permutations = tuple(elements)
    return group
