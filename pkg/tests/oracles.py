"""Independent reference implementations and generators used by the tests."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import gcd

import numpy as np

from adaptedbasis.finite_group import FiniteGroup, from_abelian_invariants, from_permutations
from adaptedbasis.orbifold import CoverSpec, GeneratingVector, OrbifoldSignature, riemann_hurwitz_genus
from adaptedbasis.errors import InvalidCoverError


# ------------------------------------------------------------------ SNF


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    # (g, x, y) with a*x + b*y = g; plain division when a | b so the
    # pivot row is left alone and elimination cannot cycle
    if b % a == 0:
        return a, 1, 0
    return _ext_gcd(a, b)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def naive_invariant_factors(m) -> list[int]:
    """Invariant factors by plain diagonalization plus gcd/lcm normalization.

    Works on a list-of-lists copy; pivots on the first non-zero entry and
    clears its row and column with extended-gcd combinations.
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    r0 = 0
    while r0 < min(rows, cols):
        pos = next(((i, j) for i in range(r0, rows) for j in range(r0, cols) if a[i][j]), None)
        if pos is None:
            break
        i, j = pos
        a[r0], a[i] = a[i], a[r0]
        for row in a:
            row[r0], row[j] = row[j], row[r0]
        while True:
            for i in range(r0 + 1, rows):
                if a[i][r0]:
                    g, x, y = _bezout(a[r0][r0], a[i][r0])
                    p, q = a[r0][r0] // g, a[i][r0] // g
                    top = [x * u + y * v for u, v in zip(a[r0], a[i])]
                    bot = [-q * u + p * v for u, v in zip(a[r0], a[i])]
                    a[r0], a[i] = top, bot
            for j in range(r0 + 1, cols):
                if a[r0][j]:
                    g, x, y = _bezout(a[r0][r0], a[r0][j])
                    p, q = a[r0][r0] // g, a[r0][j] // g
                    for row in a:
                        u, v = row[r0], row[j]
                        row[r0], row[j] = x * u + y * v, -q * u + p * v
            if not any(a[i][r0] for i in range(r0 + 1, rows)):
                break
        diag.append(abs(a[r0][r0]))
        r0 += 1
    # normalize to a divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                x, y = diag[i], diag[j]
                g = gcd(x, y)
                l = x * y // g if g else 0
                if (g, l) != (x, y):
                    diag[i], diag[j] = g, l
                    changed = True
    return diag + [0] * (min(rows, cols) - len(diag))


def determinantal_divisors(m) -> list[int]:
    """Invariant factors from gcds of k x k minors (tiny matrices only)."""
    from adaptedbasis.smith import det

    a = np.array(m, dtype=object)
    rows, cols = a.shape
    d = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in combinations(range(rows), k):
            for c in combinations(range(cols), k):
                g = gcd(g, det(a[np.ix_(r, c)]))
        d.append(g)
    out = []
    for k in range(1, len(d)):
        out.append(d[k] // d[k - 1] if d[k - 1] else 0)
    return out


def int_det(m) -> int:
    from adaptedbasis.smith import det

    return det(m)


# ----------------------------------------------------------- groups/specs


def _perm(cycles, n):
    p = list(range(n))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            p[x] = cyc[(i + 1) % len(cyc)]
    return p


def small_groups() -> list[tuple[str, FiniteGroup]]:
    out = []
    for inv in ([2], [3], [4], [5], [6], [7], [8], [9], [10], [12], [2, 2], [2, 4], [2, 6], [3, 3], [2, 2, 2], [4, 4], [2, 8], [2, 10], [2, 2, 4], [3, 6]):
        out.append((f"Z{'xZ'.join(map(str, inv))}", from_abelian_invariants(inv)))
    out.append(("S3", from_permutations([_perm([(0, 1)], 3), _perm([(0, 1, 2)], 3)])))
    out.append(("D4", from_permutations([_perm([(0, 1, 2, 3)], 4), _perm([(0, 2)], 4)])))
    out.append(("D5", from_permutations([_perm([(0, 1, 2, 3, 4)], 5), _perm([(1, 4), (2, 3)], 5)])))
    out.append(("D6", from_permutations([_perm([(0, 1, 2, 3, 4, 5)], 6), _perm([(1, 5), (2, 4)], 6)])))
    out.append(("A4", from_permutations([_perm([(0, 1, 2)], 4), _perm([(0, 1), (2, 3)], 4)])))
    out.append(("S4", from_permutations([_perm([(0, 1)], 4), _perm([(0, 1, 2, 3)], 4)])))
    # quaternion group as permutations of its 8 elements (regular representation)
    q8_i = _perm([(0, 2, 1, 3), (4, 6, 5, 7)], 8)
    q8_j = _perm([(0, 4, 1, 5), (2, 7, 3, 6)], 8)
    out.append(("Q8", from_permutations([q8_i, q8_j])))
    out.append(("S3xZ2", from_permutations([_perm([(0, 1)], 5), _perm([(0, 1, 2)], 5), _perm([(3, 4)], 5)])))
    return out


def random_spec(rng: random.Random, groups, max_genus: int = 20, tries: int = 200):
    """A random valid cover over one of ``groups``, or None."""
    for _ in range(tries):
        name, G = rng.choice(groups)
        g0 = rng.choice([0, 0, 0, 1, 1, 2])
        t = rng.randint(3, 5) if g0 == 0 else rng.randint(0, 3)
        a = [rng.randrange(G.order) for _ in range(g0)]
        b = [rng.randrange(G.order) for _ in range(g0)]
        acc = G.identity
        for qa, qb in zip(a, b):
            acc = G.mul(acc, G.commutator(qa, qb))
        if t == 0:
            if acc != G.identity:
                continue
            x = []
        else:
            x = [rng.randrange(G.order) for _ in range(t - 1)]
            acc = G.mul(acc, G.prod(x))
            x.append(G.inv(acc))
        if any(q == G.identity for q in x):
            continue
        sig = OrbifoldSignature(g0, tuple(G.element_order(q) for q in x))
        try:
            if riemann_hurwitz_genus(sig, G.order) > max_genus:
                continue
            spec = CoverSpec(G, sig, GeneratingVector(a, b, x))
        except InvalidCoverError:
            continue
        spec.label = name
        return spec
    return None


def reversed_bfs_words(spec):
    """Breadth-first transversal trying generators in reverse registry order."""
    G = spec.group
    A = spec.alphabet
    words = {G.identity: A.identity()}
    queue = deque([G.identity])
    while queue:
        q = queue.popleft()
        for y in reversed(range(len(A))):
            r = G.mul(q, spec.images[y])
            if r not in words:
                words[r] = words[q] * A.gen(y)
                queue.append(r)
    return [words[q] for q in range(G.order)]


# ------------------------------------------------------------ corpus

PROPERTY_SEED = 20240611
PROPERTY_COUNT = 220


@dataclass
class CorpusEntry:
    spec: CoverSpec
    runs: list  # one (transversal, trace, action) per transversal choice


@lru_cache(maxsize=None)
def property_corpus(count: int = PROPERTY_COUNT, seed: int = PROPERTY_SEED) -> tuple[CorpusEntry, ...]:
    """Seeded random covers, each analysed with two different transversals."""
    from adaptedbasis.homology import h1_basis, homology_action
    from adaptedbasis.reidemeister_schreier import build_transversal, kernel_presentation
    from adaptedbasis.tietze import simplify

    rng = random.Random(seed)
    groups = small_groups()
    out = []
    while len(out) < count:
        spec = random_spec(rng, groups)
        if spec is None:
            continue
        runs = []
        for T in (build_transversal(spec), build_transversal(spec, reversed_bfs_words(spec))):
            tr = simplify(kernel_presentation(spec, T), spec.genus, spec.n)
            action = homology_action(spec, T, tr, h1_basis(tr.final, spec.genus))
            runs.append((T, tr, action))
        out.append(CorpusEntry(spec, runs))
    return tuple(out)
