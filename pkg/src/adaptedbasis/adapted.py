"""Adapted-basis classification and block reports.

Classification certifies the basis the pipeline produced; it never searches
for a better one.  Each basis element is tested against the four types in
order:

1. its images under ``G`` are ``n`` distinct basis elements;
2. for some ``h`` of order ``m``, ``gamma, h(gamma), ..., h^{m-2}(gamma)``
   are basis elements with ``h^{m-1}(gamma) = -(gamma + ... + h^{m-2}(gamma))``,
   and the same holds for a representative of every coset ``q<h>``;
3. ``gamma = h^r(gamma_0)`` for a type-2 element ``gamma_0``;
4. every image under ``G`` is a basis element up to sign.

Images are read off the columns of ``M_q``.  Block reports are written in
the row convention (row ``i`` of a block lists the image of basis element
``i``), so the companion block of an order-3 element reads
``[[0, 1], [-1, -1]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ClassificationRequiredError
from .finite_group import FiniteGroup
from .homology import HomologyAction

UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class ElementClass:
    """Type tag of one basis element, with the data that certifies it."""

    type: int | str
    orbit: int | None = None
    witness: dict = field(default_factory=dict)
    failures: tuple[str, ...] = ()

    @property
    def reason(self) -> str | None:
        """The first failed test, for unclassified elements."""
        return self.failures[0] if self.failures else None

    def to_json(self, names, G: FiniteGroup) -> dict:
        out = {"type": self.type, "orbit": self.orbit, "witness": _witness_json(self.witness, names, G)}
        if self.failures:
            out["failed_tests"] = list(self.failures)
        return out


@dataclass(frozen=True)
class AdaptedClassification:
    elements: tuple[ElementClass, ...]
    ordering: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]  # blocks of the ordering, by basis index
    diagnostic: str | None = None

    @property
    def complete(self) -> bool:
        return all(e.type != UNCLASSIFIED for e in self.elements)

    def counts(self) -> dict:
        out: dict = {}
        for e in self.elements:
            out[e.type] = out.get(e.type, 0) + 1
        return out

    def unclassified(self) -> list[int]:
        return [i for i, e in enumerate(self.elements) if e.type == UNCLASSIFIED]


def restrict(action: HomologyAction, G: FiniteGroup, gens) -> tuple[FiniteGroup, HomologyAction]:
    """The action of the subgroup generated by ``gens``, as a group of its own.

    Subgroup elements keep their names and are indexed in increasing order
    of their index in ``G``.
    """
    elements = sorted(G.closure(gens))
    local = {q: i for i, q in enumerate(elements)}
    table = [[local[G.mul(a, b)] for b in elements] for a in elements]
    names = [G.name(q) for q in elements]
    H = FiniteGroup(table, {G.name(q): local[q] for q in dict.fromkeys(gens)}, names)
    H.embedding = tuple(elements)
    mats = {local[q]: action[q] for q in elements}
    return H, HomologyAction(mats, action.basis, H.order)


def sum_rule(action: HomologyAction) -> bool:
    """True when the matrices of all group elements add up to zero."""
    total = sum(action.matrices.values())
    return not any(np.asarray(total).flat)


def _unit(col) -> tuple[int, int] | None:
    """``(index, sign)`` if ``col`` is plus or minus a basis vector."""
    nz = [i for i, x in enumerate(col) if x]
    if len(nz) == 1 and col[nz[0]] in (1, -1):
        return nz[0], int(col[nz[0]])
    return None


class _Images:
    def __init__(self, action: HomologyAction, G: FiniteGroup):
        self.action = action
        self.G = G

    def of_basis(self, q: int, i: int) -> np.ndarray:
        return self.action[q][:, i]


def classify(action: HomologyAction, G: FiniteGroup) -> AdaptedClassification:
    k = action.rank
    if not action.basis.from_generators:
        msg = "basis is not made of surviving generators (surface form not reached)"
        elems = tuple(ElementClass(UNCLASSIFIED, failures=(msg,)) for _ in range(k))
        return AdaptedClassification(elems, tuple(range(k)), tuple((i,) for i in range(k)), msg)
    im = _Images(action, G)
    tags: list[ElementClass | None] = [None] * k
    failures: dict[int, list[str]] = {i: [] for i in range(k)}
    structures: list[tuple[str, list[list[int]]]] = []
    orbit = 0

    for i in range(k):
        if tags[i] is not None:
            continue
        found = _type1(im, i, tags)
        if isinstance(found, str):
            failures[i].append(f"type 1: {found}")
        else:
            for q, j in found:
                tags[j] = ElementClass(1, orbit, {"head": i, "element": q})
            structures.append(("1", [[j for _, j in found]]))
            orbit += 1
            continue
        found = _type2(im, i, tags)
        if isinstance(found, str):
            failures[i].append(f"type 2: {found}")
            continue
        h, m, cosets = found
        blocks = []
        for rep, members in cosets:
            head = members[0]
            hc = G.mul(G.mul(rep, h), G.inv(rep))
            tags[head] = ElementClass(
                2, orbit, {"h": hc, "order": m, "exponents": list(range(m - 1)), "coset": rep, "base": i}
            )
            for r, j in enumerate(members[1:], start=1):
                tags[j] = ElementClass(3, orbit, {"gamma0": head, "r": r, "h": hc})
            blocks.append(members)
        structures.append(("2", blocks))
        orbit += 1

    # type 3 elements were tagged with their heads; whatever is left is
    # either type 4 or unclassified
    fours = []
    for i in range(k):
        if tags[i] is not None:
            continue
        failures[i].append("type 3: not h^r of a type-2 element")
        found = _type4(im, i)
        if isinstance(found, str):
            failures[i].append(f"type 4: {found}")
            tags[i] = ElementClass(UNCLASSIFIED, None, {}, tuple(failures[i]))
        else:
            tags[i] = ElementClass(4, None, found)
            fours.append(i)
    # type-4 orbits: elements related by signed images share an id
    for i in fours:
        if tags[i].orbit is None:
            for q in range(G.order):
                j = tags[i].witness["images"][q][0]
                if tags[j].type == 4 and tags[j].orbit is None:
                    tags[j] = ElementClass(4, orbit, tags[j].witness)
            orbit += 1

    groups: list[tuple[int, ...]] = []
    for _, blocks in structures:
        groups += [tuple(b) for b in blocks]
    groups += [(i,) for i in fours]
    groups += [(i,) for i in range(k) if tags[i].type == UNCLASSIFIED]
    ordering = tuple(i for g in groups for i in g)
    bad = [i for i in range(k) if tags[i].type == UNCLASSIFIED]
    diagnostic = None
    if bad:
        names = action.basis.names
        diagnostic = "; ".join(f"{names[i]}: {tags[i].reason}" for i in bad)
    return AdaptedClassification(tuple(tags), ordering, tuple(groups), diagnostic)


def _type1(im: _Images, i: int, tags):
    G = im.G
    seen = []
    for q in range(G.order):
        u = _unit(im.of_basis(q, i))
        if u is None or u[1] != 1:
            return f"{G.name(q)} does not map it to a basis element"
        if tags[u[0]] is not None:
            return f"image under {G.name(q)} is already classified"
        seen.append((q, u[0]))
    if len({j for _, j in seen}) != G.order:
        return "orbit is shorter than the group order"
    return seen


def _type2(im: _Images, i: int, tags):
    G = im.G
    reasons = []
    for h in range(G.order):
        m = G.element_order(h)
        if m < 2:
            continue
        powers = [G.identity]
        for _ in range(m - 1):
            powers.append(G.mul(powers[-1], h))
        # the chain gamma, h gamma, ..., h^{m-2} gamma must sit in the basis
        chain = _chain(im, powers, i, tags)
        if chain is None:
            continue
        last = im.of_basis(powers[m - 1], i)
        total = np.zeros(im.action.rank, dtype=object)
        for j in chain:
            total[j] += 1
        if any(last + total):
            reasons.append(f"{G.name(h)}^{m - 1} relation fails")
            continue
        cosets = [(G.identity, chain)]
        used = set(chain)
        ok = True
        sub = set(powers)
        done = set(sub)
        for c in range(G.order):
            if c in done:
                continue
            coset = [G.mul(c, p) for p in powers]
            done.update(coset)
            best = None
            for rot in range(m):
                rep = coset[rot]
                members = _chain(im, [G.mul(rep, p) for p in powers], i, tags)
                if members is not None and not used.intersection(members):
                    best = (rep, members)
                    break
            if best is None:
                ok = False
                reasons.append(f"coset {G.name(c)}<{G.name(h)}> has no translate chain in the basis")
                break
            cosets.append(best)
            used.update(best[1])
        if ok:
            return h, m, cosets
    return reasons[0] if reasons else "no element h gives a chain of basis elements"


def _chain(im: _Images, elements, i: int, tags):
    """Basis indices of ``q(gamma_i)`` for the first ``m-1`` elements, or None."""
    out = []
    for q in elements[:-1]:
        u = _unit(im.of_basis(q, i))
        if u is None or u[1] != 1 or tags[u[0]] is not None or u[0] in out:
            return None
        out.append(u[0])
    return out


def _type4(im: _Images, i: int):
    G = im.G
    images = {}
    for q in range(G.order):
        u = _unit(im.of_basis(q, i))
        if u is None:
            return f"image under {G.name(q)} is not a basis element up to sign"
        images[q] = u
    G0 = sorted(q for q, (j, s) in images.items() if j == i and s == 1)
    if G.closure(G0) != frozenset(G0):
        return "stabilizer is not a subgroup"
    signs = {q: s for q, (_, s) in images.items()}
    return {"G0": G0, "signs": signs, "images": images}


def _witness_json(w: dict, names, G: FiniteGroup) -> dict:
    out = {}
    for key, val in w.items():
        if key in ("h", "coset", "element"):
            out[key] = G.name(val)
        elif key in ("head", "gamma0", "base"):
            out[key] = names[val]
        elif key == "G0":
            out[key] = [G.name(q) for q in val]
        elif key == "signs":
            out[key] = {G.name(q): s for q, s in sorted(val.items())}
        elif key == "images":
            out[key] = {G.name(q): ("-" if s < 0 else "") + names[j] for q, (j, s) in sorted(val.items())}
        else:
            out[key] = val
    return out


# ---------------------------------------------------------------- blocks

TORSION_COMPANION = "torsion-companion"
PERMUTATION = "permutation"
SIGNED_PERMUTATION = "signed-permutation"
MIXED = "mixed"


def companion_block(size: int) -> np.ndarray:
    """Ones on the super-diagonal, last row all ``-1``."""
    out = np.zeros((size, size), dtype=object)
    for r in range(size - 1):
        out[r, r + 1] = 1
    out[size - 1, :] = -1
    return out


@dataclass(frozen=True)
class Block:
    start: int
    kind: str
    matrix: np.ndarray  # row convention

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class BlockReport:
    element: int
    ordering: tuple[int, ...]
    blocks: tuple[Block, ...]

    def assemble(self) -> np.ndarray:
        """Block diagonal matrix in the reordered basis, column convention."""
        n = sum(b.size for b in self.blocks)
        out = np.zeros((n, n), dtype=object)
        for b in self.blocks:
            s = b.start
            out[s : s + b.size, s : s + b.size] = b.matrix
        return out.T


def _kind(block: np.ndarray) -> str:
    k = block.shape[0]
    # a 1x1 [-1] is also -I_1; call it a signed permutation
    if k > 1 and np.array_equal(block, companion_block(k)):
        return TORSION_COMPANION
    entries = set(block.flat)
    rows_ok = all(sum(1 for x in row if x) == 1 for row in block)
    cols_ok = all(sum(1 for x in block[:, j] if x) == 1 for j in range(k))
    if rows_ok and cols_ok and entries <= {0, 1}:
        return PERMUTATION
    if rows_ok and cols_ok and entries <= {0, 1, -1}:
        return SIGNED_PERMUTATION
    return MIXED


def _is_identity(block: np.ndarray) -> bool:
    return np.array_equal(block, np.eye(block.shape[0], dtype=int))


def block_report(action: HomologyAction, cls: AdaptedClassification, q: int) -> BlockReport:
    if not cls.complete:
        raise ClassificationRequiredError(
            f"{len(cls.unclassified())} basis elements are unclassified: {cls.diagnostic}"
        )
    order = list(cls.ordering)
    M = action[q][np.ix_(order, order)].T  # row convention
    k = len(order)
    # start from the classification groups, merge any that M couples
    bounds = []
    p = 0
    for grp in cls.groups:
        bounds.append((p, p + len(grp)))
        p += len(grp)
    parent = list(range(len(bounds)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = [0] * k
    for gi, (s, e) in enumerate(bounds):
        for r in range(s, e):
            owner[r] = gi
    for r in range(k):
        for c in range(k):
            if M[r, c] and owner[r] != owner[c]:
                a, b = sorted((find(owner[r]), find(owner[c])))
                parent[b] = a
    # merged groups must be contiguous: absorb everything in between
    changed = True
    while changed:
        changed = False
        spans: dict[int, list[int]] = {}
        for gi in range(len(bounds)):
            spans.setdefault(find(gi), []).append(gi)
        for root, members in spans.items():
            lo, hi = min(members), max(members)
            for gi in range(lo, hi + 1):
                if find(gi) != root:
                    a, b = sorted((find(gi), root))
                    parent[b] = a
                    changed = True
    blocks = []
    gi = 0
    while gi < len(bounds):
        root = find(gi)
        end = gi
        while end + 1 < len(bounds) and find(end + 1) == root:
            end += 1
        s, e = bounds[gi][0], bounds[end][1]
        sub = M[s:e, s:e].copy()
        if _is_identity(sub) and blocks and _is_identity(blocks[-1].matrix):
            # runs of fixed elements form one identity block
            s = blocks.pop().start
            sub = M[s:e, s:e].copy()
        blocks.append(Block(s, _kind(sub), sub))
        gi = end + 1
    report = BlockReport(q, tuple(order), tuple(blocks))
    if not np.array_equal(report.assemble(), action[q][np.ix_(order, order)]):
        raise AssertionError("block decomposition does not reproduce the matrix")
    return report
