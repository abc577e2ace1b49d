"""Tietze simplification of kernel presentations.

The simplifier repeatedly

1. drops relators that have become empty,
2. eliminates a generator ``s`` that occurs exactly once in some relator
   ``r``: ``r`` is solved for ``s`` and the solution substituted everywhere
   else, then ``s`` and ``r`` are removed, and
3. when no such pair is left, drops a relator that repeats another one up
   to rotation and inversion (the torsion relators come in conjugate
   copies, one per coset).

Eligible ``(s, r)`` pairs are ranked by

* free eliminations first (``s`` occurs nowhere else),
* then generator type: Schreier generators of elliptic ``x_j`` before those
  of ``a_i``/``b_i``, and among elliptic types the ones with fewest
  non-trivial Schreier generators (the types the transversal runs along),
* then the substitution growth ``(occurrences of s elsewhere) * (len(r) - 1)``,
* then the lowest generator and relator index.

On a surface-kernel presentation each elimination merges two lifted faces,
so the process ends with a single relator of length ``4g``.

Relators are kept freely and cyclically reduced; they are never rotated or
inverted implicitly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .errors import BudgetError, TietzeError
from .reidemeister_schreier import KernelPresentation
from .words import Letter, Word, cyclic_core

ELIMINATE = "eliminate-generator"
REMOVE_TRIVIAL = "remove-trivial-relator"
REMOVE_DUPLICATE = "remove-duplicate-relator"

BUDGET_FACTOR = 64


@dataclass(frozen=True)
class TietzeStep:
    kind: str
    relator: int
    generator: int | None = None
    replacement: Word | None = None
    duplicate_of: int | None = None

    def describe(self, names) -> str:
        if self.kind == ELIMINATE:
            return f"eliminate {names[self.generator]} := {self.replacement} using relator #{self.relator}"
        if self.kind == REMOVE_DUPLICATE:
            return f"remove relator #{self.relator}, a cyclic conjugate of #{self.duplicate_of} or its inverse"
        return f"remove empty relator #{self.relator}"


def _reduce(letters) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for i, s in letters:
        if out and out[-1][0] == i and out[-1][1] == -s:
            out.pop()
        else:
            out.append((i, s))
    return tuple(out)


def _inverse(letters) -> tuple[Letter, ...]:
    return tuple((i, -s) for i, s in reversed(letters))


def _solve(relator: tuple[Letter, ...], s: int) -> tuple[Letter, ...]:
    """Solve ``u s^e v = 1`` for ``s``."""
    positions = [k for k, (i, _) in enumerate(relator) if i == s]
    if len(positions) != 1:
        raise TietzeError(f"generator occurs {len(positions)} times in the relator, expected exactly once")
    k = positions[0]
    e = relator[k][1]
    vu = _reduce(relator[k + 1 :] + relator[:k])
    return vu if e == -1 else _inverse(vu)


def _substitute(relator: tuple[Letter, ...], s: int, fwd, bwd) -> tuple[Letter, ...]:
    if not any(i == s for i, _ in relator):
        return relator
    out: list[Letter] = []
    for letter in relator:
        if letter[0] == s:
            out.extend(fwd if letter[1] == 1 else bwd)
        else:
            out.append(letter)
    return cyclic_core(_reduce(out))


def eliminate_generator(p: KernelPresentation, s: int, r: int) -> KernelPresentation:
    """Solve relator ``r`` for generator ``s`` and substitute into the rest.

    ``s`` must occur exactly once (with either sign) in ``p.relators[r]``.
    Both ``s`` and relator ``r`` are removed.
    """
    if s not in p.generators:
        raise TietzeError(f"{p.alphabet.names[s]} is not a generator of the presentation")
    rel = p.relators[r].letters
    fwd = _solve(rel, s)
    bwd = _inverse(fwd)
    relators = []
    labels = []
    for k, w in enumerate(p.relators):
        if k == r:
            continue
        relators.append(Word._trusted(p.alphabet, _substitute(w.letters, s, fwd, bwd)))
        if p.labels is not None:
            labels.append(p.labels[k])
    return KernelPresentation(
        p.alphabet,
        tuple(relators),
        tuple(i for i in p.generators if i != s),
        p.genus,
        p.schreier,
        tuple(labels) if p.labels is not None else None,
    )


def cyclic_key(letters) -> tuple[Letter, ...]:
    """Least rotation of a cyclic word or its inverse; equal keys mean the
    relators are conjugate up to inversion."""
    letters = tuple(letters)
    if not letters:
        return ()
    options = []
    for w in (letters, _inverse(letters)):
        options += [w[i:] + w[:i] for i in range(len(w))]
    return min(options)


def remove_relator(p: KernelPresentation, r: int, duplicate_of: int | None = None) -> KernelPresentation:
    """Drop relator ``r``; it must be empty or match ``duplicate_of`` up to
    rotation and inversion (indices refer to ``p``)."""
    if duplicate_of is None:
        if p.relators[r]:
            raise TietzeError(f"relator #{r} is not trivial")
    elif duplicate_of == r or cyclic_key(p.relators[r].letters) != cyclic_key(p.relators[duplicate_of].letters):
        raise TietzeError(f"relator #{r} is not a cyclic conjugate of #{duplicate_of}")
    keep = [k for k in range(len(p.relators)) if k != r]
    return KernelPresentation(
        p.alphabet,
        tuple(p.relators[k] for k in keep),
        p.generators,
        p.genus,
        p.schreier,
        tuple(p.labels[k] for k in keep) if p.labels is not None else None,
    )


def apply_step(p: KernelPresentation, step: TietzeStep) -> KernelPresentation:
    if step.kind == ELIMINATE:
        return eliminate_generator(p, step.generator, step.relator)
    if step.kind == REMOVE_TRIVIAL:
        return remove_relator(p, step.relator)
    if step.kind == REMOVE_DUPLICATE:
        return remove_relator(p, step.relator, step.duplicate_of)
    raise TietzeError(f"unknown step kind {step.kind!r}")


def is_canonical_surface_relator(p: KernelPresentation, g: int) -> bool:
    """One relator of length ``4g`` on ``2g`` generators, each once per sign.

    For ``g == 0`` the canonical form is the empty presentation.
    """
    if g == 0:
        return not p.generators and not any(p.relators)
    if len(p.relators) != 1 or len(p.generators) != 2 * g:
        return False
    rel = p.relators[0].letters
    if len(rel) != 4 * g:
        return False
    counts = Counter(rel)
    return all(counts[(i, 1)] == 1 and counts[(i, -1)] == 1 for i in p.generators)


@dataclass
class SimplificationTrace:
    initial: KernelPresentation
    steps: tuple[TietzeStep, ...]
    final: KernelPresentation
    partial: bool
    canonical: bool = field(default=False)

    def replay(self) -> KernelPresentation:
        p = self.initial
        for step in self.steps:
            p = apply_step(p, step)
        return p

    @cached_property
    def eliminated(self) -> dict[int, Word]:
        """Every eliminated generator as a word in the surviving generators."""
        out: dict[int, tuple[Letter, ...]] = {}
        for step in reversed(self.steps):
            if step.kind != ELIMINATE:
                continue
            letters: list[Letter] = []
            for i, sgn in step.replacement.letters:
                if i in out:
                    letters.extend(out[i] if sgn == 1 else _inverse(out[i]))
                else:
                    letters.append((i, sgn))
            out[step.generator] = _reduce(letters)
        alphabet = self.final.alphabet
        return {i: Word._trusted(alphabet, w) for i, w in sorted(out.items())}

    @cached_property
    def eliminated_vectors(self) -> dict[int, dict[int, int]]:
        """Abelianized version of :attr:`eliminated` (generator -> exponent sums)."""
        out: dict[int, Counter] = {}
        for step in reversed(self.steps):
            if step.kind != ELIMINATE:
                continue
            vec: Counter = Counter()
            for i, sgn in step.replacement.letters:
                if i in out:
                    for j, c in out[i].items():
                        vec[j] += sgn * c
                else:
                    vec[i] += sgn
            out[step.generator] = Counter({j: c for j, c in vec.items() if c})
        return {i: dict(v) for i, v in out.items()}

    def describe(self) -> list[str]:
        names = self.initial.alphabet.names
        return [f"{k + 1}. {step.describe(names)}" for k, step in enumerate(self.steps)]


def simplify(
    p: KernelPresentation, g: int, order: int | None = None, budget: int | None = None
) -> SimplificationTrace:
    """Drive ``p`` towards a single surface relator of length ``4g``.

    ``budget`` caps the length of any relator; it defaults to ``64 * g * n``
    with ``n`` the group order (the relator count when ``order`` is unknown).
    Exceeding it raises :class:`BudgetError` carrying the trace so far.
    """
    if budget is None:
        budget = BUDGET_FACTOR * max(g, 1) * (order or max(len(p.relators), 1))
    rank = _type_rank(p)

    relators: list[tuple[Letter, ...]] = [w.letters for w in p.relators]
    counts: list[Counter] = [Counter(i for i, _ in r) for r in relators]
    total: Counter = Counter()
    for c in counts:
        total.update(c)
    steps: list[TietzeStep] = []
    generators = list(p.generators)

    while True:
        for k in range(len(relators) - 1, -1, -1):
            if not relators[k]:
                del relators[k]
                del counts[k]
                steps.append(TietzeStep(REMOVE_TRIVIAL, k))
        best = None
        for k, (rel, c) in enumerate(zip(relators, counts)):
            m = len(rel) - 1
            for s, occ in c.items():
                if occ != 1:
                    continue
                growth = (total[s] - 1) * m
                key = (growth > 0, rank.get(s, (1, 0)), growth, s, k)
                if best is None or key < best:
                    best = key
        if best is None:
            dup = _find_duplicate(relators)
            if dup is None:
                break
            k, j = dup
            steps.append(TietzeStep(REMOVE_DUPLICATE, k, duplicate_of=j))
            total.subtract(counts[k])
            del relators[k]
            del counts[k]
            continue
        s, k = best[-2:]
        fwd = _solve(relators[k], s)
        bwd = _inverse(fwd)
        steps.append(TietzeStep(ELIMINATE, k, s, Word._trusted(p.alphabet, fwd)))
        total.subtract(counts[k])
        del relators[k]
        del counts[k]
        generators.remove(s)
        for j, rel in enumerate(relators):
            if s not in counts[j]:
                continue
            new = _substitute(rel, s, fwd, bwd)
            if len(new) > budget:
                done = SimplificationTrace(p, tuple(steps[:-1]), p, True)
                done.final = done.replay()
                raise BudgetError(f"relator length {len(new)} exceeds budget {budget}", done)
            total.subtract(counts[j])
            relators[j] = new
            counts[j] = Counter(i for i, _ in new)
            total.update(counts[j])
        del total[s]

    final = _rebuild(p, relators, generators, steps)
    canonical = is_canonical_surface_relator(final, g)
    return SimplificationTrace(p, tuple(steps), final, not canonical, canonical)


def _find_duplicate(relators) -> tuple[int, int] | None:
    seen: dict[tuple, int] = {}
    for k, rel in enumerate(relators):
        key = cyclic_key(rel)
        if key in seen:
            return k, seen[key]
        seen[key] = k
    return None


def _type_rank(p: KernelPresentation) -> dict[int, tuple[int, int]]:
    # Elliptic types first; among them the ones the transversal runs along
    # (fewest non-trivial Schreier generators) go first.
    if p.schreier is None:
        return {}
    live = Counter(sg.gen for sg in p.schreier)
    return {
        i: (0, live[sg.gen]) if sg.elliptic else (1, 0)
        for i, sg in enumerate(p.schreier)
    }


def _rebuild(p, relators, generators, steps) -> KernelPresentation:
    # labels follow their relators through deletions
    labels = list(p.labels) if p.labels is not None else None
    if labels is not None:
        for step in steps:
            del labels[step.relator]
    return KernelPresentation(
        p.alphabet,
        tuple(Word._trusted(p.alphabet, r) for r in relators),
        tuple(generators),
        p.genus,
        p.schreier,
        tuple(labels) if labels is not None else None,
    )
