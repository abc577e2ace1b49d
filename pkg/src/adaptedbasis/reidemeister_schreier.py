"""Schreier transversals, Schreier generators and the rewriting process.

Cosets of the kernel are identified with elements of ``G`` through the
surface-kernel map, so coset lookup is a table product rather than a word
comparison.  For a transversal word ``K`` and orbifold generator ``y`` the
Schreier generator is ``S_{K,y} = K y (rep of Ky)^-1``; the rewriting
process ``tau`` turns a kernel word into a word in the non-trivial ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import AlphabetError, NotInKernelError, TransversalError
from .orbifold import CoverSpec, phi_eval
from .words import Alphabet, Word, compact_name, cyclic_reduce, format_word


@dataclass(frozen=True)
class SchreierGenerator:
    coset: int
    gen: int
    word_value: Word
    name: str
    elliptic: bool = False

    @property
    def trivial(self) -> bool:
        return not self.word_value


class Transversal:
    """One representative word per element of ``G``, closed under prefixes."""

    def __init__(self, spec: CoverSpec, reps: Sequence[Word]):
        self.spec = spec
        self.reps = tuple(reps)
        self._check()
        self._build_table()

    def _check(self) -> None:
        G = self.spec.group
        if len(self.reps) != G.order:
            raise TransversalError(f"need {G.order} representatives, got {len(self.reps)}")
        for q, w in enumerate(self.reps):
            if w.alphabet != self.spec.alphabet:
                raise TransversalError("representatives must be words over the orbifold registry")
            if phi_eval(self.spec, w) != q:
                raise TransversalError(f"representative {w} does not map to {G.name(q)}")
        if self.reps[G.identity]:
            raise TransversalError("the identity coset must be represented by the empty word")
        for w in self.reps:
            for k in range(len(w)):
                prefix = Word._trusted(w.alphabet, w.letters[:k])
                if self.reps[phi_eval(self.spec, prefix)] != prefix:
                    raise TransversalError(f"prefix {prefix} of {w} is not a representative")

    def _build_table(self) -> None:
        spec, G = self.spec, self.spec.group
        names = spec.alphabet.names
        table = []
        index: dict[tuple[int, int], int] = {}
        kernel_names = []
        for y in range(len(spec.alphabet)):
            for K in range(G.order):
                target = G.mul(K, spec.images[y])
                value = self.reps[K] * spec.alphabet.gen(y) * self.reps[target].inverse()
                name = f"S_{{{compact_name(names, self.reps[K].letters)},{names[y]}}}"
                sg = SchreierGenerator(K, y, value, name, spec.is_elliptic(y))
                table.append(sg)
                if not sg.trivial:
                    index[(K, y)] = len(kernel_names)
                    kernel_names.append(name)
        self.table = tuple(table)
        self.kernel_index = index
        self.kernel_alphabet = Alphabet(kernel_names)
        self.kernel_generators = tuple(sg for sg in table if not sg.trivial)

    def rep_for(self, w: Word) -> Word:
        return self.reps[phi_eval(self.spec, w)]

    def __iter__(self):
        return iter(self.reps)

    def describe(self) -> list[str]:
        G = self.spec.group
        return [f"{G.name(q)}: {self.reps[q]}" for q in range(G.order)]


def build_transversal(spec: CoverSpec, override: Sequence[Word] | None = None) -> Transversal:
    """Default: breadth-first search of the Cayley graph of ``G``.

    Orbifold generators are tried in registry order and the first word
    reaching each new element is kept.  An ``override`` lists words in any
    order; each must have a distinct image and prefixes must be reps.
    """
    G = spec.group
    if override is not None:
        reps: list[Word | None] = [None] * G.order
        for w in override:
            q = phi_eval(spec, w)
            if reps[q] is not None:
                raise TransversalError(f"{reps[q]} and {w} represent the same coset {G.name(q)}")
            reps[q] = w
        missing = [G.name(q) for q, w in enumerate(reps) if w is None]
        if missing:
            raise TransversalError(f"no representative for {', '.join(missing)}")
        return Transversal(spec, reps)
    words: dict[int, Word] = {G.identity: spec.alphabet.identity()}
    queue = deque([G.identity])
    while queue:
        q = queue.popleft()
        for y in range(len(spec.alphabet)):
            r = G.mul(q, spec.images[y])
            if r not in words:
                words[r] = words[q] * spec.alphabet.gen(y)
                queue.append(r)
    return Transversal(spec, [words[q] for q in range(G.order)])


def schreier_generator(T: Transversal, K: int, y: int) -> SchreierGenerator:
    return T.table[y * T.spec.group.order + K]


def rewrite_tau(T: Transversal, w: Word) -> Word:
    """Rewrite a kernel word as a word in the non-trivial Schreier generators."""
    spec = T.spec
    if w.alphabet != spec.alphabet:
        raise AlphabetError("tau expects a word over the orbifold registry")
    G = spec.group
    cur = G.identity
    out = []
    index = T.kernel_index
    for y, s in w.letters:
        if s == 1:
            k = index.get((cur, y))
            cur = G.mul(cur, spec.images[y])
        else:
            cur = G.mul(cur, G.inv(spec.images[y]))
            k = index.get((cur, y))
        if k is not None:
            out.append((k, s))
    if cur != G.identity:
        raise NotInKernelError(f"{w} maps to {G.name(cur)}, not the identity")
    return Word(T.kernel_alphabet, out)


@dataclass(frozen=True)
class KernelPresentation:
    """Generators (a subset of an alphabet) and relators.

    ``schreier`` aligns with ``alphabet`` when the presentation came from a
    transversal; ``generators`` defaults to the whole alphabet.
    """

    alphabet: Alphabet
    relators: tuple[Word, ...]
    generators: tuple[int, ...] | None = None
    genus: int | None = None
    schreier: tuple[SchreierGenerator, ...] | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        if self.generators is None:
            object.__setattr__(self, "generators", tuple(range(len(self.alphabet))))
        else:
            object.__setattr__(self, "generators", tuple(self.generators))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.relators):
                raise ValueError("one label per relator")
        for r in self.relators:
            if r.alphabet != self.alphabet:
                raise AlphabetError("relator over a foreign alphabet")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def generator_names(self) -> list[str]:
        return [self.alphabet.names[i] for i in self.generators]

    def describe(self) -> str:
        gens = ", ".join(self.generator_names())
        rels = "; ".join(format_word(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def expand(self, w: Word) -> Word:
        """Embed a word over this alphabet into the orbifold group."""
        if self.schreier is None:
            raise ValueError("presentation carries no Schreier data")
        out = None
        for i, s in w.letters:
            piece = self.schreier[i].word_value
            piece = piece if s == 1 else piece.inverse()
            out = piece if out is None else out * piece
        return out if out is not None else self.schreier[0].word_value.alphabet.identity()


def kernel_presentation(spec: CoverSpec, T: Transversal) -> KernelPresentation:
    """Presentation of the kernel on the non-trivial Schreier generators.

    Relators are ``tau(K R K^-1)`` for every representative ``K`` (by element
    index), then ``tau(K x_j^{n_j} K^-1)`` for each ``j`` and ``K``; each is
    cyclically reduced and empty ones are dropped.
    """
    G = spec.group
    relators, labels = [], []
    kinds = [("R", spec.long_relator)] + [
        (f"{spec.alphabet.names[2 * spec.signature.quotient_genus + j]}^{k}", w)
        for j, (k, w) in enumerate(zip(spec.signature.branch_orders, spec.torsion_relators))
    ]
    for label, base in kinds:
        for K in range(G.order):
            rep = T.reps[K]
            core, _ = cyclic_reduce(rewrite_tau(T, rep * base * rep.inverse()))
            if core:
                relators.append(core)
                labels.append(f"K={compact_name(spec.alphabet.names, rep.letters)}: {label}")
    schreier = tuple(T.kernel_generators)
    return KernelPresentation(
        T.kernel_alphabet, tuple(relators), None, spec.genus, schreier, tuple(labels)
    )
