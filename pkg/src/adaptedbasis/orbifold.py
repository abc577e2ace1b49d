"""Orbifold signatures, generating vectors and the surface-kernel map.

The orbifold group has generators ``a_1, b_1, ..., a_g0, b_g0, x_1, ..., x_t``
(registry order interleaves the ``a``/``b`` pairs) and relations

    R = [a_1, b_1] ... [a_g0, b_g0] x_1 ... x_t = 1,    x_j^{n_j} = 1,

with ``[a, b] = a b a^-1 b^-1``.  A generating vector lists the images of
these generators in a finite group ``G``.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Sequence

from .errors import AlphabetError, InvalidCoverError
from .finite_group import FiniteGroup
from .words import Alphabet, Word


@dataclass(frozen=True)
class OrbifoldSignature:
    quotient_genus: int
    branch_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "branch_orders", tuple(int(k) for k in self.branch_orders))
        if int(self.quotient_genus) != self.quotient_genus or self.quotient_genus < 0:
            raise InvalidCoverError(f"quotient genus must be a non-negative integer, got {self.quotient_genus}")
        for j, k in enumerate(self.branch_orders):
            if k < 2:
                raise InvalidCoverError(f"branch order n_{j + 1} = {k} must be >= 2")

    @property
    def t(self) -> int:
        return len(self.branch_orders)

    @property
    def num_generators(self) -> int:
        return 2 * self.quotient_genus + self.t

    def default_names(self) -> tuple[str, ...]:
        """Sequential letters ``a, b, c, ...`` while they last, else ``a1, b1, x1, ...``."""
        k = self.num_generators
        if k <= 26:
            return tuple(string.ascii_lowercase[:k])
        names = []
        for i in range(self.quotient_genus):
            names += [f"a{i + 1}", f"b{i + 1}"]
        names += [f"x{j + 1}" for j in range(self.t)]
        return tuple(names)

    def __str__(self) -> str:
        return f"({self.quotient_genus}; {', '.join(map(str, self.branch_orders))})"


@dataclass(frozen=True)
class GeneratingVector:
    a: tuple[int, ...] = ()
    b: tuple[int, ...] = ()
    x: tuple[int, ...] = ()

    def __post_init__(self):
        for name in ("a", "b", "x"):
            object.__setattr__(self, name, tuple(int(q) for q in getattr(self, name)))

    def images(self) -> tuple[int, ...]:
        """Images in registry order ``a_1, b_1, a_2, b_2, ..., x_1, ..., x_t``."""
        out = []
        for qa, qb in zip(self.a, self.b):
            out += [qa, qb]
        return tuple(out) + self.x


@dataclass
class ValidationReport:
    """Failed invariants of a candidate cover; empty means valid."""

    issues: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, code: str, message: str) -> None:
        self.issues.append((code, message))

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "invalid:\n" + "\n".join(f"  - [{c}] {m}" for c, m in self.issues)


def riemann_hurwitz_genus(signature: OrbifoldSignature, n: int) -> int:
    """Genus of a degree-``n`` regular branched cover of the given orbifold.

    ``2g = 2n*g0 - 2n + 2 + sum_j (n - n/n_j)``.
    """
    if n < 1:
        raise InvalidCoverError(f"group order must be positive, got {n}")
    for k in signature.branch_orders:
        if n % k:
            raise InvalidCoverError(f"branch order {k} does not divide the group order {n}")
    twice_g = 2 * n * signature.quotient_genus - 2 * n + 2 + sum(n - n // k for k in signature.branch_orders)
    if twice_g % 2:
        raise InvalidCoverError(f"Riemann-Hurwitz gives non-integral genus {twice_g}/2")
    if twice_g < 0:
        raise InvalidCoverError(f"Riemann-Hurwitz gives negative genus {twice_g // 2}")
    return twice_g // 2


def validate_generating_vector(
    group: FiniteGroup, signature: OrbifoldSignature, vector: GeneratingVector
) -> ValidationReport:
    """Check every invariant of the data; never raises on bad input."""
    report = ValidationReport()
    g0, t = signature.quotient_genus, signature.t
    if g0 == 0 and t <= 2:
        report.add("degenerate", f"quotient genus 0 needs at least 3 branch points, got {t}")
    if len(vector.a) != g0 or len(vector.b) != g0:
        report.add("shape", f"expected {g0} a-images and {g0} b-images, got {len(vector.a)} and {len(vector.b)}")
    if len(vector.x) != t:
        report.add("shape", f"expected {t} x-images, got {len(vector.x)}")
    if not report.ok and any(c == "shape" for c, _ in report.issues):
        return report
    for q in vector.images():
        if not 0 <= q < group.order:
            report.add("shape", f"image {q} is not an element of the group")
            return report
    for j, (q, k) in enumerate(zip(vector.x, signature.branch_orders)):
        o = group.element_order(q)
        if o != k:
            report.add("order", f"x_{j + 1} maps to {group.name(q)} of order {o}, expected exactly {k}")
    acc = group.identity
    for qa, qb in zip(vector.a, vector.b):
        acc = group.mul(acc, group.commutator(qa, qb))
    acc = group.mul(acc, group.prod(vector.x))
    if acc != group.identity:
        report.add("product", f"long relation maps to {group.name(acc)}, not the identity")
    if not group.generates(vector.images()):
        report.add("generation", "images do not generate the group")
    if report.ok:
        try:
            riemann_hurwitz_genus(signature, group.order)
        except InvalidCoverError as exc:
            report.add("genus", str(exc))
    return report


class CoverSpec:
    """A validated surface-kernel cover: group, signature and generating vector.

    Construction raises :class:`InvalidCoverError` (carrying the report)
    unless every invariant holds.
    """

    def __init__(
        self,
        group: FiniteGroup,
        signature: OrbifoldSignature,
        vector: GeneratingVector,
        names: Sequence[str] | None = None,
    ):
        report = validate_generating_vector(group, signature, vector)
        if not report.ok:
            raise InvalidCoverError(str(report), report)
        self.group = group
        self.signature = signature
        self.vector = vector
        self.alphabet = Alphabet(names if names is not None else signature.default_names())
        if len(self.alphabet) != signature.num_generators:
            raise InvalidCoverError(
                f"expected {signature.num_generators} generator names, got {len(self.alphabet)}"
            )
        self.images = vector.images()
        self.genus = riemann_hurwitz_genus(signature, group.order)
        g0 = signature.quotient_genus
        letters = []
        for i in range(g0):
            a, b = 2 * i, 2 * i + 1
            letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
        letters += [(2 * g0 + j, 1) for j in range(signature.t)]
        self.long_relator = Word(self.alphabet, letters)
        self.torsion_relators = tuple(
            Word(self.alphabet, [(2 * g0 + j, 1)] * k) for j, k in enumerate(signature.branch_orders)
        )

    @property
    def n(self) -> int:
        return self.group.order

    def is_elliptic(self, gen: int) -> bool:
        """True for the ``x_j`` generators."""
        return gen >= 2 * self.signature.quotient_genus

    def __repr__(self) -> str:
        return f"<CoverSpec {self.signature} over group of order {self.n}, genus {self.genus}>"


def phi_eval(spec: CoverSpec, w: Word) -> int:
    """Image of an orbifold-group word under the surface-kernel map."""
    if w.alphabet != spec.alphabet:
        raise AlphabetError("word is not over the orbifold generator registry")
    G = spec.group
    acc = G.identity
    for i, s in w.letters:
        q = spec.images[i]
        acc = G.mul(acc, q if s == 1 else G.inv(q))
    return acc
