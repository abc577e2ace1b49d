"""First homology of the covering surface and the induced action of ``G``.

Conventions: an element ``q`` acts on the kernel by ``w -> K_q w K_q^-1``
with ``K_q`` its transversal word, and ``M_q`` acts on column vectors
(column ``j`` holds the image of basis element ``j``).  This makes
``q -> M_q`` a homomorphism, ``M_{q1 q2} = M_{q1} M_{q2}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IntegrityError
from .orbifold import CoverSpec
from .reidemeister_schreier import KernelPresentation, Transversal, rewrite_tau
from .smith import diagonal, identity, smith_normal_form
from .tietze import SimplificationTrace


@dataclass(frozen=True)
class RelationMatrix:
    """Exponent sums: one row per relator, one column per generator."""

    matrix: np.ndarray
    generators: tuple[int, ...]


def abelianize(p: KernelPresentation) -> RelationMatrix:
    col = {s: j for j, s in enumerate(p.generators)}
    m = np.zeros((len(p.relators), len(p.generators)), dtype=object)
    for i, r in enumerate(p.relators):
        for s, sign in r.letters:
            m[i, col[s]] += sign
    return RelationMatrix(m, p.generators)


def abelian_invariants(p: KernelPresentation) -> tuple[int, tuple[int, ...]]:
    """``(free rank, non-trivial invariant factors)`` of the abelianization."""
    rel = abelianize(p).matrix
    k = rel.shape[1]
    if rel.shape[0] == 0:
        return k, ()
    _, D, _ = smith_normal_form(rel)
    d = [x for x in diagonal(D) if x]
    return k - len(d), tuple(x for x in d if x != 1)


@dataclass(frozen=True)
class HomologyBasis:
    """A basis of ``H1 = Z^{2g}`` in terms of the presentation's generators.

    ``basis_expressions[i]`` writes basis element ``i`` as an integer
    combination of generators; ``generator_images[j]`` writes generator ``j``
    in the basis.  Their product is the identity.
    """

    rank: int
    generators: tuple[int, ...]
    basis_expressions: np.ndarray  # rank x k
    generator_images: np.ndarray  # k x rank
    names: tuple[str, ...]
    from_generators: bool = False


def h1_basis(p: KernelPresentation, g: int) -> HomologyBasis:
    """Smith-normal-form basis of ``H1``; rank ``2g`` and no torsion required."""
    rel = abelianize(p).matrix
    k = len(p.generators)
    if rel.shape[0] == 0 or not any(rel.flat):
        V, d = identity(k), []
    else:
        _, D, V = smith_normal_form(rel)
        d = [x for x in diagonal(D) if x]
    torsion = [x for x in d if x != 1]
    rank = k - len(d)
    if torsion:
        raise IntegrityError(f"H1 has torsion {torsion}")
    if rank != 2 * g:
        raise IntegrityError(f"H1 has rank {rank}, expected 2g = {2 * g}")
    r = len(d)
    Vinv = _unimodular_inverse(V)
    expressions = Vinv[r:, :]
    images = V[:, r:]
    plain = not d
    names = tuple(p.alphabet.names[s] for s in p.generators) if plain else tuple(
        f"h{i + 1}" for i in range(rank)
    )
    return HomologyBasis(rank, p.generators, expressions, images, names, plain)


def _unimodular_inverse(V: np.ndarray) -> np.ndarray:
    """Exact inverse of a unimodular matrix via Smith normal form."""
    n = V.shape[0]
    if n == 0:
        return V.copy()
    U, D, W = smith_normal_form(V)
    # U V W = D = diag(+-1)  =>  V^-1 = W D U
    return W.dot(D).dot(U)


@dataclass
class HomologyAction:
    matrices: dict[int, np.ndarray]
    basis: HomologyBasis
    group_order: int = field(default=0)

    def __getitem__(self, q: int) -> np.ndarray:
        return self.matrices[q]

    @property
    def rank(self) -> int:
        return self.basis.rank

    def trace(self, q: int) -> int:
        return int(sum(self.matrices[q][i, i] for i in range(self.rank)))

    def reordered(self, order) -> HomologyAction:
        """Same action written in the basis permuted by ``order``."""
        order = list(order)
        if sorted(order) != list(range(self.rank)):
            raise ValueError(f"{order} is not a permutation of range({self.rank})")
        b = self.basis
        basis = HomologyBasis(
            b.rank,
            b.generators,
            b.basis_expressions[order, :],
            b.generator_images[:, order],
            tuple(b.names[i] for i in order),
            b.from_generators,
        )
        mats = {q: m[np.ix_(order, order)] for q, m in self.matrices.items()}
        return HomologyAction(mats, basis, self.group_order)


def _generator_vectors(trace: SimplificationTrace) -> dict[int, dict[int, int]]:
    vecs = {s: {s: 1} for s in trace.final.generators}
    vecs.update(trace.eliminated_vectors)
    return vecs


def action_matrix(
    spec: CoverSpec,
    T: Transversal,
    trace: SimplificationTrace,
    basis: HomologyBasis,
    q: int,
    _vectors=None,
) -> np.ndarray:
    """Integer matrix of ``q`` on ``H1`` in the given basis.

    Each surviving generator's orbifold word ``w`` is conjugated by the
    transversal word of ``q``, rewritten by ``tau``, pushed through the
    eliminations and abelianized.
    """
    vectors = _vectors if _vectors is not None else _generator_vectors(trace)
    final = trace.final
    col = {s: j for j, s in enumerate(final.generators)}
    K = T.reps[q]
    Kinv = K.inverse()
    k = len(final.generators)
    images = np.zeros((k, k), dtype=object)  # row j: q(s_j) over generators
    for j, s in enumerate(final.generators):
        w = final.schreier[s].word_value
        for letter, sign in rewrite_tau(T, K * w * Kinv).letters:
            for t, c in vectors.get(letter, {}).items():
                images[j, col[t]] += sign * c
    # basis element i = sum_j E[i, j] s_j ; generator j = sum_l G[j, l] b_l
    E, Gm = basis.basis_expressions, basis.generator_images
    return E.dot(images).dot(Gm).T


def homology_action(
    spec: CoverSpec, T: Transversal, trace: SimplificationTrace, basis: HomologyBasis
) -> HomologyAction:
    vectors = _generator_vectors(trace)
    mats = {q: action_matrix(spec, T, trace, basis, q, vectors) for q in range(spec.n)}
    return HomologyAction(mats, basis, spec.n)


def fixed_point_oracle(spec: CoverSpec, q: int) -> int:
    """Number of points of the surface fixed by ``q != 1``, by counting cosets.

    Points over the ``j``-th branch point correspond to left cosets
    ``K <x_j>`` of the cyclic stabilizer; ``q`` fixes ``K <x_j>`` exactly
    when ``K^-1 q K`` lies in ``<x_j>``.
    """
    G = spec.group
    if q == G.identity:
        raise ValueError("the identity fixes every point")
    count = 0
    for x in spec.vector.x:
        sub = set(G.cyclic_subgroup(x))
        seen: set[int] = set()
        for K in range(G.order):
            if K in seen:
                continue
            seen.update(G.mul(K, c) for c in sub)
            if G.conjugate(q, K) in sub:
                count += 1
    return count


@dataclass(frozen=True)
class FixedPointRow:
    element: int
    oracle_count: int
    lefschetz_count: int

    @property
    def consistent(self) -> bool:
        return self.oracle_count == self.lefschetz_count


@dataclass(frozen=True)
class FixedPointReport:
    rows: tuple[FixedPointRow, ...]

    @property
    def consistent(self) -> bool:
        return all(r.consistent for r in self.rows)

    def mismatches(self) -> list[FixedPointRow]:
        return [r for r in self.rows if not r.consistent]


def lefschetz_report(action: HomologyAction, spec: CoverSpec) -> FixedPointReport:
    G = spec.group
    rows = tuple(
        FixedPointRow(q, fixed_point_oracle(spec, q), 2 - action.trace(q))
        for q in range(G.order)
        if q != G.identity
    )
    return FixedPointReport(rows)
