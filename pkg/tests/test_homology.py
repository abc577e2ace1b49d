import itertools

import numpy as np
import pytest

from adaptedbasis.errors import IntegrityError
from adaptedbasis.homology import (
    abelian_invariants,
    abelianize,
    fixed_point_oracle,
    h1_basis,
    homology_action,
    lefschetz_report,
)
from adaptedbasis.reidemeister_schreier import KernelPresentation, build_transversal, kernel_presentation
from adaptedbasis.tietze import simplify
from adaptedbasis.words import Alphabet

from cases import example1, example2, example2_transversal, example3, example3_transversal


def pipeline(spec, T):
    tr = simplify(kernel_presentation(spec, T), spec.genus, spec.n)
    basis = h1_basis(tr.final, spec.genus)
    return tr, homology_action(spec, T, tr, basis)


def cyclic_shift(n):
    m = np.zeros((n, n), dtype=int)
    for i in range(n):
        m[(i + 1) % n, i] = 1
    return m


def block_diag(*blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=int)
    k = 0
    for b in blocks:
        out[k : k + b.shape[0], k : k + b.shape[0]] = b
        k += b.shape[0]
    return out


def test_abelianize_rows():
    A = Alphabet(["A", "B", "C", "hC"])
    p = KernelPresentation(A, (A.parse("A B A^-1 B^-1 C hC^-1"),))
    assert abelianize(p).matrix.tolist() == [[0, 0, 1, -1]]
    M = Alphabet("MT")
    q = KernelPresentation(M, (M.parse("M T M^-1 T^-1"),))
    assert abelianize(q).matrix.tolist() == [[0, 0]]
    e = KernelPresentation(M, ())
    assert abelianize(e).matrix.shape == (0, 2)
    assert abelian_invariants(e) == (2, ())


def test_h1_basis_integrity():
    A = Alphabet("xy")
    with pytest.raises(IntegrityError):
        h1_basis(KernelPresentation(A, (A.parse("x x"),)), 1)  # torsion Z/2
    with pytest.raises(IntegrityError):
        h1_basis(KernelPresentation(A, ()), 2)  # rank 2, not 4


def test_example1_action():
    spec = example1()
    T = build_transversal(spec)
    _, act = pipeline(spec, T)
    assert act.rank == 14
    h = spec.group.generators["h"]
    # basis order: six A translates, six B translates, then C and D
    assert [n.split(",")[1] for n in act.basis.names] == ["a}"] * 6 + ["b}"] * 6 + ["c}", "d}"]
    expected = block_diag(cyclic_shift(6), cyclic_shift(6), np.eye(2, dtype=int))
    assert (act[h].astype(int) == expected).all()
    for j in range(1, 6):
        q = spec.group.power(h, j)
        assert 2 - act.trace(q) == 0 == fixed_point_oracle(spec, q)


def test_example2_action():
    spec = example2()
    _, act = pipeline(spec, example2_transversal(spec))
    G = spec.group
    g, h = G.generators["g"], G.generators["h"]
    gh = G.mul(g, h)
    minus = -np.eye(2, dtype=int)
    assert (act[g].astype(int) == minus).all()
    assert (act[h].astype(int) == minus).all()
    assert (act[gh].astype(int) == np.eye(2, dtype=int)).all()
    counts = [(2 - act.trace(q), fixed_point_oracle(spec, q)) for q in (g, h, gh)]
    assert counts == [(4, 4), (4, 4), (0, 0)]


def test_example3_action():
    spec = example3()
    _, act = pipeline(spec, example3_transversal(spec))
    G = spec.group
    g, h = G.generators["g"], G.generators["h"]
    assert act.rank == 8
    assert 2 - act.trace(h) == 6 == fixed_point_oracle(spec, h)
    assert 2 - act.trace(g) == 6 == fixed_point_oracle(spec, g)
    assert 2 - act.trace(G.mul(g, h)) == 0 == fixed_point_oracle(spec, G.mul(g, h))
    for a, b in itertools.product(G, repeat=2):
        assert (act[G.mul(a, b)] == act[a].dot(act[b])).all()
    assert not sum(act[q] for q in G).any()
    assert lefschetz_report(act, spec).consistent


def test_identity_is_identity_matrix():
    spec = example3()
    _, act = pipeline(spec, example3_transversal(spec))
    assert (act[spec.group.identity] == np.eye(8, dtype=int)).all()


def test_oracle_identity_rejected():
    spec = example2()
    with pytest.raises(ValueError):
        fixed_point_oracle(spec, spec.group.identity)


def test_reordered():
    spec = example2()
    _, act = pipeline(spec, example2_transversal(spec))
    r = act.reordered([1, 0])
    assert r.basis.names == act.basis.names[::-1]
    with pytest.raises(ValueError):
        act.reordered([0, 0])
