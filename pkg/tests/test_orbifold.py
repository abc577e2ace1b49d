import random

import pytest

from adaptedbasis.errors import InvalidCoverError
from adaptedbasis.finite_group import from_abelian_invariants
from adaptedbasis.orbifold import (
    CoverSpec,
    GeneratingVector,
    OrbifoldSignature,
    phi_eval,
    riemann_hurwitz_genus,
    validate_generating_vector,
)
from adaptedbasis.words import Word

from cases import example1, example2, example3


@pytest.mark.parametrize(
    "g0, orders, n, genus",
    [(2, (), 6, 7), (0, (2, 2, 2, 2), 4, 1), (0, (2, 2, 3, 3, 3), 6, 4), (5, (), 1, 5)],
)
def test_riemann_hurwitz(g0, orders, n, genus):
    assert riemann_hurwitz_genus(OrbifoldSignature(g0, orders), n) == genus


def test_riemann_hurwitz_errors():
    with pytest.raises(InvalidCoverError):
        riemann_hurwitz_genus(OrbifoldSignature(0, (3,)), 4)  # 3 does not divide 4
    with pytest.raises(InvalidCoverError):
        riemann_hurwitz_genus(OrbifoldSignature(0, ()), 2)  # 2g = -2
    with pytest.raises(InvalidCoverError):
        riemann_hurwitz_genus(OrbifoldSignature(0, (2,)), 2)  # 2g = -1
    assert riemann_hurwitz_genus(OrbifoldSignature(0, (2, 2)), 2) == 0


def test_signature_rejects_bad_data():
    with pytest.raises(InvalidCoverError):
        OrbifoldSignature(-1, ())
    with pytest.raises(InvalidCoverError):
        OrbifoldSignature(0, (2, 1, 3))


def test_example_vectors_valid():
    assert example1().genus == 7
    assert example2().genus == 1
    assert example3().genus == 4


def test_product_condition():
    G = from_abelian_invariants([2, 3], ["g", "h"])
    g, h = G.generators["g"], G.generators["h"]
    report = validate_generating_vector(G, OrbifoldSignature(0, (2, 2, 2, 3)), GeneratingVector((), (), (g, g, g, h)))
    assert [code for code, _ in report.issues] == ["product"]
    with pytest.raises(InvalidCoverError) as exc:
        CoverSpec(G, OrbifoldSignature(0, (2, 2, 2, 3)), GeneratingVector((), (), (g, g, g, h)))
    assert [code for code, _ in exc.value.report.issues] == ["product"]
    assert "long relation maps to g h" in str(exc.value)


def test_other_invariants():
    G = from_abelian_invariants([2, 2], ["g", "h"])
    g, h = G.generators["g"], G.generators["h"]
    e = G.identity
    sig = OrbifoldSignature(0, (2, 2, 2, 2))

    def codes(vec, s=sig):
        return {c for c, _ in validate_generating_vector(G, s, vec).issues}

    assert codes(GeneratingVector((), (), (g, g, g, g))) == {"generation"}
    assert codes(GeneratingVector((), (), (g, g, e, e))) >= {"order"}
    assert codes(GeneratingVector((), (), (g, g, h))) == {"shape"}
    assert codes(GeneratingVector((), (), (g, g)), OrbifoldSignature(0, (2, 2))) >= {"degenerate"}


def test_phi_eval():
    spec = example2()
    A = spec.alphabet
    assert phi_eval(spec, A.parse("a b c d")) == spec.group.identity
    assert phi_eval(spec, A.identity()) == spec.group.identity
    s1 = example1()
    assert phi_eval(s1, s1.alphabet.parse("d")) == s1.group.generators["h"]


def test_phi_is_homomorphism():
    rng = random.Random(5)
    spec = example3()
    A, G = spec.alphabet, spec.group
    for _ in range(200):
        u = Word(A, [(rng.randrange(len(A)), rng.choice((1, -1))) for _ in range(rng.randrange(12))])
        v = Word(A, [(rng.randrange(len(A)), rng.choice((1, -1))) for _ in range(rng.randrange(12))])
        assert phi_eval(spec, u * v) == G.mul(phi_eval(spec, u), phi_eval(spec, v))
        assert phi_eval(spec, u.inverse()) == G.inv(phi_eval(spec, u))


def test_registry_and_relators():
    spec = example1()
    assert spec.alphabet.names == ("a", "b", "c", "d")
    assert str(spec.long_relator) == "a b a^-1 b^-1 c d c^-1 d^-1"
    spec3 = example3()
    assert [str(r) for r in spec3.torsion_relators] == ["a a", "b b", "c c c", "d d d", "e e e"]
    big = OrbifoldSignature(14, ())
    assert big.default_names()[:3] == ("a1", "b1", "a2")


def test_trivial_cover():
    G = from_abelian_invariants([])
    spec = CoverSpec(G, OrbifoldSignature(5, ()), GeneratingVector((0,) * 5, (0,) * 5, ()))
    assert spec.genus == 5
