import pytest

from courant_lab.algebroid import AnchoredBracket, tangent_algebroid
from courant_lab.bundle import Bundle, HomSection, SubBundle, patch
from courant_lab.courant import standard_courant
from courant_lab.dorfman import (Connection, DorfmanConnection, bott_dorfman,
                                 im2form_dorfman, lie_derivative_dorfman,
                                 pr_tm_hom, standard_dorfman, trivial_dorfman)

BASE = patch("x1", "x2")
E = Bundle.vector(BASE, "E", ("eps",))


@pytest.fixture(scope="module")
def ex_a():
    """Rank-1 bundle over the plane, nabla_{d1} eps = 0, nabla_{d2} eps = x1 eps."""
    conn = Connection(E, [[E.zero_section()], [E.section(eps="x1")]])
    return standard_dorfman(conn)


def test_apply_examples(ex_a):
    d = ex_a
    assert d.apply(d.q.section(Dx2=1), d.b.section(eps=1)) == d.b.section(eps="x1")
    # rule (a): <(0,eps*),(eps,0)> = 1 contributes d_B(x1) = (0, dx1)
    out = d.apply(d.q.section(epss="x1"), d.b.section(eps=1))
    assert out == d.b.section(dx1=1) - d.b.section(dx2="x1^2 + 0")
    assert d.apply(d.q.section(Dx1="x2", epss=1), d.b.zero_section()).is_zero()


def test_check_axioms(ex_a):
    assert ex_a.check_axioms().passed


def test_trivial_pairing_connection_is_dorfman():
    tm = tangent_algebroid(patch("x"))
    b = Bundle.vector(patch("x"), "B", ("b1",))
    symbols = [[b.section(b1="x")]]
    delta = trivial_dorfman(tm, b, symbols)
    assert delta.check_axioms().passed


def test_perturbed_symbols_fail_axiom_c(ex_a):
    symbols = [list(row) for row in ex_a.symbols]
    symbols[0][0] = symbols[0][0] + ex_a.b.section(dx1=1)
    broken = DorfmanConnection(ex_a.predual, ex_a.bracket, symbols)
    report = broken.check_axioms()
    assert not report.passed
    assert any(w.identity == "axiom-c" for w in report.witnesses)


def test_dual_bracket_formula(ex_a):
    # [[ (X,xi), (Y,eta) ]] = ([X,Y], nabla*_X eta - nabla*_Y xi)
    d = ex_a
    value = d.bracket.bracket(d.q.section(Dx2=1), d.q.section(epss=1))
    assert value == -d.q.section(epss="x1")


def test_duality_roundtrip(ex_a):
    assert ex_a.check_duality().passed
    rebuilt = DorfmanConnection.from_dull(ex_a.dual_bracket(), ex_a.predual)
    for i in range(ex_a.q.rank):
        for j in range(ex_a.b.rank):
            assert rebuilt.symbols[i][j] == ex_a.symbols[i][j]


def test_curvature_examples(ex_a):
    d = ex_a
    hom = d.curvature(d.q.section(Dx1=1), d.q.section(Dx2=1))
    assert hom.apply(d.b.section(eps=1)) == d.b.section(eps=1)
    # closed form for the standard connection: (R(X,Y)e, 0) on (e, 0) inputs
    conn = Connection(E, [[E.zero_section()], [E.section(eps="x1")]])
    r_nabla = conn.curvature(Bundle.tangent(BASE).section(Dx1=1),
                             Bundle.tangent(BASE).section(Dx2=1), E.section(eps=1))
    assert hom.apply(d.b.section(eps=1)).part(0) == tuple(r_nabla.coeffs)
    # curvature kills (0, theta)
    assert hom.apply(d.b.section(dx1=1)).is_zero()
    assert hom.apply(d.b.section(dx2="x2")).is_zero()
    assert d.check_curvature_tensorial().passed
    assert d.curvature_vs_jacobiator().passed


def test_flat_connection_gives_flat_curvature():
    flat = standard_dorfman(Connection.flat(E))
    for v1 in flat.q.frame_sections():
        for v2 in flat.q.frame_sections():
            assert flat.curvature(v1, v2).is_zero()
    assert flat.bracket.check_lie().passed


def test_skew_examples(ex_a):
    assert ex_a.skew_is_zero()
    assert ex_a.check_skew().passed
    # a dull bracket with [[(0,eps*),(0,eps*)]] = (0,eps*) has Skew = 2 eps*
    q = ex_a.q
    table = {(2, 2): q.section(epss=1)}
    dull = AnchoredBracket.from_pairs(q, pr_tm_hom(q), table)
    delta = DorfmanConnection.from_dull(dull, ex_a.predual)
    sym = delta.skew_symmetrization(q.section(epss=1), q.section(epss=1))
    assert sym == q.section(epss=2)
    assert not delta.skew_is_zero()
    # skew vanishes iff the dual bracket is antisymmetric
    assert not dull.is_antisymmetric_on_frames()


def test_lie_derivative_dorfman():
    pt = patch()
    g = Bundle.vector(pt, "g", ("e1", "e2"))
    br = AnchoredBracket.from_pairs(g, HomSection.zero(g, Bundle.tangent(pt)),
                                    {(0, 1): g.section(e2=1)}, antisymmetrize=True)
    delta = lie_derivative_dorfman(br)
    assert delta.check_axioms().passed
    # <L_{e1} e2*, e2> = -<e2*, [e1, e2]> = -1
    out = delta.apply(g.section(e1=1), g.dual().section(e2s=1))
    assert out == -g.dual().section(e2s=1)
    # flat since aff(1) is a Lie algebra and the pairing is nondegenerate
    for q1 in g.frame_sections():
        for q2 in g.frame_sections():
            assert delta.curvature(q1, q2).is_zero()


def test_bott_dorfman_quotient():
    courant = standard_courant(BASE)
    k_sub = SubBundle("K", [courant.bundle.section(Dx1=1)], courant.bundle)
    delta, report = bott_dorfman(courant, k_sub)
    assert report.passed
    # Delta_X (Ybar, betabar) = (L_X Y, L_X beta) on classes
    q, b = delta.q, delta.b
    assert b.frame == ("w1", "w2", "w3")  # classes of Dx2, dx1, dx2
    assert delta.apply(q.section(K1=1), b.section(w1="x1")) == b.section(w1=1)
    assert delta.apply(q.section(K1=1), b.section(w3="x1")) == b.section(w3=1)
    assert delta.apply(q.section(K1=1), b.section(w2="x2")).is_zero()


def test_bott_dorfman_rejects_non_isotropic():
    courant = standard_courant(BASE)
    bad = SubBundle("K", [courant.bundle.section(Dx1=1, dx1=1)], courant.bundle)
    delta, report = bott_dorfman(courant, bad)
    assert delta is None
    assert report.status == "error"
    assert any(w.identity == "isotropic" and w.difference == "2" for w in report.witnesses)


def test_bott_dorfman_rejects_non_closed():
    # brackets of constant sections vanish for the standard structure, so
    # closedness can only break after perturbing a frame symbol
    courant = standard_courant(BASE)
    courant.symbols[0][1] = courant.symbols[0][1] + courant.bundle.section(dx1=1)
    bad = SubBundle("K", [courant.bundle.section(Dx1=1),
                          courant.bundle.section(Dx2=1)], courant.bundle)
    delta, report = bott_dorfman(courant, bad)
    assert delta is None
    assert report.status == "error"
    assert any(w.identity == "bracket-closed" for w in report.witnesses)


def test_im2form_axioms():
    e2 = Bundle.vector(BASE, "P", ("p1", "p2"))
    sigma = HomSection(e2, Bundle.cotangent(BASE),
                       [[BASE.one(), BASE.zero()], [BASE.zero(), BASE.poly("x1")]])
    conn = Connection(e2, [[e2.section(p2="x2"), e2.zero_section()],
                           [e2.zero_section(), e2.zero_section()]])
    delta = im2form_dorfman(sigma, conn)
    assert delta.check_axioms().passed
    assert delta.skew_is_zero()  # the associated splitting is Lagrangian
