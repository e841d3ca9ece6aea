from courant_lab.algebroid import AnchoredBracket, tangent_algebroid
from courant_lab.bundle import Bundle, HomSection, patch, vf_bracket
from courant_lab.dorfman import Connection, standard_dorfman

BASE = patch("x1", "x2")
PT = patch()


def aff1():
    g = Bundle.vector(PT, "g", ("e1", "e2"))
    anchor = HomSection.zero(g, Bundle.tangent(PT))
    return AnchoredBracket.from_pairs(g, anchor, {(0, 1): g.section(e2=1)},
                                      antisymmetrize=True)


def test_lie_algebra_frame_values():
    br = aff1()
    g = br.bundle
    assert br.bracket(g.section(e1=1), g.section(e2=1)) == g.section(e2=1)
    assert br.bracket(g.section(e2=1), g.section(e2=1)).is_zero()


def test_leibniz_extension_matches_vf_bracket():
    tm = tangent_algebroid(BASE)
    x = tm.bundle.section(Dx2="x1")
    y = tm.bundle.section(Dx1=1)
    assert tm.bracket(x, y) == vf_bracket(x, y)
    assert tm.bracket(x, y) == -tm.bundle.section(Dx2=1)


def test_anchor_compat_reports():
    assert tangent_algebroid(BASE).check_anchor_compat().passed
    assert aff1().check_anchor_compat().passed
    # the dual bracket of a standard connection is anchored by pr_TM
    e = Bundle.vector(BASE, "E", ("eps",))
    delta = standard_dorfman(Connection(e, [[e.zero_section()], [e.section(eps="x1")]]))
    assert delta.bracket.check_anchor_compat().passed


def test_check_lie():
    assert aff1().check_lie().passed
    assert tangent_algebroid(BASE).check_lie().passed


def test_nonflat_dual_bracket_fails_lie_with_jacobiator_witness():
    e = Bundle.vector(BASE, "E", ("eps",))
    delta = standard_dorfman(Connection(e, [[e.zero_section()], [e.section(eps="x1")]]))
    report = delta.bracket.check_lie()
    assert not report.passed
    assert any(w.identity == "jacobi" for w in report.witnesses)
    # the Jacobiator pairs exactly as the curvature (cross-module identity)
    q = delta.q
    q1, q2 = q.section(Dx1=1), q.section(Dx2=1)
    for q3 in q.frame_sections():
        triple = (delta.bracket.bracket(delta.bracket.bracket(q1, q2), q3)
                  + delta.bracket.bracket(q2, delta.bracket.bracket(q1, q3))
                  - delta.bracket.bracket(q1, delta.bracket.bracket(q2, q3)))
        hom = delta.curvature(q1, q2)
        for b in delta.b.frame_sections():
            assert delta.predual.pair(q3, hom.apply(b)) == delta.predual.pair(triple, b)


def test_structure_functions_not_assumed_antisymmetric():
    g = Bundle.vector(PT, "g", ("e1", "e2"))
    anchor = HomSection.zero(g, Bundle.tangent(PT))
    dull = AnchoredBracket.from_pairs(g, anchor, {(0, 0): g.section(e2=1)})
    assert not dull.is_antisymmetric_on_frames()
    assert not dull.check_lie().passed


def test_restrict_to_subbundle():
    from courant_lab.bundle import SubBundle

    tm = tangent_algebroid(BASE)
    sub = SubBundle("F", [tm.bundle.section(Dx1=1)], tm.bundle)
    restricted = tm.restrict(sub)
    assert restricted.bundle.rank == 1
    assert restricted.check_lie().passed
