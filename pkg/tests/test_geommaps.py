import pytest

from pfol.exterior import DiffForm, affine_chart, cone_chart
from pfol.foliation import (
    Divisor,
    degeneracy_divisor,
    from_form,
    log_foliation,
)
from pfol.geommaps import (
    RationalMap,
    linear_hyperplane_embedding,
    monomial_cover,
    pullback,
    pullback_divisor,
    pullback_foliation,
    ramification_divisor,
    restrict_foliation,
    verify_pullback_degeneracy,
)
from pfol.mpoly import MultiPoly
from pfol.rings import GF


def power_map(ring, ell):
    chart = affine_chart(ring, 3)
    x, y, z = chart.vars()
    return RationalMap(chart, chart, [x, y, z**ell])


def test_rational_map_validation():
    F = GF(5)
    cone = cone_chart(F, 2)
    x0, x1, x2 = cone.vars()
    with pytest.raises(ValueError):
        RationalMap(cone, cone, [x0, x1])  # wrong arity
    with pytest.raises(ValueError):
        RationalMap(cone, cone, [x0, x1, x2**2])  # mixed degrees


def test_monomial_cover_ramification():
    F = GF(5)
    phi = monomial_cover(F, 2, 3)
    ram = ramification_divisor(phi)
    x0, x1, x2 = phi.source.vars()
    assert ram.normalize() == [(x0, 2), (x1, 2), (x2, 2)]


def test_affine_power_map_ramification():
    F = GF(5, 2)
    phi = power_map(F, 3)
    ram = ramification_divisor(phi)
    z = phi.source.var(2)
    assert ram.normalize() == [(z, 2)]


def test_pullback_divisor():
    F = GF(5)
    phi = monomial_cover(F, 2, 2)
    x0, x1, x2 = phi.target.vars()
    div = Divisor.of_polynomial(x0 * (x1 + x2), "proj")
    pulled = pullback_divisor(phi, div)
    assert pulled.degree() == 2 * div.degree()


def test_pullback_of_log_foliation_is_log():
    # phi^*(sum w_i dlog f_i) = sum w_i dlog phi^* f_i
    F = GF(5, 2)
    t = F.generator()
    chart = affine_chart(F, 3)
    x, y, z = chart.vars()
    fol = log_foliation([x, y, z], [t, F.one(), F.one()])
    phi = power_map(F, 2)
    pb = pullback_foliation(phi, fol)
    # the pullback is the log foliation with doubled weight on z
    expected = log_foliation([x, y, z], [t, F.one(), F.coerce(2)])
    assert pb.form == expected.form or pb.form == -expected.form


def test_behavior_invariant_noninvariant_rows():
    # three pullback behaviors along phi(x, y, z) = (x, y, z^ell)
    p = 5
    F = GF(p, 2)
    t = F.generator()
    for ell in (2, 3):
        phi = power_map(F, ell)
        chart = phi.target
        x, y, z = chart.vars()
        # branch locus invariant: correction -(ell - 1){z}
        fol = log_foliation([x, y, z], [t, F.one(), F.one()])
        res = verify_pullback_degeneracy(phi, fol)
        assert res["matches"]
        diff = res["delta_pullback"] - res["pullback_of_delta"]
        assert diff.normalize() == [(z.monic(), -(ell - 1))]
        # branch locus non-invariant but kernel-invariant: +p(ell-1){z}
        form = DiffForm(chart, 1, {(0,): MultiPoly.one(F, 3), (2,): x})
        fol2 = from_form(form)
        res2 = verify_pullback_degeneracy(phi, fol2)
        assert res2["matches"]
        diff2 = res2["delta_pullback"] - res2["pullback_of_delta"]
        assert diff2.normalize() == [(z.monic(), p * (ell - 1))]
        # branch locus disjoint from everything: no correction
        one = MultiPoly.one(F, 3)
        fol3 = log_foliation([x, y, z + one], [t, F.one(), F.one()])
        res3 = verify_pullback_degeneracy(phi, fol3)
        assert res3["matches"]
        assert (res3["delta_pullback"] - res3["pullback_of_delta"]).is_zero()


def test_linear_embedding_lands_in_hyperplane():
    F = GF(7, 2)
    coeffs = [F.coerce(c) for c in (1, 2, 3, 1)]
    emb = linear_hyperplane_embedding(F, 3, coeffs)
    # sum c_i comp_i = 0 identically
    acc = MultiPoly.zero(F, 3)
    for c, comp in zip(coeffs, emb.poly_comps()):
        acc = acc + comp.scale(c)
    assert acc.is_zero
    assert emb.source.nvars == 3 and emb.target.nvars == 4


def test_restriction_formula_on_hyperplane():
    # Delta_{F|Y} = Delta_F|_Y + p(diff(Fdel, Y) - diff(F, Y)) - diff(F, Y)
    p = 7
    F = GF(p, 2)
    t = F.generator()
    cone = cone_chart(F, 3)
    xs = cone.vars()
    fol = log_foliation(xs, [-(t + 2), t, F.one(), F.one()], projective=True)
    emb = linear_hyperplane_embedding(F, 3, [1, 2, 3, 1])
    sub, different = restrict_foliation(fol, emb)
    assert sub.projective and sub.n == 2
    assert different.is_effective()
    delta_sub = degeneracy_divisor(sub)
    delta = degeneracy_divisor(fol)
    from pfol.foliation import p_kernel
    from pfol.geommaps import restrict_form

    _, diff_kernel = restrict_form(emb, p_kernel(fol).two_form)
    predicted = (
        pullback_divisor(emb, delta)
        + p * (diff_kernel - different)
        - different
    )
    assert delta_sub == predicted
    assert delta_sub.degree() == delta.degree() + p * (
        diff_kernel.degree() - different.degree()
    ) - different.degree()


def test_restrict_invariant_hyperplane_rejected():
    F = GF(5, 2)
    t = F.generator()
    cone = cone_chart(F, 2)
    xs = cone.vars()
    fol = log_foliation(xs, [t, F.one(), -(t + 1)], projective=True)
    emb = linear_hyperplane_embedding(F, 2, [1, 0, 0])  # the line {x0 = 0}
    with pytest.raises(ValueError):
        restrict_foliation(fol, emb)


def test_pullback_form_matches_substitution():
    F = GF(5)
    phi = power_map(F, 2)
    x, y, z = phi.target.vars()
    form = DiffForm(phi.target, 1, {(2,): x})
    pb = pullback(phi, form)
    # phi^*(x dz) = x d(z^2) = 2xz dz
    zz = phi.source.var(2)
    assert pb.coeff((2,)).as_poly() == phi.source.var(0) * zz.scale(F.coerce(2))
