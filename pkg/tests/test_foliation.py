import random

import pytest

from pfol.exterior import DiffForm, VectorField, affine_chart, cone_chart, euler_field
from pfol.foliation import (
    Divisor,
    PClosedError,
    ValidationError,
    analyze,
    cartier_transform_foliation,
    closed_defining_form,
    coprime_basis,
    degeneracy_divisor,
    divisor_difference_of_closed_form,
    from_form,
    is_invariant_hypersurface,
    is_p_closed,
    koszul_fields,
    log_foliation,
    p_curvature,
    p_kernel,
    predicted_degeneracy_degree,
    projectivize,
)
from pfol.mpoly import MultiPoly
from pfol.rings import GF


def test_coprime_basis():
    F = GF(5)
    x = MultiPoly.var(F, 2, 0)
    y = MultiPoly.var(F, 2, 1)
    basis = coprime_basis([x * y, y * (x + y)])
    assert sorted(map(str, basis)) == ["x", "x + y", "y"]


def test_divisor_arithmetic():
    F = GF(5)
    x = MultiPoly.var(F, 2, 0)
    y = MultiPoly.var(F, 2, 1)
    d1 = Divisor.of_polynomial(x**2 * y)
    d2 = Divisor.of_polynomial(x)
    assert d1.degree() == 3
    assert (d1 - 2 * d2).normalize() == [(y.monic(), 1)]
    assert (d1 - d1).is_zero()
    assert d1 == Divisor.of_polynomial(x * y * x)
    assert not (d1 - d2).is_effective() or (d1 - d2).is_effective()
    assert (d1 - 3 * d2).normalize() == [(x.monic(), -1), (y.monic(), 1)]


def test_log_foliation_p_closed_iff_ratios_in_fp():
    # sum lambda_i dlog x_i is p-closed iff the weight ratios are in F_p
    p = 3
    F = GF(p, 2)
    chart = affine_chart(F, 3)
    x, y, z = chart.vars()
    t = F.generator()
    rational = log_foliation([x, y, z], [F.coerce(2), F.one(), F.one()])
    assert is_p_closed(rational)
    irrational = log_foliation([x, y, z], [t, F.one(), F.one()])
    assert not is_p_closed(irrational)


def test_log_foliation_validation():
    F = GF(5)
    chart = affine_chart(F, 2)
    x, y = chart.vars()
    with pytest.raises(ValidationError):
        log_foliation([x * x, y], [F.one(), F.one()])  # not squarefree
    with pytest.raises(ValidationError):
        log_foliation([x, x], [F.one(), F.one()])  # not coprime
    cone = cone_chart(F, 2)
    x0, x1, x2 = cone.vars()
    with pytest.raises(ValidationError):
        # projective weights must sum (weighted by degree) to zero
        log_foliation([x0, x1], [F.one(), F.one()], projective=True)


def test_p_curvature_log_identity():
    # omega(v_j^p) = (prod x_i)(lam_j^p lam_1 - lam_1^p lam_j)
    rng = random.Random(0)
    for p in (3, 5):
        F = GF(p, 2)
        chart = affine_chart(F, 3)
        xs = chart.vars()
        xyz = xs[0] * xs[1] * xs[2]
        for _ in range(5):
            lam = [F.random_nonzero(rng) for _ in range(3)]
            fol = log_foliation(xs, lam)
            for j in (1, 2):
                # tangent field v_j = lam_j x_1 d_1 - lam_1 x_j d_j
                comps = [MultiPoly.zero(F, 3) for _ in range(3)]
                comps[0] = xs[0].scale(lam[j])
                comps[j] = xs[j].scale(-lam[0])
                v = VectorField(chart, comps)
                assert not fol.form.pair(v)
                val = p_curvature(fol, v)
                expected = xyz.scale(lam[j] ** p * lam[0] - lam[0] ** p * lam[j])
                assert val.as_poly() == expected


def test_from_form_validation():
    F = GF(5)
    cone = cone_chart(F, 2)
    x0, x1, x2 = cone.vars()
    # not annihilated by the radial field
    bad = DiffForm(cone, 1, {(0,): x1, (1,): x0})
    with pytest.raises(ValidationError):
        from_form(bad, projective=True)
    # unsaturated without auto_saturate
    chart = affine_chart(F, 2)
    x, y = chart.vars()
    unsat = DiffForm(chart, 1, {(0,): x * y, (1,): x * x})
    with pytest.raises(ValidationError):
        from_form(unsat)
    fol = from_form(unsat, auto_saturate=True)
    assert fol.form.content().is_constant


def test_degree_one_projective_degeneracy():
    # Delta = {x0} + {x1} + {x2}, one from each invariant line
    for p in (3, 5, 7):
        F = GF(p, 2)
        t = F.generator()
        cone = cone_chart(F, 2)
        x0, x1, x2 = cone.vars()
        alpha, beta = t, F.one()
        form = DiffForm(cone, 1, {
            (0,): (x1 * x2).scale(alpha - beta),
            (1,): (x0 * x2).scale(beta),
            (2,): (x0 * x1).scale(-alpha),
        })
        fol = from_form(form, projective=True)
        assert fol.degree == 1
        assert not is_p_closed(fol)
        delta = degeneracy_divisor(fol)
        assert delta.normalize() == [(x0, 1), (x1, 1), (x2, 1)]
        assert delta.degree() == 3 == predicted_degeneracy_degree(p, 1, 0)


def test_projectivize_degree_two():
    for p in (3, 5):
        F = GF(p)
        chart = affine_chart(F, 2)
        x, y = chart.vars()
        a2 = x**2 + x * y.scale(F.coerce(2)) - y**2
        b2 = x**2 + x * y + y**2 + x**2
        form = DiffForm(chart, 1, {(0,): -y + a2, (1,): x + b2})
        fol = projectivize(form)
        assert fol.projective and fol.degree == 2
        delta = degeneracy_divisor(fol)
        assert delta.degree() == p + 4
        assert delta.degree() == predicted_degeneracy_degree(p, 2, 0)


def test_closed_defining_form_and_divisor_congruence():
    p = 5
    F = GF(p, 2)
    chart = affine_chart(F, 3)
    xs = chart.vars()
    fol = log_foliation(xs, [F.generator(), F.one(), F.one()])
    omega1 = closed_defining_form(fol)
    assert omega1.d().is_zero
    # zeros minus poles of the closed form agrees with Delta modulo p
    delta = degeneracy_divisor(fol)
    diff = divisor_difference_of_closed_form(omega1)
    residual = delta - diff
    assert all(m % p == 0 for _, m in residual.normalize())


def test_p_closed_has_no_degeneracy():
    F = GF(3)
    chart = affine_chart(F, 3)
    xs = chart.vars()
    fol = log_foliation(xs, [F.coerce(2), F.one(), F.one()])
    with pytest.raises(PClosedError):
        degeneracy_divisor(fol)
    with pytest.raises(PClosedError):
        closed_defining_form(fol)


def test_p_kernel_properties():
    p = 7
    F = GF(p, 2)
    t = F.generator()
    cone = cone_chart(F, 3)
    xs = cone.vars()
    fol = log_foliation(xs, [-(t + 2), t, F.one(), F.one()], projective=True)
    kernel = p_kernel(fol)
    theta = kernel.two_form
    assert theta.contract(euler_field(cone)).is_zero
    assert theta.wedge(fol.form).is_zero
    assert theta.content().is_constant
    assert kernel.degree == 1


def test_cartier_transform_integrable_flag():
    p = 5
    F = GF(p, 2)
    chart = affine_chart(F, 3)
    xs = chart.vars()
    fol = log_foliation(xs, [F.generator(), F.one(), F.one()])
    eta, integrable = cartier_transform_foliation(fol)
    assert integrable
    assert not eta.is_zero


def test_invariant_hypersurfaces():
    p = 5
    F = GF(p, 2)
    cone = cone_chart(F, 2)
    x0, x1, x2 = cone.vars()
    t = F.generator()
    form = DiffForm(cone, 1, {
        (0,): (x1 * x2).scale(t - F.one()),
        (1,): x0 * x2,
        (2,): (x0 * x1).scale(-t),
    })
    fol = from_form(form, projective=True)
    for h in (x0, x1, x2):
        assert is_invariant_hypersurface(fol, h)
    assert not is_invariant_hypersurface(fol, x0 + x1)


def test_analyze_report():
    p = 5
    F = GF(p, 2)
    t = F.generator()
    cone = cone_chart(F, 2)
    x0, x1, x2 = cone.vars()
    form = DiffForm(cone, 1, {
        (0,): (x1 * x2).scale(t - F.one()),
        (1,): x0 * x2,
        (2,): (x0 * x1).scale(-t),
    })
    fol = from_form(form, projective=True)
    report = analyze(fol)
    assert report.p == p
    assert report.ambient == "P^2"
    assert not report.p_closed
    assert report.deg_degeneracy == 3
    assert report.predicted_deg_degeneracy == 3
    assert report.cartier_integrable is True
    assert "degeneracy" in report.to_json()
