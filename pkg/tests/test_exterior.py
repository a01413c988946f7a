import random

from pfol.exterior import (
    DiffForm,
    VectorField,
    affine_chart,
    chart_transfer,
    cone_chart,
    euler_field,
    proj_chart,
    pullback_form,
)
from pfol.mpoly import MultiPoly, RationalFunction
from pfol.rings import GF


def random_poly(ring, nvars, rng, deg=2, nterms=3):
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randrange(deg + 1) for _ in range(nvars))
        c = ring.random(rng)
        if c:
            terms[e] = c
    return MultiPoly(ring, nvars, terms)


def random_one_form(chart, rng):
    return DiffForm(
        chart,
        1,
        {(i,): random_poly(chart.ring, chart.nvars, rng) for i in range(chart.nvars)},
    )


def random_field(chart, rng):
    return VectorField(
        chart,
        [random_poly(chart.ring, chart.nvars, rng) for _ in range(chart.nvars)],
    )


def test_d_squared_zero():
    rng = random.Random(0)
    chart = affine_chart(GF(5), 3)
    for _ in range(20):
        f = random_poly(GF(5), 3, rng, deg=3)
        df = DiffForm(chart, 1, {(i,): f.deriv(i) for i in range(3)})
        assert df.d().is_zero
        alpha = random_one_form(chart, rng)
        assert alpha.d().d().is_zero


def test_d_leibniz():
    rng = random.Random(1)
    chart = affine_chart(GF(7), 3)
    for _ in range(10):
        f = random_poly(GF(7), 3, rng)
        alpha = random_one_form(chart, rng)
        df = DiffForm(chart, 1, {(i,): f.deriv(i) for i in range(3)})
        lhs = (alpha * RationalFunction.from_poly(f)).d()
        rhs = df.wedge(alpha) + alpha.d() * RationalFunction.from_poly(f)
        assert lhs == rhs


def test_wedge_anticommutes():
    rng = random.Random(2)
    chart = affine_chart(GF(5), 4)
    for _ in range(10):
        a = random_one_form(chart, rng)
        b = random_one_form(chart, rng)
        assert a.wedge(b) == -(b.wedge(a))
        assert a.wedge(a).is_zero


def test_contraction_antiderivation():
    rng = random.Random(3)
    chart = affine_chart(GF(5), 3)
    for _ in range(10):
        a = random_one_form(chart, rng)
        b = random_one_form(chart, rng)
        v = random_field(chart, rng)
        lhs = a.wedge(b).contract(v)
        rhs = b * a.pair(v) - a * b.pair(v)
        assert lhs == rhs


def test_lie_bracket_is_derivation():
    rng = random.Random(4)
    chart = affine_chart(GF(7), 3)
    for _ in range(5):
        v = random_field(chart, rng)
        w = random_field(chart, rng)
        f = RationalFunction.from_poly(random_poly(GF(7), 3, rng))
        bracket = v.lie_bracket(w)
        assert bracket.apply(f) == v.apply(w.apply(f)) - w.apply(v.apply(f))


def test_pth_power_is_derivation():
    rng = random.Random(5)
    chart = affine_chart(GF(3), 2)
    for _ in range(10):
        v = random_field(chart, rng)
        f = RationalFunction.from_poly(random_poly(GF(3), 2, rng))
        g = RationalFunction.from_poly(random_poly(GF(3), 2, rng))
        vp = v.pth_power()
        assert vp.apply(f * g) == vp.apply(f) * g + f * vp.apply(g)


def test_pth_power_additive_on_commuting_fields():
    # (v + w)^p = v^p + w^p when [v, w] = 0
    rng = random.Random(6)
    for p in (3, 5):
        chart = affine_chart(GF(p), 2)
        x, y = chart.vars()
        for _ in range(5):
            # fields of the separated form a(x) d/dx and b(y) d/dy commute
            a = random_poly(GF(p), 2, rng, deg=1, nterms=2)
            v = VectorField(chart, [MultiPoly(GF(p), 2,
                {e: c for e, c in a.terms.items() if e[1] == 0}),
                MultiPoly.zero(GF(p), 2)])
            b = random_poly(GF(p), 2, rng, deg=1, nterms=2)
            w = VectorField(chart, [MultiPoly.zero(GF(p), 2),
                MultiPoly(GF(p), 2,
                {e: c for e, c in b.terms.items() if e[0] == 0})])
            assert not v.lie_bracket(w)
            lhs = (v + w).pth_power()
            rhs = v.pth_power() + w.pth_power()
            f = RationalFunction.from_poly(random_poly(GF(p), 2, rng))
            assert lhs.apply(f) == rhs.apply(f)
            assert lhs == rhs


def test_euler_field_pairs_degree():
    chart = cone_chart(GF(5), 2)
    x0, x1, x2 = chart.vars()
    f = x0 * x1**2 + x2**3
    df = DiffForm(chart, 1, {(i,): f.deriv(i) for i in range(3)})
    assert df.pair(euler_field(chart)).as_poly() == f.scale(GF(5).coerce(3))


def test_saturate_and_content():
    chart = affine_chart(GF(5), 2)
    x, y = chart.vars()
    form = DiffForm(chart, 1, {(0,): x * y, (1,): x * x})
    assert form.content() == x
    sat = form.saturate()
    assert sat.content().is_constant
    assert sat.coeff((0,)).as_poly() == y


def test_clear_denominators():
    chart = affine_chart(GF(7), 2)
    x, y = chart.vars()
    form = DiffForm(chart, 1, {
        (0,): RationalFunction(MultiPoly.one(GF(7), 2), x),
        (1,): RationalFunction(MultiPoly.one(GF(7), 2), y),
    })
    cleared, den = form.clear_denominators()
    assert cleared.is_polynomial
    assert den == x * y
    assert cleared.coeff((0,)).as_poly() == y


def test_pullback_functorial():
    rng = random.Random(7)
    F = GF(5)
    a2 = affine_chart(F, 2)
    a3 = affine_chart(F, 3, ("u", "v", "w"))
    # phi: a3 -> a2, psi composed by substitution
    comps = [random_poly(F, 3, rng, deg=2), random_poly(F, 3, rng, deg=2)]
    alpha = random_one_form(a2, rng)
    beta = random_one_form(a2, rng)
    pull = lambda form: pullback_form(form, comps, a3)
    assert pull(alpha.wedge(beta)) == pull(alpha).wedge(pull(beta))
    assert pull(alpha.d()) == pull(alpha).d()


def test_chart_transfer_roundtrip():
    rng = random.Random(8)
    F = GF(5)
    c0 = proj_chart(F, 2, 0)
    for _ in range(5):
        form = DiffForm(c0, 1, {
            (0,): random_poly(F, 2, rng),
            (1,): random_poly(F, 2, rng),
        })
        moved = chart_transfer(form, 1)
        back = chart_transfer(moved, 0)
        assert back == form
