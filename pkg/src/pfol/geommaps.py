"""Pullbacks of foliations, ramification divisors and differents.

A :class:`RationalMap` stores, for each coordinate of the target, its
expression in the coordinates of the source.  Affine maps have rational
components on an affine chart; projective maps have homogeneous polynomial
components of a common degree on the cone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exterior import Chart, DiffForm, cone_chart, proj_chart, pullback_form
from .foliation import (
    Divisor,
    Foliation,
    coprime_basis,
    from_form,
    is_invariant_for_two_form,
    is_invariant_hypersurface,
    p_kernel,
)
from .mpoly import (
    MultiPoly,
    RationalFunction,
    multiplicity_along,
    squarefree_decomposition,
)


@dataclass
class RationalMap:
    """A map given by one source-coordinate expression per target coordinate."""

    source: Chart
    target: Chart
    comps: list

    def __post_init__(self):
        self.comps = [
            c if isinstance(c, RationalFunction) else RationalFunction.from_poly(c)
            for c in self.comps
        ]
        if len(self.comps) != self.target.nvars:
            raise ValueError("need one component per target coordinate")
        for c in self.comps:
            if c.nvars != self.source.nvars or c.ring != self.source.ring:
                raise ValueError("components must live on the source chart")
        if self.is_projective:
            degs = set()
            for c in self.comps:
                if not c.is_polynomial:
                    raise ValueError("projective maps need polynomial components")
                f = c.as_poly()
                if f.is_zero:
                    continue
                if not f.is_homogeneous():
                    raise ValueError("projective maps need homogeneous components")
                degs.add(f.total_degree())
            if len(degs) != 1:
                raise ValueError("components must share a common degree")

    @property
    def is_projective(self) -> bool:
        return self.source.kind == "cone" and self.target.kind == "cone"

    def poly_comps(self) -> list[MultiPoly]:
        return [c.as_poly() for c in self.comps]

    def __repr__(self):
        return f"[{', '.join(map(repr, self.comps))}]"


def monomial_cover(ring, n: int, exponent: int) -> RationalMap:
    """The cover of P^n raising every homogeneous coordinate to a power."""
    cone = cone_chart(ring, n)
    return RationalMap(cone, cone, [v**exponent for v in cone.vars()])


def linear_hyperplane_embedding(ring, n: int, coeffs) -> RationalMap:
    """The inclusion of the hyperplane sum c_i x_i = 0 into P^n.

    Parametrized by solving for the last coordinate with a nonzero
    coefficient; the source is P^(n-1) with the remaining coordinates.
    """
    coeffs = [ring.coerce(c) for c in coeffs]
    if len(coeffs) != n + 1:
        raise ValueError("need one coefficient per homogeneous coordinate")
    pivot = max(i for i, c in enumerate(coeffs) if c)
    source = cone_chart(ring, n - 1, tuple(f"y{i}" for i in range(n)))
    comps = []
    pos = 0
    params = source.vars()
    solved = MultiPoly.zero(ring, n)
    inv = ring.inv(coeffs[pivot])
    for i in range(n + 1):
        if i == pivot:
            continue
        if coeffs[i]:
            solved = solved - params[pos].scale(coeffs[i] * inv)
        pos += 1
    pos = 0
    for i in range(n + 1):
        if i == pivot:
            comps.append(solved)
        else:
            comps.append(params[pos])
            pos += 1
    return RationalMap(source, cone_chart(ring, n), comps)


def pullback(phi: RationalMap, form: DiffForm) -> DiffForm:
    """Pull a form on the target back to the source."""
    if form.chart != phi.target:
        raise ValueError("form does not live on the target of the map")
    return pullback_form(form, phi.comps, phi.source)


def pullback_foliation(phi: RationalMap, fol: Foliation) -> Foliation:
    """phi^* of a foliation: pull back the form, clear and saturate."""
    pb = pullback(phi, fol.form)
    if pb.is_zero:
        raise ValueError("pullback form vanishes; map not generically transverse")
    pb, _ = pb.clear_denominators()
    pb = pb.saturate()
    return from_form(pb, projective=phi.is_projective, auto_saturate=True)


def pullback_divisor(phi: RationalMap, div: Divisor) -> Divisor:
    """phi^* of a divisor, for maps with polynomial components."""
    comps = phi.poly_comps()
    items = []
    for f, m in div.normalize():
        g = f.subs(comps)
        if isinstance(g, RationalFunction):
            g = g.as_poly()
        if g.is_zero:
            raise ValueError("a component pulls back to zero (image inside it)")
        items.append((g.monic() if g.ring.is_field else g, m))
    return Divisor(phi.source.ring, phi.source.nvars, items, div.ambient)


def _det(rows) -> RationalFunction:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = None
    for j in range(n):
        entry = rows[0][j]
        if not entry:
            continue
        minor = [[r[k] for k in range(n) if k != j] for r in rows[1:]]
        term = entry * _det(minor)
        if j % 2 == 1:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        zero = rows[0][0] - rows[0][0]
        return zero
    return acc


def _jacobian_det(comps, nvars: int) -> RationalFunction:
    if len(comps) != nvars:
        raise ValueError("ramification needs an equal-dimensional map")
    rows = [[c.deriv(j) for j in range(nvars)] for c in comps]
    return _det(rows)


def _divisor_of_rational(fn: RationalFunction, ring, nvars, ambient) -> Divisor:
    zero = Divisor.zero(ring, nvars, ambient)
    zeros = (
        Divisor.of_polynomial(fn.num, ambient) if not fn.num.is_constant else zero
    )
    poles = (
        Divisor.of_polynomial(fn.den, ambient) if not fn.den.is_constant else zero
    )
    return zeros - poles


def _assemble_projective(ring, n, chart_fns: dict[int, RationalFunction]) -> Divisor:
    """Glue per-chart divisors of rational functions into a projective divisor."""
    candidates = []
    for j, fn in chart_fns.items():
        for poly in (fn.num, fn.den):
            if poly.is_constant:
                continue
            for comp, _ in squarefree_decomposition(poly):
                candidates.append(comp.homogenize(j))
    basis = coprime_basis(candidates)
    items = []
    for h in basis:
        mults = set()
        for j, fn in chart_fns.items():
            h_aff = h.set_var_one(j)
            if h_aff.is_constant:
                continue
            m = multiplicity_along(fn.num, h_aff)
            if not fn.den.is_constant:
                m -= multiplicity_along(fn.den, h_aff)
            mults.add(m)
        if not mults:
            raise AssertionError("component invisible on every chart")
        if len(mults) != 1:
            raise AssertionError(f"inconsistent chart multiplicities {mults}")
        m = mults.pop()
        if m:
            items.append((h, m))
    return Divisor(ring, n + 1, items, "proj")


def ramification_divisor(phi: RationalMap) -> Divisor:
    """The ramification divisor of a generically finite separable map
    between spaces of equal dimension, via the Jacobian determinant."""
    ring = phi.source.ring
    if not phi.is_projective:
        n = phi.source.nvars
        jac = _jacobian_det(phi.comps, n)
        if not jac:
            raise ValueError("Jacobian vanishes identically (inseparable or degenerate)")
        return _divisor_of_rational(jac, ring, n, "affine")
    n = phi.source.nvars - 1
    comps = phi.poly_comps()
    chart_fns: dict[int, RationalFunction] = {}
    for j in range(n + 1):
        dehom = [c.set_var_one(j) for c in comps]
        t = j if not dehom[j].is_zero else next(
            k for k, c in enumerate(dehom) if not c.is_zero
        )
        affine = [
            RationalFunction(dehom[k], dehom[t]) for k in range(n + 1) if k != t
        ]
        jac = _jacobian_det(affine, n)
        if not jac:
            raise ValueError("Jacobian vanishes identically on a chart")
        chart_fns[j] = jac
    div = _assemble_projective(ring, n, chart_fns)
    if not div.is_effective():
        raise AssertionError("assembled ramification divisor is not effective")
    return div


# ---------------------------------------------------------------------------
# restriction to subvarieties


def restrict_form(embedding: RationalMap, form: DiffForm):
    """Pull a polynomial form back along an embedding and split off its
    content: returns (saturated restricted form, different divisor)."""
    restricted = pullback(embedding, form)
    if restricted.is_zero:
        raise ValueError("the subvariety is invariant; restriction vanishes")
    restricted, _ = restricted.clear_denominators()
    cont = restricted.content()
    ring, m = embedding.source.ring, embedding.source.nvars
    ambient = "proj" if embedding.source.kind == "cone" else "affine"
    if cont.is_constant:
        different = Divisor.zero(ring, m, ambient)
    else:
        different = Divisor.of_polynomial(cont, ambient)
    return restricted.saturate(), different


def restrict_foliation(fol: Foliation, embedding: RationalMap):
    """Restrict a foliation to a non-invariant subvariety.

    Returns (restricted foliation, different divisor): the different is the
    divisor of the content of the pulled-back form.
    """
    if fol.form.chart != embedding.target:
        raise ValueError("embedding does not land in the foliated space")
    restricted, different = restrict_form(embedding, fol.form)
    projective = embedding.source.kind == "cone"
    sub = from_form(
        restricted,
        projective=projective,
        auto_saturate=True,
        check_integrable=embedding.source.nvars >= 3,
    )
    return sub, different


# ---------------------------------------------------------------------------
# behavior of the degeneracy divisor under pullback


def verify_pullback_degeneracy(phi: RationalMap, fol: Foliation) -> dict:
    """Compare the degeneracy divisor of phi^* fol with the prediction
    from the ramification of phi.

    The correction over each ramification component H with coefficient r is
    -r*H when H is invariant for the pullback foliation, else +p*r*H when H
    is invariant for its p-curvature kernel distribution, -p*r*H extra when
    it is not (the two generic contributions cancelling to zero).
    """
    from .foliation import degeneracy_divisor

    pb = pullback_foliation(phi, fol)
    delta_g = degeneracy_divisor(fol)
    delta_f = degeneracy_divisor(pb)
    phi_delta_g = pullback_divisor(phi, delta_g)
    ram = ramification_divisor(phi)
    p = fol.p
    chart = pb.form.chart
    theta = None
    if chart.nvars >= 3:
        theta = p_kernel(pb).two_form
    ambient = "proj" if phi.is_projective else "affine"
    correction = Divisor.zero(chart.ring, chart.nvars, ambient)
    components = []
    for h, r in ram.normalize():
        f_inv = is_invariant_hypersurface(pb, h)
        k_inv = (
            is_invariant_for_two_form(theta, h) if theta is not None else None
        )
        term = Divisor(chart.ring, chart.nvars, [(h, r)], ambient)
        if f_inv:
            correction = correction - term
            if k_inv is False:
                correction = correction - p * term
        else:
            if k_inv:
                correction = correction + p * term
            # neither invariant: +p*r - p*r = 0
        components.append(
            {"component": h, "ram_mult": r, "f_invariant": f_inv,
             "kernel_invariant": k_inv}
        )
    predicted = phi_delta_g + correction
    return {
        "pullback": pb,
        "delta_pullback": delta_f,
        "pullback_of_delta": phi_delta_g,
        "ramification": ram,
        "ram_components": components,
        "predicted": predicted,
        "matches": delta_f == predicted,
    }
