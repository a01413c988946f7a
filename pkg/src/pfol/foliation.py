"""Codimension-one foliations and their p-curvature invariants.

A foliation is stored by a saturated integrable polynomial 1-form.  Affine
foliations live on an affine chart; projective ones are stored by a
homogeneous form on the cone (homogeneous coordinates x_0..x_n) that is
annihilated by the radial field, with divisor computations assembled from
the n+1 standard charts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import json

from .cartier import cartier_rational
from .exterior import (
    Chart,
    DiffForm,
    VectorField,
    affine_chart,
    cone_chart,
    euler_field,
    proj_chart,
    pullback_form,
)
from .mpoly import (
    MultiPoly,
    RationalFunction,
    gcd_list,
    gcd_multi,
    multiplicity_along,
    poly_str,
    squarefree_decomposition,
)


class ValidationError(ValueError):
    pass


class PClosedError(ArithmeticError):
    """Raised when an operation needs p-dense input but the foliation is p-closed."""


# ---------------------------------------------------------------------------
# divisors


def coprime_basis(polys) -> list[MultiPoly]:
    """A pairwise coprime monic squarefree basis generating the given polys.

    Every input (assumed squarefree) is a unit times a product of basis
    elements.
    """
    basis: list[MultiPoly] = []

    def insert(f: MultiPoly):
        f = f.monic()
        if f.is_constant:
            return
        for i, g in enumerate(basis):
            d = gcd_multi(f, g)
            if d.is_constant:
                continue
            if d == g:
                rest = f.exact_div(d)
                insert(rest)
                return
            basis[i] = d
            basis.append(g.exact_div(d))
            insert(f.exact_div(d))
            return
        basis.append(f)

    for f in polys:
        insert(f)
    basis.sort(key=lambda g: (g.total_degree(), poly_str(g)))
    return basis


class Divisor:
    """A formal Z-linear combination of hypersurfaces, given by polynomials.

    ``ambient`` is "affine" or "proj"; components of projective divisors are
    homogeneous polynomials in the homogeneous coordinates.
    """

    def __init__(self, ring, nvars: int, items, ambient: str = "affine"):
        self.ring = ring
        self.nvars = nvars
        self.ambient = ambient
        self.items = [(f, int(m)) for f, m in items if m != 0 and not f.is_constant]

    @classmethod
    def zero(cls, ring, nvars, ambient="affine") -> "Divisor":
        return cls(ring, nvars, [], ambient)

    @classmethod
    def of_polynomial(cls, f: MultiPoly, ambient="affine") -> "Divisor":
        """The divisor of zeros of f, with multiplicities."""
        if f.is_zero:
            raise ValueError("divisor of the zero polynomial")
        return cls(f.ring, f.nvars, squarefree_decomposition(f), ambient)

    def _check(self, other: "Divisor"):
        if (other.ring, other.nvars, other.ambient) != (
            self.ring,
            self.nvars,
            self.ambient,
        ):
            raise ValueError("divisors on different ambient spaces")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._check(other)
        return Divisor(self.ring, self.nvars, self.items + other.items, self.ambient)

    def __neg__(self) -> "Divisor":
        return Divisor(
            self.ring, self.nvars, [(f, -m) for f, m in self.items], self.ambient
        )

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __rmul__(self, k: int) -> "Divisor":
        return Divisor(
            self.ring, self.nvars, [(f, k * m) for f, m in self.items], self.ambient
        )

    __mul__ = __rmul__

    def normalize(self) -> list[tuple[MultiPoly, int]]:
        """Pairwise coprime monic squarefree components with multiplicities."""
        expanded: list[tuple[MultiPoly, int]] = []
        for f, m in self.items:
            for g, k in squarefree_decomposition(f):
                expanded.append((g, k * m))
        basis = coprime_basis([g for g, _ in expanded])
        mults = {i: 0 for i in range(len(basis))}
        for g, m in expanded:
            for i, b in enumerate(basis):
                if b.divides(g):
                    mults[i] += m
        out = [(b, mults[i]) for i, b in enumerate(basis) if mults[i] != 0]
        out.sort(key=lambda fm: (fm[0].total_degree(), poly_str(fm[0])))
        return out

    def is_effective(self) -> bool:
        return all(m > 0 for _, m in self.normalize())

    def is_zero(self) -> bool:
        return not self.normalize()

    def degree(self) -> int:
        return sum(m * f.total_degree() for f, m in self.normalize())

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        self._check(other)
        return (self - other).is_zero()

    def reduce_mults_mod(self, p: int) -> list[tuple[MultiPoly, int]]:
        return [(f, m % p) for f, m in self.normalize() if m % p]

    def to_json(self, names=None) -> list[dict]:
        return [
            {
                "component": poly_str(f, names),
                "multiplicity": m,
                "degree": f.total_degree(),
            }
            for f, m in self.normalize()
        ]

    def __repr__(self):
        parts = [f"{m}*({poly_str(f)})" for f, m in self.normalize()]
        return " + ".join(parts) if parts else "0"


def divisor_difference_of_closed_form(form: DiffForm, ambient="affine") -> Divisor:
    """(form)_infty - (form)_0 for a rational form: the divisor of its least
    common denominator minus the divisor of the content of its numerator."""
    den = form.common_denominator()
    numerator = form * den
    if not numerator.is_polynomial:
        raise ValueError("could not split the form into numerator and denominator")
    cont = numerator.content()
    ring, n = form.chart.ring, form.chart.nvars
    poles = (
        Divisor.of_polynomial(den, ambient)
        if not den.is_constant
        else Divisor.zero(ring, n, ambient)
    )
    zeros = (
        Divisor.of_polynomial(cont, ambient)
        if not cont.is_constant
        else Divisor.zero(ring, n, ambient)
    )
    return poles - zeros


# ---------------------------------------------------------------------------
# foliations


def koszul_fields(form: DiffForm) -> list[VectorField]:
    """The tangent fields a_j d_i - a_i d_j attached to a polynomial 1-form."""
    if form.q != 1:
        raise ValueError("Koszul fields need a 1-form")
    chart = form.chart
    n = chart.nvars
    a = [form.coeff((i,)) for i in range(n)]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            comps = [RationalFunction.from_poly(MultiPoly.zero(chart.ring, n))] * n
            comps = list(comps)
            comps[i] = a[j]
            comps[j] = -a[i]
            v = VectorField(chart, comps)
            if v:
                out.append(v)
    return out


class Foliation:
    """A codimension-one foliation given by a saturated polynomial 1-form."""

    def __init__(self, form: DiffForm, projective: bool, degree: int | None):
        self.form = form
        self.projective = projective
        self.degree = degree

    @property
    def chart(self) -> Chart:
        return self.form.chart

    @property
    def ring(self):
        return self.form.chart.ring

    @property
    def p(self) -> int:
        return self.ring.characteristic

    @property
    def n(self) -> int:
        """Dimension of the ambient variety."""
        return self.chart.nvars - 1 if self.projective else self.chart.nvars

    def __repr__(self):
        kind = f"P^{self.n}" if self.projective else f"A^{self.n}"
        return f"Foliation on {kind} by {self.form!r}"


def from_form(
    form: DiffForm,
    projective: bool = False,
    auto_saturate: bool = False,
    check_integrable: bool = True,
) -> Foliation:
    """Validate a defining 1-form and wrap it as a foliation."""
    if form.q != 1:
        raise ValidationError("a defining form must be a 1-form")
    if form.is_zero:
        raise ValidationError("the zero form defines no foliation")
    if not form.is_polynomial:
        form, _ = form.clear_denominators()
    if not form.content().is_constant:
        if auto_saturate:
            form = form.saturate()
        else:
            raise ValidationError("form is not saturated (divide by its content)")
    chart = form.chart
    degree = None
    if projective:
        if chart.kind != "cone":
            raise ValidationError("projective forms live in homogeneous coordinates")
        d = form.max_coeff_degree()
        if not form.is_homogeneous_of(d):
            raise ValidationError("coefficients must be homogeneous of equal degree")
        if form.pair(euler_field(chart)):
            raise ValidationError("form is not annihilated by the radial field")
        degree = d - 1
    if check_integrable and chart.nvars >= 3:
        if form.wedge(form.d()):
            raise ValidationError("form is not integrable")
    return Foliation(form, projective, degree)


def projectivize(form: DiffForm, proj_dim: int | None = None,
                 chart_index: int = 0) -> Foliation:
    """Homogenize an affine 1-form into a projective foliation.

    The affine chart is taken to be the standard chart {x_j != 0}; the
    missing coefficient is recovered from the radial relation and the
    result is saturated (dropping a spurious power of x_j when the top
    graded piece of the affine form is radial)."""
    if form.q != 1:
        raise ValidationError("projectivization needs a 1-form")
    if not form.is_polynomial:
        raise ValidationError("clear denominators before projectivizing")
    n = proj_dim if proj_dim is not None else form.chart.nvars
    if form.chart.nvars != n:
        raise ValidationError("chart dimension mismatch")
    j = chart_index
    ring = form.chart.ring
    cone = cone_chart(ring, n)
    m = form.max_coeff_degree()
    coeffs_h: dict[int, MultiPoly] = {}
    for (i,), c in form.poly_terms().items():
        glob = i if i < j else i + 1
        coeffs_h[glob] = c.homogenize(j, m + 1)
    acc = MultiPoly.zero(ring, n + 1)
    for glob, a in coeffs_h.items():
        acc = acc + MultiPoly.var(ring, n + 1, glob) * a
    xj = MultiPoly.var(ring, n + 1, j)
    coeffs_h[j] = -acc.exact_div(xj)
    hom = DiffForm(cone, 1, {(g,): c for g, c in coeffs_h.items()})
    return from_form(hom, projective=True, auto_saturate=True)


def log_foliation(components, weights, projective: bool = False) -> Foliation:
    """The foliation sum_i w_i * dF_i/F_i, cleared of denominators.

    Components must be squarefree and pairwise coprime; in the projective
    case they must be homogeneous with sum w_i deg F_i = 0.
    """
    if len(components) != len(weights) or len(components) < 2:
        raise ValidationError("need matching components and weights, at least two")
    ring = components[0].ring
    n = components[0].nvars
    weights = [ring.coerce(w) for w in weights]
    for f in components:
        if f.is_zero or f.is_constant:
            raise ValidationError("components must be non-constant")
        if any(m > 1 for _, m in squarefree_decomposition(f)):
            raise ValidationError("components must be squarefree")
    for i in range(len(components)):
        if not weights[i]:
            raise ValidationError("weights must be nonzero")
        for j in range(i + 1, len(components)):
            if not gcd_multi(components[i], components[j]).is_constant:
                raise ValidationError("components must be pairwise coprime")
    if projective:
        chart = cone_chart(ring, n - 1)
        total = ring.zero()
        for f, w in zip(components, weights):
            if not f.is_homogeneous():
                raise ValidationError("projective components must be homogeneous")
            total = total + w * ring.coerce(f.total_degree())
        if total:
            raise ValidationError("weighted degrees must sum to zero")
    else:
        chart = affine_chart(ring, n)
    form = chart.zero_form(1)
    for i, (f, w) in enumerate(zip(components, weights)):
        rest = MultiPoly.one(ring, n)
        for j, g in enumerate(components):
            if j != i:
                rest = rest * g
        df = DiffForm(chart, 1, {(k,): f.deriv(k) for k in range(n)})
        form = form + df * (rest * w)
    return from_form(form, projective=projective, auto_saturate=True)


# ---------------------------------------------------------------------------
# p-curvature and the degeneracy divisor


def p_curvature(fol: Foliation, v: VectorField) -> RationalFunction:
    """psi(v) = omega(v^p): the obstruction to v^p staying tangent."""
    if fol.p == 0:
        raise ArithmeticError("p-curvature needs positive characteristic")
    return fol.form.pair(v.pth_power())


def is_p_closed(fol: Foliation) -> bool:
    return all(not p_curvature(fol, v) for v in koszul_fields(fol.form))


def _affine_restriction(fol: Foliation, j: int) -> DiffForm | None:
    """The saturated chart form on the standard chart {x_j != 0}."""
    if not fol.projective:
        raise ValueError("chart restrictions need a projective foliation")
    chart = proj_chart(fol.ring, fol.n, j)
    terms = {}
    for (i,), c in fol.form.poly_terms().items():
        if i == j:
            continue
        pos = i if i < j else i - 1
        terms[(pos,)] = c.set_var_one(j)
    form = DiffForm(chart, 1, terms)
    if form.is_zero:
        return None
    return form.saturate()


def _chart_pcurvature_gcd(form: DiffForm) -> MultiPoly | None:
    """gcd of omega(v^p) over the Koszul generators; None if all vanish."""
    vals = []
    for v in koszul_fields(form):
        val = form.pair(v.pth_power())
        if val:
            vals.append(val.as_poly())
    if not vals:
        return None
    return gcd_list(vals).monic()


def degeneracy_divisor(fol: Foliation) -> Divisor:
    """The degeneracy divisor: gcd over tangent generators of omega(v^p).

    For projective foliations the divisor is assembled from all n+1
    standard charts, matching components through homogenization.
    """
    if not fol.projective:
        g = _chart_pcurvature_gcd(fol.form)
        if g is None:
            raise PClosedError("foliation is p-closed; no degeneracy divisor")
        return Divisor.of_polynomial(g, "affine")

    n = fol.n
    ring = fol.ring
    chart_gcds: dict[int, MultiPoly] = {}
    candidates: list[MultiPoly] = []
    any_dense = False
    for j in range(n + 1):
        form_j = _affine_restriction(fol, j)
        if form_j is None:
            continue
        g = _chart_pcurvature_gcd(form_j)
        if g is None:
            continue
        any_dense = True
        chart_gcds[j] = g
        for comp, _ in squarefree_decomposition(g):
            if comp.is_constant:
                continue
            candidates.append(comp.homogenize(j))
    if not any_dense:
        raise PClosedError("foliation is p-closed; no degeneracy divisor")
    basis = coprime_basis(candidates)
    items = []
    for h in basis:
        mults = set()
        for j, g in chart_gcds.items():
            h_aff = h.set_var_one(j)
            if h_aff.is_constant:
                continue
            mults.add(multiplicity_along(g, h_aff))
        if not mults:
            raise AssertionError("component invisible on every chart")
        if len(mults) != 1:
            raise AssertionError(
                f"inconsistent chart multiplicities {mults} for {poly_str(h)}"
            )
        m = mults.pop()
        if m:
            items.append((h, m))
    return Divisor(ring, n + 1, items, "proj")


def closed_defining_form(fol: Foliation) -> DiffForm:
    """omega / omega(v^p) for a tangent generator with omega(v^p) != 0.

    The result is a closed rational form defining the same foliation; its
    polar and zero divisors recover the degeneracy divisor modulo p.
    """
    if fol.p == 0:
        raise ArithmeticError("needs positive characteristic")
    for v in koszul_fields(fol.form):
        f = p_curvature(fol, v)
        if f:
            omega_prime = fol.form * (1 / f)
            if omega_prime.d():
                raise AssertionError("omega / omega(v^p) failed to be closed")
            return omega_prime
    raise PClosedError("foliation is p-closed; no closed defining form")


@dataclass
class KernelResult:
    """The p-curvature kernel distribution, cut out by a saturated 2-form."""

    two_form: DiffForm
    degree: int | None  # degree as a codimension-2 distribution (projective)


def p_kernel(fol: Foliation) -> KernelResult:
    """The codimension-two distribution annihilating the p-curvature.

    Computed as the saturation of omega /\\ C(omega'), where omega' is the
    closed defining form.
    """
    if fol.chart.nvars < 3:
        raise ValueError("the kernel distribution needs ambient dimension >= 3")
    omega_prime = closed_defining_form(fol)
    eta = cartier_rational(omega_prime)
    theta = fol.form.wedge(eta)
    if theta.is_zero:
        raise ArithmeticError("kernel 2-form vanishes identically")
    theta, _ = theta.clear_denominators()
    theta = theta.saturate()
    degree = None
    if fol.projective:
        if theta.contract(euler_field(fol.chart)):
            raise AssertionError("kernel 2-form not radial-invariant")
        degree = theta.max_coeff_degree() - 1
    return KernelResult(theta, degree)


def cartier_transform_foliation(fol: Foliation) -> tuple[DiffForm, bool]:
    """The saturated Cartier transform C(omega') and its integrability flag."""
    omega_prime = closed_defining_form(fol)
    eta = cartier_rational(omega_prime)
    if eta.is_zero:
        raise ArithmeticError("Cartier transform vanishes identically")
    eta, _ = eta.clear_denominators()
    eta = eta.saturate()
    integrable = True
    if fol.chart.nvars >= 3:
        integrable = not eta.wedge(eta.d())
    return eta, integrable


def is_invariant_hypersurface(fol: Foliation, h: MultiPoly) -> bool:
    """Whether {h = 0} is invariant: h divides every coefficient of
    omega /\\ dh."""
    chart = fol.chart
    dh = DiffForm(chart, 1, {(i,): h.deriv(i) for i in range(chart.nvars)})
    w = fol.form.wedge(dh)
    return all(h.divides(c.as_poly()) for c in w.terms.values())


def is_invariant_for_two_form(theta: DiffForm, h: MultiPoly) -> bool:
    """Whether {h = 0} is invariant for the distribution cut out by a 2-form:
    h divides every coefficient of dh /\\ theta."""
    chart = theta.chart
    dh = DiffForm(chart, 1, {(i,): h.deriv(i) for i in range(chart.nvars)})
    w = dh.wedge(theta)
    return all(h.divides(c.as_poly()) for c in w.terms.values())


def intersect_distributions(f1: Foliation, f2: Foliation):
    """Intersect two distinct foliations into a codimension-two distribution.

    Returns (saturated 2-form, excess divisor of the removed content).
    """
    if f1.chart != f2.chart or f1.projective != f2.projective:
        raise ValueError("foliations on different ambient spaces")
    theta = f1.form.wedge(f2.form)
    if theta.is_zero:
        raise ValueError("the two foliations coincide")
    cont = theta.content()
    ambient = "proj" if f1.projective else "affine"
    ring, n = f1.ring, f1.chart.nvars
    if cont.is_constant:
        excess = Divisor.zero(ring, n, ambient)
    else:
        excess = Divisor.of_polynomial(cont, ambient)
    return theta.saturate(), excess


# ---------------------------------------------------------------------------
# reports


@dataclass
class PCurvatureReport:
    p: int
    field: str
    ambient: str
    n: int
    p_closed: bool
    deg_F: int | None = None
    degeneracy: list = field(default_factory=list)
    deg_degeneracy: int | None = None
    deg_kernel: int | None = None
    predicted_deg_degeneracy: int | None = None
    cartier_integrable: bool | None = None

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2)


def predicted_degeneracy_degree(p: int, deg_f: int, deg_kernel: int) -> int:
    """Degree of the degeneracy divisor on P^n predicted by the canonical
    bundle bookkeeping: p*(deg F - deg Fdel - 1) + deg F + 2, where the
    kernel distribution of a foliated surface counts with degree zero and
    dimension one less."""
    return p * (deg_f - deg_kernel - 1) + deg_f + 2


def analyze(fol: Foliation, names=None) -> PCurvatureReport:
    """Full p-curvature report for a foliation."""
    closed = is_p_closed(fol)
    ambient = f"P^{fol.n}" if fol.projective else f"A^{fol.n}"
    report = PCurvatureReport(
        p=fol.p,
        field=fol.ring.descriptor(),
        ambient=ambient,
        n=fol.n,
        p_closed=closed,
        deg_F=fol.degree,
    )
    if closed:
        return report
    delta = degeneracy_divisor(fol)
    report.degeneracy = delta.to_json(names)
    report.deg_degeneracy = delta.degree()
    _, integrable = cartier_transform_foliation(fol)
    report.cartier_integrable = integrable
    if fol.projective:
        if fol.n >= 3:
            kernel = p_kernel(fol)
            report.deg_kernel = kernel.degree
        else:
            report.deg_kernel = 0
        report.predicted_deg_degeneracy = predicted_degeneracy_degree(
            fol.p, fol.degree, report.deg_kernel
        )
    return report
