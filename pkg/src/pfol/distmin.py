"""Minimal-degree codimension-two subdistributions of projective foliations.

A candidate subdistribution of degree delta is encoded by a projective
2-form Theta with polynomial coefficients of degree delta+1 subject to the
exact linear constraints i_R Theta = 0 (radial contraction) and
Theta /\\ omega = 0 (tangency to the foliation).  The search sweeps delta
upward, rejecting solutions with nonunit content and verifying corank 2 at
random points; witnesses are tested for integrability by bracket-closing
their kernel fields over the rational function field.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .exterior import DiffForm, VectorField, euler_field
from .foliation import Foliation
from .mpoly import MultiPoly, RationalFunction
from .rings import GF


# ---------------------------------------------------------------------------
# sparse exact linear algebra (rows are dicts column -> nonzero value)


def rref(rows: list[dict]) -> dict[int, dict]:
    """Reduced row echelon form; returns {pivot column: reduced row}."""
    pivots: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        # reduce against existing pivots
        changed = True
        while changed:
            changed = False
            for col in sorted(row):
                if col in pivots:
                    factor = row[col]
                    for c, v in pivots[col].items():
                        nv = row.get(c)
                        nv = -factor * v if nv is None else nv - factor * v
                        if nv:
                            row[c] = nv
                        else:
                            row.pop(c, None)
                    changed = True
                    break
        if not row:
            continue
        lead = min(row)
        inv_val = row[lead]
        row = {c: v / inv_val for c, v in row.items()}
        # eliminate the new pivot from stored rows
        for pc, prow in pivots.items():
            if lead in prow:
                factor = prow[lead]
                for c, v in row.items():
                    nv = prow.get(c)
                    nv = -factor * v if nv is None else nv - factor * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        pivots[lead] = row
    return pivots


def nullspace(rows: list[dict], ncols: int, one) -> list[dict]:
    """A basis of the kernel of the matrix, as sparse vectors."""
    pivots = rref(rows)
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free_cols:
        vec = {f: one}
        for pc, prow in pivots.items():
            v = prow.get(f)
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis


def rank_of(rows: list[dict]) -> int:
    return len(rref(rows))


# ---------------------------------------------------------------------------
# constraint assembly


def _monomials(nvars: int, d: int):
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(d + nvars - 2 - prev)
        yield tuple(exps)


@dataclass
class SubdistributionSystem:
    delta: int
    unknowns: list  # (index pair, exponent tuple)
    dimension: int
    basis: list  # solution 2-forms


def subdistribution_space(fol: Foliation, delta: int) -> SubdistributionSystem:
    """Assemble and solve the linear system for degree-delta candidates."""
    if not fol.projective:
        raise ValueError("the subdistribution search is projective")
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    chart = fol.chart
    ring = chart.ring
    n1 = chart.nvars
    pairs = list(itertools.combinations(range(n1), 2))
    monos = list(_monomials(n1, delta + 1))
    unknowns = [(pair, m) for pair in pairs for m in monos]
    index = {u: i for i, u in enumerate(unknowns)}
    radial = euler_field(chart)
    constraints: dict = {}

    def add(key, col, val):
        row = constraints.setdefault(key, {})
        cur = row.get(col)
        cur = val if cur is None else cur + val
        if cur:
            row[col] = cur
        else:
            row.pop(col, None)

    for u_idx, (pair, m) in enumerate(unknowns):
        basis_form = DiffForm(chart, 2, {pair: MultiPoly.monomial(ring, n1, m)})
        contracted = basis_form.contract(radial)
        for idx, c in contracted.terms.items():
            for e, v in c.as_poly().terms.items():
                add(("r", idx, e), u_idx, v)
        wedged = basis_form.wedge(fol.form)
        for idx, c in wedged.terms.items():
            for e, v in c.as_poly().terms.items():
                add(("w", idx, e), u_idx, v)

    rows = [constraints[k] for k in sorted(constraints, key=repr)]
    kernel = nullspace(rows, len(unknowns), ring.one())
    basis = []
    for vec in kernel:
        terms: dict = {}
        for col, val in vec.items():
            pair, m = unknowns[col]
            mono = MultiPoly.monomial(ring, n1, m, val)
            cur = terms.get(pair)
            terms[pair] = mono if cur is None else cur + mono
        basis.append(DiffForm(chart, 2, terms))
    return SubdistributionSystem(delta, unknowns, len(basis), basis)


# ---------------------------------------------------------------------------
# witness validation


def _sampling_field(ring):
    """A field with enough points for probabilistic rank checks, plus an
    embedding of coefficients."""
    if isinstance(ring, GF):
        if ring.order < 30 and ring.k == 1:
            ext = GF(ring.p, 3)
            return ext, lambda c: ext.coerce(c.coeffs[0])
        return ring, lambda c: c
    return ring, lambda c: c  # Q: plenty of points


def _eval_embedded(poly: MultiPoly, pt, embed):
    acc = None
    for e, c in poly.terms.items():
        t = embed(c)
        for v, k in zip(pt, e):
            for _ in range(k):
                t = t * v
        acc = t if acc is None else acc + t
    return acc


def _rank_at_point(theta: DiffForm, pt, sample_field, embed) -> int:
    n1 = theta.chart.nvars
    rows = []
    for i in range(n1):
        row = {}
        for j in range(n1):
            if i == j:
                continue
            c = theta.coeff((i, j))
            if not c:
                continue
            val = _eval_embedded(c.as_poly(), pt, embed)
            if val:
                row[j] = val
        rows.append(row)
    return rank_of(rows)


def _corank_two_at_random(theta: DiffForm, rng, tries: int = 5) -> bool:
    ring = theta.chart.ring
    sample_field, embed = _sampling_field(ring)
    n1 = theta.chart.nvars
    best = 0
    for _ in range(tries):
        if isinstance(sample_field, GF):
            pt = [sample_field.random(rng) for _ in range(n1)]
        else:
            pt = [Fraction(rng.randint(-50, 50)) for _ in range(n1)]
        best = max(best, _rank_at_point(theta, pt, sample_field, embed))
        if best > 2:
            return False
    return best == 2


def witness_integrability(theta: DiffForm) -> bool:
    """Bracket-closure test for the kernel distribution of a 2-form.

    Kernel fields are computed exactly over the rational function field;
    the distribution is integrable iff the bracket of any two kernel fields
    is again annihilated by the 2-form.
    """
    chart = theta.chart
    n1 = chart.nvars
    zero_rf = RationalFunction.from_poly(MultiPoly.zero(chart.ring, n1))
    one_rf = RationalFunction.from_poly(MultiPoly.one(chart.ring, n1))
    rows = []
    for j in range(n1):
        row = {}
        for i in range(n1):
            c = theta.coeff((i, j))
            if c:
                row[i] = c
        rows.append(row)
    kernel = nullspace(rows, n1, one_rf)
    fields = []
    for vec in kernel:
        comps = [vec.get(i, zero_rf) for i in range(n1)]
        fields.append(VectorField(chart, comps))
    for a in range(len(fields)):
        for b in range(a + 1, len(fields)):
            bracket = fields[a].lie_bracket(fields[b])
            if theta.contract(bracket):
                return False
    return True


@dataclass
class DistminResult:
    delta: int | None
    witness: DiffForm | None
    integrable: bool | None
    dimensions: list = dc_field(default_factory=list)
    candidates_checked: int = 0


def distmin2(fol: Foliation, delta_max: int | None = None, seed: int = 0) -> DistminResult:
    """The minimal degree of a codimension-two subdistribution, with witness.

    Sweeps delta from 0 to delta_max (default deg F, which always carries
    the obvious subdistributions omega /\\ dl).  A delta is accepted when
    some solution has unit content and corank 2 at random points.
    """
    if delta_max is None:
        delta_max = fol.degree
    rng = random.Random(seed)
    dims: list[int] = []
    checked = 0
    for delta in range(delta_max + 1):
        system = subdistribution_space(fol, delta)
        if dims and system.dimension < dims[-1]:
            raise AssertionError("solution dimension decreased with delta")
        dims.append(system.dimension)
        candidates = list(system.basis)
        # a witness may hide in the span even if no basis vector qualifies
        if len(system.basis) > 1:
            ring = fol.ring
            for _ in range(10):
                combo = fol.chart.zero_form(2)
                for b in system.basis:
                    if isinstance(ring, GF):
                        c = ring.random(rng)
                    else:
                        c = Fraction(rng.randint(-9, 9))
                    combo = combo + b * c
                if combo:
                    candidates.append(combo)
        for theta in candidates:
            if theta.is_zero:
                continue
            checked += 1
            if not theta.content().is_constant:
                continue
            if not _corank_two_at_random(theta, rng):
                continue
            return DistminResult(
                delta, theta, witness_integrability(theta), dims, checked
            )
    return DistminResult(None, None, None, dims, checked)
