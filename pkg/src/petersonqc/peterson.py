"""Presentations of the Peterson scheme cells and the centralizer scheme.

The cell presentation lives on the translated opposite big cell of the dual
flag variety: coordinates ``y_<root>`` on the product of negative root
groups indexed by the positive roots outside the Levi, equivariant
parameters ``h_j``, and quantum parameters ``q_i`` for the simple roots not
in the parabolic.  Generators are matrix coefficients of the translated
cyclic element in the adjoint representation.

All builds are pure functions of their arguments; intermediate Groebner
data is recomputed on demand.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import chevalley as ch
from . import polyalg as pa
from . import rootdata as rd
from .errors import PreconditionError, StructuralError


def _digits(vec):
    return "".join(str(x) for x in vec)


def cell_roots(datum, parabolic):
    """Positive roots outside the Levi, in canonical order; these index the
    coordinates of the unipotent cell."""
    levi = set(parabolic.R_P_plus)
    return tuple(a for a in datum.positive_roots if a not in levi)


def quantum_degree(datum, parabolic, i):
    """Degree of the quantum parameter ``q_i``:
    ``2 * sum of alpha(alpha_i^vee)`` over positive roots outside the Levi."""
    ai = datum.simple_coroot(i)
    levi = set(parabolic.R_P_plus)
    return 2 * sum(datum.pair(a, ai) for a in datum.positive_roots if a not in levi)


@dataclass(frozen=True, eq=False)
class SchemePresentation:
    """A finitely presented ring with tagged coordinates.

    ``coordinate_roles`` maps each variable to one of ``cell``,
    ``equivariant``, ``quantum``, ``torus``, ``unipotent_plus`` or
    ``auxiliary``; ``weights`` carries the multiplicative-group grading and
    ``qbar`` the distinguished quantum-parameter functions (all simple
    indices, 1-based list order).
    """

    datum: rd.RootDatum
    parabolic: rd.ParabolicData
    equivariant: bool
    kind: str                  # "cell", "cell_localized", "centralizer"
    ideal: pa.IdealPresentation
    coordinate_roles: dict
    qbar: tuple
    weights: dict

    @property
    def ring(self):
        return self.ideal.ring

    def cell_variables(self):
        return tuple(v for v in self.ring.variables
                     if self.coordinate_roles.get(v) == "cell")

    def __repr__(self):
        return (f"SchemePresentation({self.kind}, {self.datum.lie_type}"
                f"{self.datum.rank}, excluded={list(self.parabolic.excluded_simples)})")


def _weyl_translate_inverse(algebra, parabolic, ring):
    """Adjoint matrix of ``(w_P w_0)``-representative inverse."""
    w0 = rd.longest_element(algebra.datum)
    return (ch.weyl_rep_inverse(algebra, w0, ring)
            * ch.weyl_rep_inverse(algebra, parabolic.w_P, ring))


def _translated_element(datum, parabolic, ring, cell_names, equivariant,
                        pairs=None):
    """``(u w_P w_0)^{-1} . e^T(h)`` as a LieElement over ``ring``."""
    algebra = ch.build_chevalley(datum)
    vec = ch.build_eT(algebra, ring, equivariant=equivariant)
    if pairs is None:
        pairs = tuple(zip(cell_roots(datum, parabolic), cell_names))
    for a, name in pairs:
        coroot = datum.coroot_of(a)
        vec = ch.apply_exp_ad(algebra, rd.neg(coroot), -ring.var(name), vec)
    return _weyl_translate_inverse(algebra, parabolic, ring).apply(vec)


def _component(datum, vec, root):
    algebra = vec.algebra
    return vec.component_on_coroot(datum.coroot_of(root))


def build_YP(datum, parabolic, equivariant=True, budget=pa.DEFAULT_BUDGET,
             factor_order=None):
    """The cell presentation of the Peterson scheme.

    Variables: one cell coordinate per positive root outside the Levi, the
    equivariant parameters, and one quantum variable per excluded simple
    index.  Generators: the coordinates of the translated cyclic element
    along all non-simple positive coroots (the vanishing conditions, some
    identically zero and kept for inspection), plus ``qbar_i - q_i`` for the
    excluded indices.

    ``factor_order`` optionally rearranges the product of cell root-group
    factors (variables keep their canonical names and ring positions); any
    order parametrizes the same unipotent subgroup.
    """
    croots = cell_roots(datum, parabolic)
    cell_names = tuple(f"y_{_digits(a)}" for a in croots)
    h_names = tuple(f"h_{j}" for j in range(1, datum.rank + 1)) if equivariant else ()
    q_names = tuple(f"q_{i}" for i in parabolic.excluded_simples)
    ring = pa.PolyRing(cell_names + h_names + q_names)

    if factor_order is None:
        pairs = None
    else:
        factor_order = tuple(tuple(a) for a in factor_order)
        if sorted(factor_order) != sorted(croots):
            raise PreconditionError("factor_order must permute the cell roots")
        name_of = dict(zip(croots, cell_names))
        pairs = tuple((a, name_of[a]) for a in factor_order)

    vec = _translated_element(datum, parabolic, ring, cell_names, equivariant,
                              pairs=pairs)

    w0 = rd.longest_element(datum)
    qbar = []
    for i in range(1, datum.rank + 1):
        target = rd.neg(w0.act_root(datum.simple_root(i)))
        comp = _component(datum, vec, target)
        qbar.append(comp * Fraction(1, datum.coroot_norms[i - 1]))

    generators = []
    for a in datum.positive_roots:
        if sum(a) > 1:  # non-simple
            generators.append(_component(datum, vec, a))
    for i in parabolic.excluded_simples:
        generators.append(qbar[i - 1] - ring.var(f"q_{i}"))

    roles = {}
    weights = {}
    for a, name in zip(croots, cell_names):
        roles[name] = "cell"
        weights[name] = datum.pair(datum.two_rho, datum.coroot_of(a))
    for name in h_names:
        roles[name] = "equivariant"
        weights[name] = 2
    for i in parabolic.excluded_simples:
        roles[f"q_{i}"] = "quantum"
        weights[f"q_{i}"] = quantum_degree(datum, parabolic, i)

    ideal = pa.IdealPresentation(ring, generators)
    return SchemePresentation(datum, parabolic, equivariant, "cell", ideal,
                              roles, tuple(qbar), weights)


def open_cell_cut_function(datum, parabolic, presentation):
    """A regular function vanishing exactly off the opposite big cell.

    Determinant of the adjoint action of ``u . (w_P w_0)``-representative
    restricted and projected to the span of the negative coroot vectors; on
    the big cell the action preserves that span up to lower-triangular
    change, so the determinant is invertible there and vanishes on every
    other Bruhat cell.
    """
    algebra = ch.build_chevalley(datum)
    ring = presentation.ring
    croots = cell_roots(datum, parabolic)
    wmat = (ch.weyl_rep(algebra, parabolic.w_P, ring)
            * ch.weyl_rep(algebra, rd.longest_element(datum), ring))
    neg_idx = [algebra.e_index(rd.neg(c)) for c in datum.positive_coroots]
    cols = []
    for j in neg_idx:
        vec = wmat.column(j)
        for a, name in zip(reversed(croots), reversed(presentation.cell_variables())):
            coroot = datum.coroot_of(a)
            vec = ch.apply_exp_ad(algebra, rd.neg(coroot), ring.var(name), vec)
        cols.append([vec.coeffs.get(i, ring.zero()) for i in neg_idx])
    n = len(neg_idx)
    return _determinant([[cols[j][i] for j in range(n)] for i in range(n)], ring)


def _determinant(rows, ring):
    """Exact determinant by expansion over column subsets (Laplace memo)."""
    n = len(rows)
    if n == 0:
        return ring.one()

    @functools.lru_cache(maxsize=None)
    def minor(row, cols):
        if row == n:
            return ring.one()
        acc = ring.zero()
        sign = 1
        for pos, c in enumerate(cols):
            entry = rows[row][c]
            if not entry.is_zero():
                sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
                acc = acc + entry * sub * sign
            sign = -sign
        return acc

    return minor(0, tuple(range(n)))


def build_YP_star(datum, parabolic, equivariant=True, budget=pa.DEFAULT_BUDGET):
    """The cell presentation with the complement of the opposite big cell
    removed: the cut function is inverted through an auxiliary variable."""
    base = build_YP(datum, parabolic, equivariant, budget)
    cut = open_cell_cut_function(datum, parabolic, base)
    ideal = pa.localize(base.ideal, cut, "v_cell")
    roles = dict(base.coordinate_roles)
    roles["v_cell"] = "auxiliary"
    return SchemePresentation(datum, parabolic, equivariant, "cell_localized",
                              ideal, roles, base.qbar, dict(base.weights))


def build_centralizer(datum, equivariant=True):
    """The centralizer of the cyclic element inside the dual Borel.

    Variables: torus coordinates ``z_i`` (inverted via ``zi_i``), positive
    unipotent coordinates ``x_<root>``, equivariant parameters.  Generators
    are the positive-coroot components of ``Ad(t u) . e^T(h) - e^T(h)`` plus
    the torus inversion relations.
    """
    algebra = ch.build_chevalley(datum)
    r = datum.rank
    z_names = tuple(f"z_{i}" for i in range(1, r + 1))
    x_names = tuple(f"x_{_digits(a)}" for a in datum.positive_roots)
    h_names = tuple(f"h_{j}" for j in range(1, r + 1)) if equivariant else ()
    zi_names = tuple(f"zi_{i}" for i in range(1, r + 1))
    ring = pa.PolyRing(z_names + x_names + h_names + zi_names)

    vec = ch.build_eT(algebra, ring, equivariant=equivariant)
    base = vec
    for a, name in zip(reversed(datum.positive_roots), reversed(x_names)):
        coroot = datum.coroot_of(a)
        vec = ch.apply_exp_ad(algebra, coroot, ring.var(name), vec)
    torus = ch.torus_element(algebra,
                             [ring.var(n) for n in z_names],
                             inverses=[ring.var(n) for n in zi_names],
                             ring=ring)
    vec = torus.apply(vec)

    diff = vec - base
    generators = []
    for a in datum.positive_roots:
        generators.append(_component(datum, diff, a))
    for zn, zin in zip(z_names, zi_names):
        generators.append(ring.var(zn) * ring.var(zin) - ring.one())

    roles = {}
    weights = {}
    for name in z_names:
        roles[name] = "torus"
        weights[name] = 0
    for a, name in zip(datum.positive_roots, x_names):
        roles[name] = "unipotent_plus"
        weights[name] = -datum.pair(datum.two_rho, datum.coroot_of(a))
    for name in h_names:
        roles[name] = "equivariant"
        weights[name] = 2
    for name in zi_names:
        roles[name] = "auxiliary"
        weights[name] = 0

    trivial = rd.build_parabolic(datum, ())
    ideal = pa.IdealPresentation(ring, generators,
                                 inverted=tuple(ring.var(n) for n in z_names))
    return SchemePresentation(datum, trivial, equivariant, "centralizer",
                              ideal, roles, (), weights)


def qbar_values(presentation, i):
    """The stored quantum-parameter function for the 1-based simple index."""
    if not 1 <= i <= presentation.datum.rank:
        raise PreconditionError(f"index {i} out of range")
    return presentation.qbar[i - 1]


# -- fibers and rank -----------------------------------------------------------

def _parameter_names(presentation):
    return [v for v in presentation.ring.variables
            if presentation.coordinate_roles.get(v) in ("equivariant", "quantum")]


def fiber_analysis(presentation, budget=pa.DEFAULT_BUDGET):
    """Dimension and support of the fiber over the origin of the base.

    All equivariant and quantum variables are set to zero; the result is the
    quotient dimension together with whether every cell coordinate is
    nilpotent there (radical membership through an auxiliary inverse)."""
    if presentation.kind != "cell":
        raise PreconditionError("fiber analysis expects a plain cell presentation")
    assignment = {name: Fraction(0) for name in _parameter_names(presentation)}
    fiber = pa.specialize(presentation.ideal, assignment)
    dim = pa.quotient_dimension(fiber, budget=budget)
    supported = True
    for name in presentation.cell_variables():
        if not pa.radical_membership(fiber, fiber.ring.var(name), budget=budget):
            supported = False
            break
    return dim, supported


def _random_rational(rng):
    num = rng.choice([n for n in range(-19, 20) if n != 0])
    den = rng.choice([1, 2, 3, 5, 7])
    return Fraction(num, den)


def generic_rank(presentation, seeds=(11, 23, 47), symbolic=False,
                 budget=pa.DEFAULT_BUDGET):
    """The quotient dimension over a generic point of the base.

    Equivariant and quantum variables are specialized at random rationals
    for every seed; all seeds must agree (semicontinuity makes each run a
    lower bound, so agreement across independent points pins the generic
    value).  With ``symbolic=True`` a block-order Groebner run over the
    unspecialized base is computed as well and must agree.
    """
    if not seeds:
        raise PreconditionError("generic_rank needs at least one seed")
    params = _parameter_names(presentation)
    dims = []
    for seed in seeds:
        rng = random.Random(seed)
        assignment = {name: _random_rational(rng) for name in params}
        inst = pa.specialize(presentation.ideal, assignment)
        dims.append(pa.quotient_dimension(inst, budget=budget))
    if len(set(dims)) != 1:
        raise StructuralError(f"seed disagreement in generic rank: {dims}")
    if symbolic:
        sym = _symbolic_rank(presentation, budget)
        if sym != dims[0]:
            raise StructuralError(
                f"symbolic generic rank {sym} disagrees with specialized {dims[0]}")
    return dims[0]


def _symbolic_rank(presentation, budget):
    """Generic rank via a block order with the non-base variables dominant."""
    ring = presentation.ring
    params = set(_parameter_names(presentation))
    front = [v for v in ring.variables if v not in params]
    back = [v for v in ring.variables if v in params]
    block_ring = pa.PolyRing(tuple(front) + tuple(back),
                             order=("block", len(front)))
    gens = [g.lift(block_ring) for g in presentation.ideal.generators]
    gb = pa.groebner(gens, budget=budget)
    k = len(front)
    lms = []
    for g in gb:
        lm = g.lead_monomial()
        head = lm[:k]
        if not any(head):
            raise StructuralError("parameter-only leading term in symbolic rank")
        lms.append(head)
    # count staircase complement in the front block
    bounds = [None] * k
    for lm in lms:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or lm[i] < bounds[i]:
                bounds[i] = lm[i]
    if k and any(b is None for b in bounds):
        return "infinite"
    count = 0
    stack = [(0,) * k]
    seen = {(0,) * k}
    while stack:
        m = stack.pop()
        count += 1
        for i in range(k):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1:]
            if m2 in seen or m2[i] >= bounds[i]:
                continue
            if any(pa._mono_divides(lm, m2) for lm in lms):
                continue
            seen.add(m2)
            stack.append(m2)
    return count


def redundancy_check(datum, parabolic, equivariant=True):
    """Whether the vanishing conditions indexed by non-simple positive roots
    inside ``-w_0`` of the Levi are identically zero polynomials."""
    croots = cell_roots(datum, parabolic)
    cell_names = tuple(f"y_{_digits(a)}" for a in croots)
    h_names = tuple(f"h_{j}" for j in range(1, datum.rank + 1)) if equivariant else ()
    ring = pa.PolyRing(cell_names + h_names)
    vec = _translated_element(datum, parabolic, ring, cell_names, equivariant)
    w0 = rd.longest_element(datum)
    for a in parabolic.R_P_plus:
        target = rd.neg(w0.act_root(a))
        if sum(target) > 1:
            if not _component(datum, vec, target).is_zero():
                return False
    return True


# -- localized quantum parameters on the centralizer ---------------------------

def _poly_substitute_ratfunc(p, var_name, num, den):
    """Clear ``var = num/den`` inside ``p``; returns the numerator polynomial
    of the substituted expression (denominator is a power of ``den``)."""
    ring = p.ring
    idx = ring.index(var_name)
    by_power = {}
    for m, c in p.terms.items():
        k = m[idx]
        m0 = m[:idx] + (0,) + m[idx + 1:]
        bucket = by_power.setdefault(k, {})
        bucket[m0] = bucket.get(m0, Fraction(0)) + c
    if not by_power:
        return p
    top = max(by_power)
    out = ring.zero()
    for k, bucket in by_power.items():
        piece = pa.Poly(ring, bucket) * num ** k * den ** (top - k)
        out = out + piece
    return out


def _centralizer_base_ring(datum, equivariant):
    z_names = tuple(f"z_{m}" for m in range(1, datum.rank + 1))
    x_names = tuple(f"x_{_digits(a)}" for a in datum.positive_roots)
    h_names = tuple(f"h_{j}" for j in range(1, datum.rank + 1)) if equivariant else ()
    return pa.PolyRing(z_names + x_names + h_names), z_names, x_names


def inverse_cell_coordinates(datum, parabolic, equivariant=True):
    """Cell coordinates of the flag ``b^{-1} . base point`` for the generic
    Borel element ``b = t u``.

    Solved by triangular elimination ordered by root height: the unknown
    negative-unipotent coordinates are pinned one at a time by the linear
    conditions saying the conjugated matrix preserves the descending height
    filtration after untwisting by the ``(w_P w_0)``-representative.
    Raises StructuralError if the factorization fails identically.
    """
    algebra = ch.build_chevalley(datum)
    base_ring, z_names, x_names = _centralizer_base_ring(datum, equivariant)
    croots = cell_roots(datum, parabolic)
    ty_names = tuple(f"ty_{_digits(a)}" for a in croots)
    full_ring = pa.PolyRing(base_ring.variables + ty_names)
    field = pa.FractionField(full_ring)

    # G = Ad(b^{-1}) = Ad(u^{-1}) Ad(t^{-1}), column by column over the field
    columns = []
    for j, lab in enumerate(algebra.basis):
        if lab[0] == "h":
            vec = ch.LieElement(algebra, field, {j: field.one()})
        else:
            entry = field.one()
            for m in range(datum.rank):
                c = lab[1][m]
                zm = pa.RatFunc.of(full_ring.var(z_names[m]))
                base = zm.inverse() if c > 0 else zm
                for _ in range(abs(c)):
                    entry = entry * base
            vec = ch.LieElement(algebra, field, {j: entry})
        for a, name in zip(datum.positive_roots, x_names):
            coroot = datum.coroot_of(a)
            coeff = pa.RatFunc.of(-full_ring.var(name))
            vec = ch.apply_exp_ad(algebra, coroot, coeff, vec)
        columns.append(vec)

    # W^{-1} U(ty)^{-1} over the polynomial ring; U(ty) multiplies the cell
    # factors in canonical root order, so its inverse reverses them
    wu = _weyl_translate_inverse(algebra, parabolic, full_ring)
    for a, name in reversed(list(zip(croots, ty_names))):
        wu = wu * ch.exp_root(algebra, rd.neg(datum.coroot_of(a)),
                              -full_ring.var(name), full_ring)

    heights = [algebra.height(lab) for lab in algebra.basis]
    conditions = []
    for j in range(algebra.dim):
        col = columns[j]
        for i in range(algebra.dim):
            if heights[i] <= heights[j]:
                continue
            acc = field.zero()
            for k, gk in col.coeffs.items():
                w_entry = wu.matrix[i][k]
                if not w_entry.is_zero():
                    acc = acc + pa.RatFunc.of(w_entry) * gk
            if not acc.is_zero():
                conditions.append(acc.num)

    solved = {}
    pending = [c for c in conditions if not c.is_zero()]
    unsolved = set(ty_names)
    while unsolved:
        pick = None
        for cond in sorted(pending, key=lambda p: (len(p.terms), p.total_degree())):
            present = [n for n in unsolved if cond.degree_in(n) > 0]
            if len(present) == 1 and cond.degree_in(present[0]) == 1:
                pick = (cond, present[0])
                break
        if pick is None:
            raise StructuralError(
                "triangular elimination stalled; the factorization does not "
                "exist on this chart")
        cond, name = pick
        idx = full_ring.index(name)
        c1_terms, c0_terms = {}, {}
        for m, c in cond.terms.items():
            if m[idx] == 1:
                c1_terms[m[:idx] + (0,) + m[idx + 1:]] = c
            else:
                c0_terms[m] = c
        c1 = pa.Poly(full_ring, c1_terms)
        c0 = pa.Poly(full_ring, c0_terms)
        if c1.is_zero():
            raise StructuralError("degenerate pivot in triangular elimination")
        solved[name] = pa.RatFunc(-c0, c1)
        unsolved.discard(name)
        new_pending = []
        for p in pending:
            if p is cond:
                continue
            q = _poly_substitute_ratfunc(p, name, -c0, c1)
            if not q.is_zero():
                new_pending.append(q)
        pending = new_pending
    for p in pending:
        if not p.is_zero():
            raise StructuralError("factorization conditions are inconsistent")

    # restrict solved values to the base ring
    zero_ty = {n: Fraction(0) for n in ty_names}
    out = {}
    for a, name in zip(croots, ty_names):
        val = solved[name]
        out[a] = pa.RatFunc(val.num.substitute(zero_ty, base_ring),
                            val.den.substitute(zero_ty, base_ring))
    return out, base_ring


def qloc(datum, parabolic, i=None, equivariant=True):
    """Localized quantum-parameter functions on the centralizer chart.

    The value is the quantum-parameter function of the cell presentation
    evaluated at the cell coordinates of ``b^{-1} . base point``, i.e. the
    torus character read off the Bruhat-type factorization through the
    ``(w_P w_0)``-translated cell.  Returns a rational function in the
    centralizer coordinates (dict over all excluded indices, or a single
    value when ``i`` is given).
    """
    coords, base_ring = inverse_cell_coordinates(datum, parabolic, equivariant)
    algebra = ch.build_chevalley(datum)
    field = pa.FractionField(base_ring)
    vec = _lift_eT(algebra, field, base_ring, equivariant)
    for a in cell_roots(datum, parabolic):
        coroot = datum.coroot_of(a)
        vec = ch.apply_exp_ad(algebra, rd.neg(coroot), -coords[a], vec)
    wmat = _weyl_translate_inverse(algebra, parabolic, base_ring)
    out_vec = {}
    for k, gk in vec.coeffs.items():
        for row in range(algebra.dim):
            entry = wmat.matrix[row][k]
            if not entry.is_zero():
                cur = out_vec.get(row, field.zero())
                out_vec[row] = cur + pa.RatFunc.of(entry) * gk
    final = ch.LieElement(algebra, field, out_vec)

    w0 = rd.longest_element(datum)
    results = {}
    for j in parabolic.excluded_simples:
        target = rd.neg(w0.act_root(datum.simple_root(j)))
        comp = final.component_on_coroot(datum.coroot_of(target))
        results[j] = comp * Fraction(1, datum.coroot_norms[j - 1])
    if i is not None:
        if i not in results:
            raise PreconditionError(f"index {i} is not an excluded simple index")
        return results[i]
    return results


def _lift_eT(algebra, field, base_ring, equivariant):
    poly_vec = ch.build_eT(algebra, base_ring, equivariant=equivariant)
    return ch.LieElement(algebra, field,
                         {k: pa.RatFunc.of(v) for k, v in poly_vec.coeffs.items()})


# -- serialization ----------------------------------------------------------------

def presentation_json(presentation):
    """Plain-dict form with canonical polynomial text, stable across runs."""
    ring = presentation.ring
    return {
        "type": presentation.datum.lie_type,
        "rank": presentation.datum.rank,
        "parabolic": list(presentation.parabolic.included_simples),
        "equivariant": presentation.equivariant,
        "kind": presentation.kind,
        "variables": [
            {"name": v,
             "role": presentation.coordinate_roles.get(v, "auxiliary"),
             "weight": presentation.weights.get(v)}
            for v in ring.variables
        ],
        "generators": [pa.format_poly(g) for g in presentation.ideal.generators],
        "qbar": [pa.format_poly(q) for q in presentation.qbar],
        "inverted": [pa.format_poly(f) for f in presentation.ideal.inverted],
    }
