"""Exact multivariate polynomial arithmetic, Groebner bases and ideal tools.

Coefficients are arbitrary-precision rationals (``fractions.Fraction``).
Supported monomial orders are graded reverse lexicographic (``"grevlex"``,
the default) and lexicographic (``"lex"``); variables listed earlier in a
ring are larger.  Everything is immutable after construction and safe to
share between threads.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BudgetError, PreconditionError

DEFAULT_BUDGET = 200_000


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not a rational coefficient: {c!r}")


class PolyRing:
    """An ordered tuple of named variables over the rationals.

    ``weights`` optionally assigns an integer multiplicative-group weight to
    every variable; weights never influence monomial comparisons, they only
    feed quasi-homogeneity checks.
    """

    __slots__ = ("variables", "weights", "order", "_index")

    def __init__(self, variables, weights=None, order="grevlex"):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise PreconditionError(f"duplicate variable names: {self.variables}")
        block_ok = (isinstance(order, tuple) and len(order) == 2
                    and order[0] == "block" and isinstance(order[1], int))
        if order not in ("grevlex", "lex") and not block_ok:
            raise PreconditionError(f"unknown monomial order: {order}")
        self.order = order
        if weights is not None:
            weights = dict(weights)
            unknown = set(weights) - set(self.variables)
            if unknown:
                raise PreconditionError(f"weights for unknown variables: {sorted(unknown)}")
        self.weights = weights
        self._index = {name: i for i, name in enumerate(self.variables)}

    @property
    def nvars(self):
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.order))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, order={self.order!r})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise PreconditionError(f"unknown variable {name!r} in {self!r}") from None

    def zero(self):
        return Poly(self, {})

    def const(self, c):
        c = _as_fraction(c)
        if c == 0:
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c})

    def one(self):
        return self.const(1)

    def var(self, name):
        exps = [0] * self.nvars
        exps[self.index(name)] = 1
        return Poly(self, {tuple(exps): Fraction(1)})

    def monomial_key(self, order=None):
        """Sort key; max() of keys is the leading monomial."""
        order = order or self.order
        if order == "lex":
            return lambda m: m
        def grevlex(m):
            return (sum(m), tuple(-e for e in reversed(m)))
        if isinstance(order, tuple) and order[0] == "block":
            k = order[1]
            return lambda m: (grevlex(m[:k]), grevlex(m[k:]))
        return grevlex

    def extended(self, extra_names, order=None):
        return PolyRing(self.variables + tuple(extra_names), order=order or self.order)

    def restricted(self, names, order=None):
        keep = tuple(n for n in self.variables if n in set(names))
        return PolyRing(keep, order=order or self.order)

    def with_order(self, order):
        return PolyRing(self.variables, weights=self.weights, order=order)


class Poly:
    """Sparse polynomial: a map from exponent tuples to nonzero rationals."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}

    # -- basic predicates ------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self):
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise PreconditionError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        if not isinstance(other, Poly) or other.ring != self.ring:
            raise TypeError(f"cannot combine {self!r} with {other!r}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        res = dict(self.terms)
        for m, c in other.terms.items():
            res[m] = res.get(m, Fraction(0)) + c
        return Poly(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c0 = _as_fraction(other)
            return Poly(self.ring, {m: c * c0 for m, c in self.terms.items()})
        other = self._coerce(other)
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                res[m] = res.get(m, Fraction(0)) + c1 * c2
        return Poly(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise PreconditionError("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        return self * _as_fraction(c)

    # -- leading data ----------------------------------------------------
    def lead_monomial(self, order=None):
        if self.is_zero():
            return None
        key = self.ring.monomial_key(order)
        return max(self.terms, key=key)

    def lead_coeff(self, order=None):
        lm = self.lead_monomial(order)
        return Fraction(0) if lm is None else self.terms[lm]

    def monic(self, order=None):
        if self.is_zero():
            return self
        return self * (Fraction(1) / self.lead_coeff(order))

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=0)

    def degree_in(self, name):
        i = self.ring.index(name)
        return max((m[i] for m in self.terms), default=0)

    # -- weights ---------------------------------------------------------
    def monomial_weight(self, m, weights):
        w = 0
        for name, e in zip(self.ring.variables, m):
            if e:
                w += weights[name] * e
        return w

    # -- substitution ----------------------------------------------------
    def substitute(self, assignment, target_ring=None):
        """Substitute variables by rationals or polynomials of ``target_ring``.

        Unassigned variables must exist in the target ring under the same
        name; they are carried through.
        """
        ring = target_ring or self.ring
        images = []
        for name in self.ring.variables:
            if name in assignment:
                v = assignment[name]
                images.append(ring.const(v) if isinstance(v, (int, Fraction)) else v)
            else:
                images.append(ring.var(name))
        out = ring.zero()
        for m, c in self.terms.items():
            term = ring.const(c)
            for img, e in zip(images, m):
                if e:
                    term = term * img ** e
            out = out + term
        return out

    def lift(self, ring):
        """Re-express in a ring containing all variables of this one."""
        mapping = [ring.index(name) for name in self.ring.variables]
        res = {}
        for m, c in self.terms.items():
            exps = [0] * ring.nvars
            for src, dst in enumerate(mapping):
                exps[dst] = m[src]
            res[tuple(exps)] = res.get(tuple(exps), Fraction(0)) + c
        return Poly(ring, res)

    # -- printing --------------------------------------------------------
    def sorted_terms(self, order=None):
        key = self.ring.monomial_key(order)
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def format_poly(p, order=None):
    """Canonical text form: terms in descending ring order, explicit ``*``
    and ``^``, reduced rational coefficients."""
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.sorted_terms(order):
        factors = []
        for name, e in zip(p.ring.variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        body = "*".join(factors)
        mag = abs(c)
        if not body:
            txt = str(mag)
        elif mag == 1:
            txt = body
        else:
            txt = f"{mag}*{body}"
        parts.append((c < 0, txt))
    out = []
    for i, (neg, txt) in enumerate(parts):
        if i == 0:
            out.append(("-" if neg else "") + txt)
        else:
            out.append((" - " if neg else " + ") + txt)
    return "".join(out)


class IdealPresentation:
    """A finitely presented ideal with optional Rabinowitsch localizations.

    Each inverted element ``f`` contributes an auxiliary variable ``v`` (last
    in the ring) and a generator ``f*v - 1``.
    """

    __slots__ = ("ring", "generators", "inverted")

    def __init__(self, ring, generators, inverted=()):
        self.ring = ring
        self.generators = tuple(generators)
        self.inverted = tuple(inverted)
        for g in self.generators:
            if g.ring != ring:
                raise PreconditionError("generator ring mismatch")

    def __repr__(self):
        return f"IdealPresentation({len(self.generators)} generators over {self.ring!r})"


def localize(ideal, f, aux_name):
    """Invert ``f`` by adjoining ``aux_name`` with generator ``f*aux - 1``."""
    if f.is_zero():
        raise PreconditionError("cannot invert the zero element")
    ring = ideal.ring.extended((aux_name,))
    gens = [g.lift(ring) for g in ideal.generators]
    gens.append(f.lift(ring) * ring.var(aux_name) - ring.one())
    return IdealPresentation(ring, gens, ideal.inverted + (f,))


def specialize(ideal, assignment):
    """Evaluate some variables at rationals and drop them from the ring."""
    for name in assignment:
        ideal.ring.index(name)
    keep = [n for n in ideal.ring.variables if n not in assignment]
    ring = PolyRing(keep, order=ideal.ring.order)
    gens = [g.substitute(assignment, ring) for g in ideal.generators]
    inv = [f.substitute(assignment, ring) for f in ideal.inverted]
    return IdealPresentation(ring, gens, inv)


# -- division and Buchberger ----------------------------------------------

def _mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))

def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))

def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))

def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(f, basis, order=None):
    """Remainder of ``f`` under multivariate division by ``basis``.

    Against a Groebner basis this is the canonical normal form in the
    quotient ring.  Division is deterministic: the first basis element (in
    list order) whose leading monomial divides the current leading monomial
    is used.
    """
    if not basis:
        return f
    ring = f.ring
    key = ring.monomial_key(order)
    lead = [(g.lead_monomial(order), g.lead_coeff(order), g) for g in basis if not g.is_zero()]
    r = ring.zero()
    p = f
    while not p.is_zero():
        lm = p.lead_monomial(order)
        lc = p.terms[lm]
        hit = None
        for glm, glc, g in lead:
            if _mono_divides(glm, lm):
                hit = (glm, glc, g)
                break
        if hit is None:
            t = Poly(ring, {lm: lc})
            r = r + t
            p = p - t
        else:
            glm, glc, g = hit
            q = Poly(ring, {_mono_div(lm, glm): lc / glc})
            p = p - q * g
    return r


def _interreduce(polys, order):
    """Turn a generating set with the Groebner property into the reduced basis."""
    polys = [p for p in polys if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        out = []
        for i, p in enumerate(polys):
            others = out + polys[i + 1:]
            r = normal_form(p, others, order)
            if r.is_zero():
                changed = True
                continue
            r = r.monic(order)
            if r != p:
                changed = True
            out.append(r)
        polys = out
    key = polys[0].ring.monomial_key(order) if polys else None
    return sorted(polys, key=lambda p: key(p.lead_monomial(order))) if polys else []


def groebner(ideal_or_polys, order=None, budget=DEFAULT_BUDGET):
    """Reduced Groebner basis by Buchberger's algorithm.

    Deterministic for a fixed input and order.  Raises ``BudgetError`` with
    partial statistics once more than ``budget`` S-polynomial reductions have
    been attempted.
    """
    if isinstance(ideal_or_polys, IdealPresentation):
        polys = list(ideal_or_polys.generators)
        ring = ideal_or_polys.ring
    else:
        polys = list(ideal_or_polys)
        if not polys:
            return []
        ring = polys[0].ring
    order = order or ring.order
    key = ring.monomial_key(order)

    basis = [p.monic(order) for p in _interreduce(polys, order)]
    if not basis:
        return []
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    reductions = 0
    while pairs:
        # normal selection: smallest lcm in the ring order
        i, j = min(pairs, key=lambda ij: (key(_mono_lcm(basis[ij[0]].lead_monomial(order),
                                                        basis[ij[1]].lead_monomial(order))), ij))
        pairs.discard((i, j))
        fi, fj = basis[i], basis[j]
        lmi, lmj = fi.lead_monomial(order), fj.lead_monomial(order)
        lcm = _mono_lcm(lmi, lmj)
        if lcm == _mono_mul(lmi, lmj):  # coprime leading monomials
            continue
        reductions += 1
        if reductions > budget:
            raise BudgetError(
                "Groebner budget exhausted",
                stats={"pair_reductions": reductions - 1, "basis_size": len(basis),
                       "pairs_left": len(pairs)},
            )
        spoly = (Poly(ring, {_mono_div(lcm, lmi): Fraction(1) / fi.lead_coeff(order)}) * fi
                 - Poly(ring, {_mono_div(lcm, lmj): Fraction(1) / fj.lead_coeff(order)}) * fj)
        r = normal_form(spoly, basis, order)
        if not r.is_zero():
            basis.append(r.monic(order))
            k = len(basis) - 1
            pairs.update((m, k) for m in range(k))
    return _interreduce(basis, order)


def is_unit_ideal(gb):
    return any(g.is_constant() and not g.is_zero() for g in gb)


def quotient_dimension(ideal, order=None, budget=DEFAULT_BUDGET, basis=None):
    """Vector-space dimension of the quotient ring, or ``"infinite"``.

    Counts monomials outside the leading-term staircase of a Groebner basis.
    """
    if basis is None:
        basis = groebner(ideal, order=order, budget=budget)
    ring = ideal.ring if isinstance(ideal, IdealPresentation) else (
        ideal[0].ring if ideal else None)
    if ring is None:
        return "infinite"
    order = order or ring.order
    if is_unit_ideal(basis):
        return 0
    lms = [g.lead_monomial(order) for g in basis]
    n = ring.nvars
    # finite iff every variable has a pure power among the leading monomials
    bounds = [None] * n
    for lm in lms:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or lm[i] < bounds[i]:
                bounds[i] = lm[i]
    if n and any(b is None for b in bounds):
        return "infinite"

    count = 0
    stack = [(0,) * n]
    seen = {(0,) * n}
    while stack:
        m = stack.pop()
        count += 1
        for i in range(n):
            m2 = m[:i] + (m[i] + 1,) + m[i + 1:]
            if m2 in seen or m2[i] >= bounds[i]:
                continue
            if any(_mono_divides(lm, m2) for lm in lms):
                continue
            seen.add(m2)
            stack.append(m2)
    return count


def is_weighted_homogeneous(p, weights):
    """Whether every monomial of ``p`` has the same total weight.

    Returns ``(True, weight)`` or ``(False, None)``; the zero polynomial is
    homogeneous of weight ``None``, constants have weight 0.
    """
    for name in p.ring.variables:
        if name not in weights:
            raise PreconditionError(f"no weight assigned to {name!r}")
    ws = {p.monomial_weight(m, weights) for m in p.terms}
    if not ws:
        return True, None
    if len(ws) == 1:
        return True, ws.pop()
    return False, None


def radical_membership(ideal, f, budget=DEFAULT_BUDGET):
    """Rabinowitsch test: ``f`` lies in the radical iff 1 in I + <f*v - 1>."""
    loc = localize(ideal, f, "_rab")
    gb = groebner(loc, budget=budget)
    return is_unit_ideal(gb)


def ideal_contains(gb, f, order=None):
    return normal_form(f, gb, order).is_zero()


def ideals_equal(gens_a, gens_b, order=None, budget=DEFAULT_BUDGET):
    """Mutual membership of two generating sets over one ring."""
    gb_a = groebner(gens_a, order=order, budget=budget)
    gb_b = groebner(gens_b, order=order, budget=budget)
    return (all(ideal_contains(gb_a, g, order) for g in gens_b)
            and all(ideal_contains(gb_b, g, order) for g in gens_a))


class RatFunc:
    """Quotient of two polynomials over one ring.

    Light normalization only (content and common monomial factor); equality
    is tested by cross multiplication, so representatives need not be
    coprime.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den = _ratfunc_normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def of(cls, p):
        return cls(p, p.ring.one())

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc.of(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.of(self.num.ring.const(other))
        raise TypeError(f"cannot combine RatFunc with {other!r}")

    def __eq__(self, other):
        other = self._coerce(other)
        return (self.num * other.den) == (other.num * self.den)

    def __str__(self):
        if self.den == self.den.ring.one():
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"

    __repr__ = __str__


class FractionField:
    """Coefficient-ring shim producing RatFunc values over a PolyRing."""

    __slots__ = ("ring",)

    def __init__(self, ring):
        self.ring = ring

    def zero(self):
        return RatFunc.of(self.ring.zero())

    def one(self):
        return RatFunc.of(self.ring.one())

    def const(self, c):
        return RatFunc.of(self.ring.const(c))

    def var(self, name):
        return RatFunc.of(self.ring.var(name))

    def __eq__(self, other):
        return isinstance(other, FractionField) and self.ring == other.ring

    def __hash__(self):
        return hash(("FractionField", self.ring))


def _ratfunc_normalize(num, den):
    if num.is_zero():
        return num, den.ring.one()
    # strip the common monomial factor
    mins = None
    for m in list(num.terms) + list(den.terms):
        mins = m if mins is None else tuple(min(a, b) for a, b in zip(mins, m))
    if mins and any(mins):
        num = Poly(num.ring, {_mono_div(m, mins): c for m, c in num.terms.items()})
        den = Poly(den.ring, {_mono_div(m, mins): c for m, c in den.terms.items()})
    # scale the denominator's leading coefficient to 1
    lc = den.lead_coeff()
    if lc != 1:
        num = num * (Fraction(1) / lc)
        den = den * (Fraction(1) / lc)
    return num, den
