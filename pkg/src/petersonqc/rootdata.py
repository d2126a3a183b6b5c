"""Root systems, Weyl groups, parabolic data and the affine Weyl group.

Roots are integer coordinate tuples in the simple-root basis; coroots and
coweights are coordinate tuples in the simple-coroot basis (rational entries
are allowed for coweights).  Simple-root indices are 1-based throughout the
public interface.  The Cartan matrix convention is ``C[i][j] = <alpha_j,
alpha_i^vee>``, rows indexed by coroots.

Every object here is immutable after construction and all operations are
pure functions, so shared values may be used concurrently.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError, PreconditionError

_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4, "E": 6, "F": 4, "G": 2}


def cartan_matrix(lie_type, rank):
    """Cartan matrix in Bourbaki numbering, ``C[i][j] = alpha_j(alpha_i^vee)``."""
    n = rank
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2

    def chain(pairs):
        for i, j in pairs:
            C[i][j] = -1
            C[j][i] = -1

    if lie_type in ("A", "B", "C", "D"):
        chain((i, i + 1) for i in range(n - 1))
        if lie_type == "B" and n >= 2:
            # alpha_n short: alpha_{n-1}(alpha_n^vee) = -2
            C[n - 1][n - 2] = -2
        elif lie_type == "C" and n >= 2:
            # alpha_n long: alpha_n(alpha_{n-1}^vee) = -2
            C[n - 2][n - 1] = -2
        elif lie_type == "D":
            C[n - 1][n - 2] = C[n - 2][n - 1] = 0
            C[n - 1][n - 3] = C[n - 3][n - 1] = -1
    elif lie_type == "E":
        # Bourbaki: node 2 attaches to node 4; chain 1-3-4-5-...-n
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        chain(edges)
    elif lie_type == "F":
        chain([(0, 1), (2, 3)])
        C[2][1] = -2  # alpha_2(alpha_3^vee) = -2 (alpha_2 long, alpha_3 short)
        C[1][2] = -1
    elif lie_type == "G":
        C[0][1] = -3  # alpha_2(alpha_1^vee) = -3 (alpha_1 short, alpha_2 long)
        C[1][0] = -1
    return tuple(tuple(row) for row in C)


def _validate(lie_type, rank):
    if lie_type not in _MIN_RANK:
        raise ConfigurationError(f"unknown Lie type {lie_type!r}")
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 3,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }[lie_type]
    if not ok:
        raise ConfigurationError(f"invalid simple type ({lie_type}, {rank})")


def root_sort_key(vec):
    """Canonical root order: by height, then coordinates concentrated on
    lower simple indices first (so simple roots appear in index order)."""
    return (sum(vec), tuple(-x for x in vec))


def neg(vec):
    return tuple(-x for x in vec)

def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))

def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))

def _int_vec(vec):
    out = []
    for x in vec:
        if isinstance(x, Fraction):
            assert x.denominator == 1, f"non-integral lattice vector {vec}"
            out.append(int(x))
        else:
            out.append(int(x))
    return tuple(out)


@dataclass(frozen=True)
class RootDatum:
    """A simple root system with coroots and Weyl combinatorics helpers."""

    lie_type: str
    rank: int
    cartan: tuple
    positive_roots: tuple      # integer tuples, simple-root coordinates
    positive_coroots: tuple    # matching integer tuples, simple-coroot coordinates
    coroot_norms: tuple        # squared lengths of simple coroots, short = 1
    ell_G: int
    two_rho: tuple
    two_rho_check: tuple
    fundamental_coweights: tuple  # rows of the inverse Cartan matrix, Fractions

    def pair(self, root, coweight):
        """``root(coweight)`` for a root vector and a coweight vector."""
        total = 0
        for j in range(self.rank):
            if coweight[j]:
                s = sum(root[i] * self.cartan[j][i] for i in range(self.rank))
                total += coweight[j] * s
        return total

    def reflect_root(self, i, root):
        """Action of the simple reflection ``s_i`` on a root vector."""
        c = sum(self.cartan[i - 1][j] * root[j] for j in range(self.rank))
        out = list(root)
        out[i - 1] -= c
        return tuple(out)

    def reflect_coweight(self, i, cw):
        """Action of ``s_i`` on a coweight vector (simple-coroot coordinates)."""
        c = sum(self.cartan[j][i - 1] * cw[j] for j in range(self.rank))
        out = list(cw)
        out[i - 1] -= c
        return tuple(out)

    def simple_root(self, i):
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    simple_coroot = simple_root

    @property
    def roots(self):
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    @property
    def coroots(self):
        return self.positive_coroots + tuple(neg(a) for a in self.positive_coroots)

    def coroot_of(self, root):
        """The coroot paired with a (positive or negative) root vector."""
        try:
            i = self.positive_roots.index(root)
            return self.positive_coroots[i]
        except ValueError:
            i = self.positive_roots.index(neg(root))
            return neg(self.positive_coroots[i])

    def root_of_coroot(self, coroot):
        try:
            i = self.positive_coroots.index(coroot)
            return self.positive_roots[i]
        except ValueError:
            i = self.positive_coroots.index(neg(coroot))
            return neg(self.positive_roots[i])

    def is_positive_root(self, root):
        return any(x > 0 for x in root) and (root in self._root_set())

    @functools.lru_cache(maxsize=None)
    def _root_set(self):
        return frozenset(self.roots)

    def highest_root(self):
        return max(self.positive_roots, key=root_sort_key)

    def is_dominant_coweight(self, cw):
        return all(self.pair(self.simple_root(i), cw) >= 0
                   for i in range(1, self.rank + 1))

    def inverse_cartan(self):
        return _inverse_matrix(self.cartan)


def _inverse_matrix(M):
    """Exact inverse of a square matrix via Gauss-Jordan over Fraction."""
    n = len(M)
    A = [[Fraction(M[i][j]) for j in range(n)]
         + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        assert piv is not None, "singular Cartan-type matrix"
        A[col], A[piv] = A[piv], A[col]
        d = A[col][col]
        A[col] = [x / d for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return tuple(tuple(A[i][n + j] for j in range(n)) for i in range(n))


def _solve_linear(M, rhs):
    n = len(M)
    A = [list(M[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        assert piv is not None, "singular block in Cartan system"
        A[col], A[piv] = A[piv], A[col]
        d = A[col][col]
        A[col] = [x / d for x in A[col]]
        for r2 in range(n):
            if r2 != col and A[r2][col] != 0:
                f = A[r2][col]
                A[r2] = [x - f * y for x, y in zip(A[r2], A[col])]
    return [A[i][n] for i in range(n)]


@functools.lru_cache(maxsize=None)
def build_root_datum(lie_type, rank):
    """Construct the root datum of a simple type.

    Roots are enumerated by closing the simple roots under simple
    reflections; the stored order is height-then-lexicographic.  Coroot
    norms are normalized so that short coroots have squared length 1.
    """
    _validate(lie_type, rank)
    C = cartan_matrix(lie_type, rank)
    stub = RootDatum(lie_type, rank, C, (), (), (), 1, (), (), ())

    pairs = {}
    queue = []
    for i in range(1, rank + 1):
        e = stub.simple_root(i)
        pairs[e] = e
        queue.append(e)
    while queue:
        root = queue.pop()
        cr = pairs[root]
        for i in range(1, rank + 1):
            r2 = stub.reflect_root(i, root)
            if r2 not in pairs:
                pairs[r2] = stub.reflect_coweight(i, cr)
                queue.append(r2)

    positives = sorted((a for a in pairs if any(x > 0 for x in a)),
                       key=root_sort_key)
    assert all(all(x >= 0 for x in a) for a in positives)
    assert len(positives) * 2 == len(pairs)
    coroots = tuple(_int_vec(pairs[a]) for a in positives)

    # coroot norms: |a_i^vee|^2 / |a_j^vee|^2 = C[i][j] / C[j][i] on edges
    norms = [None] * rank
    norms[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(rank):
            if norms[j] is None and C[i][j] != 0:
                norms[j] = norms[i] * Fraction(C[j][i], C[i][j])
                todo.append(j)
    scale = min(norms)
    norms = tuple(int(n / scale) for n in norms)
    ell = max(norms)
    assert set(norms) <= {1, ell}

    two_rho = tuple(sum(a[j] for a in positives) for j in range(rank))
    two_rho_check = tuple(sum(c[j] for c in coroots) for j in range(rank))
    inv = _inverse_matrix(C)

    return RootDatum(
        lie_type=lie_type,
        rank=rank,
        cartan=C,
        positive_roots=tuple(positives),
        positive_coroots=coroots,
        coroot_norms=norms,
        ell_G=ell,
        two_rho=two_rho,
        two_rho_check=two_rho_check,
        fundamental_coweights=tuple(tuple(row) for row in inv),
    )


# -- Weyl group ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element: a reduced word plus its action on the root list."""

    datum: RootDatum
    word: tuple            # simple-reflection indices, 1-based
    perm: tuple            # permutation of datum.roots, by index

    @property
    def length(self):
        return len(self.word)

    def __eq__(self, other):
        return (isinstance(other, WeylElement) and self.perm == other.perm
                and self.datum == other.datum)

    def __hash__(self):
        return hash(self.perm)

    def act_root(self, root):
        roots = self.datum.roots
        return roots[self.perm[roots.index(root)]]

    def act_coweight(self, cw):
        """Linear action on a rational coweight vector."""
        cols = _coweight_columns(self)
        return tuple(sum(cols[j][i] * cw[j] for j in range(self.datum.rank) if cw[j])
                     for i in range(self.datum.rank))

    def act_coroot(self, coroot):
        return self.datum.coroot_of(self.act_root(self.datum.root_of_coroot(coroot)))

    def inverse(self):
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElement(self.datum, tuple(reversed(self.word)), tuple(inv))

    def __mul__(self, other):
        """Composition: ``(self*other)(x) = self(other(x))``."""
        perm = tuple(self.perm[j] for j in other.perm)
        word = _canonical_word(self.datum, perm, hint=self.word + other.word)
        return WeylElement(self.datum, word, perm)

    def true_length(self):
        n = len(self.datum.positive_roots)
        return sum(1 for i in range(n) if self.perm[i] >= n)

    def __repr__(self):
        return f"W{list(self.word)}"


@functools.lru_cache(maxsize=None)
def _coweight_columns(w):
    """Images of the simple coroots under ``w``, as column vectors."""
    return tuple(w.act_coroot(w.datum.simple_coroot(j))
                 for j in range(1, w.datum.rank + 1))


@functools.lru_cache(maxsize=None)
def _simple_perm(datum, i):
    roots = datum.roots
    return tuple(roots.index(datum.reflect_root(i, a)) for a in roots)


def identity_element(datum):
    n = 2 * len(datum.positive_roots)
    return WeylElement(datum, (), tuple(range(n)))


def simple_reflection(datum, i):
    if not 1 <= i <= datum.rank:
        raise ConfigurationError(f"simple index {i} out of range 1..{datum.rank}")
    return WeylElement(datum, (i,), _simple_perm(datum, i))


def from_word(datum, word):
    w = identity_element(datum)
    for i in word:
        w = w * simple_reflection(datum, i)
    return w


def _canonical_word(datum, perm, hint=None):
    """A reduced word for the element acting by ``perm`` on the roots."""
    n = len(datum.positive_roots)
    length = sum(1 for i in range(n) if perm[i] >= n)
    if hint is not None and len(hint) == length:
        return tuple(hint)
    roots = datum.roots
    word = []
    cur = list(perm)
    while True:
        desc = None
        for i in range(1, datum.rank + 1):
            # left descent i iff cur^{-1}(alpha_i) is negative
            if cur.index(roots.index(datum.simple_root(i))) >= n:
                desc = i
                break
        if desc is None:
            break
        word.append(desc)
        sp = _simple_perm(datum, desc)
        cur = [sp[c] for c in cur]  # cur <- s_desc o cur
    assert all(cur[i] == i for i in range(len(cur))), "descent walk failed"
    return tuple(word)


@functools.lru_cache(maxsize=None)
def weyl_group(datum):
    """All Weyl elements, BFS from the identity (stored words are reduced)."""
    e = identity_element(datum)
    seen = {e.perm: e}
    queue = [e]
    while queue:
        nxt = []
        for w in queue:
            for i in range(1, datum.rank + 1):
                u = w * simple_reflection(datum, i)
                if u.perm not in seen:
                    seen[u.perm] = u
                    nxt.append(u)
        queue = nxt
    return tuple(sorted(seen.values(), key=lambda w: (w.length, w.word)))


def longest_element(datum):
    return max(weyl_group(datum), key=lambda w: w.length)


def all_reduced_words(w):
    """Every reduced word of ``w``, recursively via left descents."""
    if w.true_length() == 0:
        return [()]
    out = []
    for i in range(1, w.datum.rank + 1):
        u = simple_reflection(w.datum, i) * w
        if u.true_length() == w.true_length() - 1:
            out.extend((i,) + rest for rest in all_reduced_words(u))
    return out


# -- parabolic data -----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ParabolicData:
    """A standard parabolic: Levi roots, its Weyl group and coset data.

    ``excluded_simples`` are the simple indices NOT in the parabolic.  In the
    relabelled order (excluded first, then included) they play the role of
    the first ``k`` simple roots of the usual convention.
    """

    parent: RootDatum
    excluded_simples: tuple   # sorted, 1-based
    included_simples: tuple   # sorted, 1-based
    R_P_plus: tuple           # positive roots of the Levi
    W_P_elements: tuple
    w_P: WeylElement
    W_upper_P: tuple          # minimal coset representatives in W/W_P
    QP_lattice_basis: tuple   # simple coroots of the Levi

    @property
    def k(self):
        return len(self.excluded_simples)

    @property
    def relabel_order(self):
        """Simple indices in convention order: excluded first, then included."""
        return self.excluded_simples + self.included_simples

    def __eq__(self, other):
        return (isinstance(other, ParabolicData) and self.parent == other.parent
                and self.excluded_simples == other.excluded_simples)

    def __hash__(self):
        return hash((self.parent, self.excluded_simples))

    def __repr__(self):
        return (f"ParabolicData({self.parent.lie_type}{self.parent.rank}, "
                f"excluded={list(self.excluded_simples)})")


@functools.lru_cache(maxsize=None)
def build_parabolic(datum, excluded):
    """Parabolic data for the standard parabolic missing the given simples."""
    excluded = tuple(sorted(set(excluded)))
    for i in excluded:
        if not 1 <= i <= datum.rank:
            raise ConfigurationError(f"simple index {i} out of range 1..{datum.rank}")
    included = tuple(i for i in range(1, datum.rank + 1) if i not in excluded)
    inc_set = {i - 1 for i in included}

    rp_plus = tuple(a for a in datum.positive_roots
                    if all(a[j] == 0 for j in range(datum.rank) if j not in inc_set))

    e = identity_element(datum)
    seen = {e.perm: e}
    queue = [e]
    while queue:
        nxt = []
        for w in queue:
            for i in included:
                u = w * simple_reflection(datum, i)
                if u.perm not in seen:
                    seen[u.perm] = u
                    nxt.append(u)
        queue = nxt
    wp_elements = tuple(sorted(seen.values(), key=lambda w: (w.length, w.word)))
    w_P = max(wp_elements, key=lambda w: w.length)

    minimal = tuple(sorted(
        (w for w in weyl_group(datum)
         if all(datum.is_positive_root(w.act_root(datum.simple_root(i)))
                for i in included)),
        key=lambda w: (w.length, w.word)))

    qp_basis = tuple(datum.simple_coroot(i) for i in included)
    return ParabolicData(datum, excluded, included, rp_plus, wp_elements, w_P,
                         minimal, qp_basis)


def minimal_coset_representative(w, parabolic):
    """The unique shortest element of the coset ``w W_P``."""
    datum = parabolic.parent
    cur = w
    changed = True
    while changed:
        changed = False
        for i in parabolic.included_simples:
            if not datum.is_positive_root(cur.act_root(datum.simple_root(i))):
                cur = cur * simple_reflection(datum, i)
                changed = True
    return cur


# -- affine Weyl group ----------------------------------------------------------

@dataclass(frozen=True)
class AffineWeylElement:
    """``w t_lambda`` in the affine Weyl group W x Q^vee."""

    finite_part: WeylElement
    translation: tuple

    @property
    def datum(self):
        return self.finite_part.datum

    @property
    def length(self):
        return affine_length(self)

    def __mul__(self, other):
        """``(w1 t_l1)(w2 t_l2) = (w1 w2) t_{w2^{-1}(l1) + l2}``."""
        w2inv = other.finite_part.inverse()
        lam = vadd(_int_vec(w2inv.act_coweight(self.translation)), other.translation)
        return AffineWeylElement(self.finite_part * other.finite_part, lam)

    def __repr__(self):
        return f"Af({list(self.finite_part.word)}, t{list(self.translation)})"


def affine_length(x):
    """Coxeter length of ``w t_lambda``, counted as the number of affine
    hyperplanes ``{alpha = n}`` separating the fundamental alcove from its
    image."""
    datum = x.datum
    w = x.finite_part
    winv = w.inverse()
    wl = _int_vec(w.act_coweight(x.translation))
    total = 0
    for a in datum.positive_roots:
        c = datum.pair(a, wl)
        if datum.is_positive_root(winv.act_root(a)):
            total += abs(c)
        else:
            total += abs(c - 1)
    return total


def is_Waf_minus(x):
    """Minimal length in its coset ``x W``: no finite simple reflection
    shortens it on the right."""
    n = affine_length(x)
    datum = x.datum
    zero = (0,) * datum.rank
    for i in range(1, datum.rank + 1):
        s = AffineWeylElement(simple_reflection(datum, i), zero)
        if affine_length(x * s) < n:
            return False
    return True


def in_WP_af(x, parabolic):
    """Membership in the parabolic-adapted affine subset: for every positive
    Levi root ``alpha``, ``alpha(lambda) = 0`` if ``w(alpha) > 0`` and
    ``alpha(lambda) = -1`` otherwise."""
    datum = x.datum
    w = x.finite_part
    lam = x.translation
    for a in parabolic.R_P_plus:
        v = datum.pair(a, lam)
        if datum.is_positive_root(w.act_root(a)):
            if v != 0:
                return False
        else:
            if v != -1:
                return False
    return True


def translation_element(datum, lam):
    return AffineWeylElement(identity_element(datum), tuple(lam))


def waf_minus_of_coweight(datum, lam):
    """The unique minimal representative of the coset ``t_lambda W``."""
    hits = []
    for w in weyl_group(datum):
        mu = _int_vec(w.inverse().act_coweight(lam))
        x = AffineWeylElement(w, mu)
        if is_Waf_minus(x):
            hits.append(x)
    if len(hits) != 1:
        raise PreconditionError(f"coset of t_{lam} has {len(hits)} minimal members")
    return hits[0]


# -- Cartan lemmas ---------------------------------------------------------------

def decompose_fundamental_coweight(datum, ell):
    """Coefficients ``(b_1..b_ell, c_{ell+1}..c_r)`` with
    ``omega_{ell+1} = sum b_i omega_i + sum c_j alpha_j^vee``.

    Solved from the block-triangular linear system obtained by pairing with
    the simple roots; the block is the Cartan matrix of a sub-root-system,
    hence invertible.  All coefficients come out nonnegative.
    """
    r = datum.rank
    if not 0 <= ell < r:
        raise PreconditionError(f"need 0 <= ell < rank, got {ell}")
    size = r - ell
    # row m: pairing with alpha_{ell+m};  alpha_m(alpha_j^vee) = C[j][m]
    M = [[Fraction(datum.cartan[ell + j][ell + m]) for j in range(size)]
         for m in range(size)]
    rhs = [Fraction(int(m == 0)) for m in range(size)]
    c = _solve_linear(M, rhs)
    b = []
    for m in range(ell):
        s = sum(c[j] * datum.cartan[ell + j][m] for j in range(size))
        b.append(-s)
    return tuple(b), tuple(c)


def dominant_conjugate(datum, cw):
    """The dominant member of the Weyl orbit of a coweight."""
    cur = tuple(Fraction(x) for x in cw)
    moved = True
    while moved:
        moved = False
        for i in range(1, datum.rank + 1):
            if datum.pair(datum.simple_root(i), cur) < 0:
                cur = datum.reflect_coweight(i, cur)
                moved = True
    return cur


def in_orbit_hull(datum, lam, mu):
    """Whether ``mu`` lies in the convex hull of the Weyl orbit of a dominant
    ``lam``: the dominant conjugate of ``mu`` must differ from ``lam`` by a
    nonnegative combination of simple coroots."""
    mu_dom = dominant_conjugate(datum, mu)
    return all(x >= 0 for x in vsub(lam, mu_dom))


def cone_membership_equiv(datum, parabolic, lam, mu_list):
    """Evaluate both sides of the cone/dominance equivalence.

    Left side: the sum of ``mu_i - w_P w_0(lam)`` lies in the nonzero
    nonpositive-integer span of the Levi's positive coroots.  Right side:
    every ``mu_i`` is strictly dominated by ``w_P w_0(lam)``.  Both booleans
    are returned so callers can assert the equivalence.
    """
    lam = tuple(lam)
    if not datum.is_dominant_coweight(lam):
        raise PreconditionError(f"{lam} is not dominant")
    for mu in mu_list:
        if not in_orbit_hull(datum, lam, mu):
            raise PreconditionError(f"{mu} is outside the orbit hull of {lam}")
    w0 = longest_element(datum)
    target = _int_vec(parabolic.w_P.act_coweight(w0.act_coweight(lam)))

    total = (0,) * datum.rank
    for mu in mu_list:
        total = vadd(total, vsub(tuple(mu), target))
    inc = {i - 1 for i in parabolic.included_simples}
    lhs = (any(x != 0 for x in total)
           and all(x <= 0 for x in total)
           and all(total[j] == 0 for j in range(datum.rank) if j not in inc))

    rhs = True
    for mu in mu_list:
        diff = vsub(target, tuple(mu))
        if not (any(x != 0 for x in diff) and all(x >= 0 for x in diff)):
            rhs = False
            break
    return lhs, rhs
