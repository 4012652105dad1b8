"""Grading functions, standard graded modules over a degree window, module vectors.

Two modules are provided: the adjoint module (``V_m = g_m``) and the Verma
module ``M(lambda)`` truncated at depth D.  A window ``[lo, hi]`` of f-degrees
fixes which part of the completion is represented; vectors and operators only
ever see that slice.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm

from .cartan import realization
from .errors import (
    CutoffExceeded,
    DepthExceedsCutoff,
    GradingAxiomFailed,
    NotRestrictedLattice,
    WindowExceeded,
    WindowFloorLoss,
)
from .linalg import ONE, ZERO, _rref, q, qstr, rank, to_q_matrix, vadd, vscale
from .liealg import peterson_table
from .weyl import dominates, height, is_negative, is_positive


# ---------------------------------------------------------------------------
# grading functions


def _solve_in_span(basis, v):
    """Rational c with ``sum c_k basis[k] = v``, or None."""
    k = len(basis)
    aug = [[row[c] for row in basis] + [v[c]] for c in range(len(v))]
    red, pivots = _rref(to_q_matrix(aug))
    if k in pivots:
        return None
    c = [ZERO] * k
    for r, p in enumerate(pivots):
        c[p] = red[r][k]
    return c


def _unit(n, i):
    return tuple(ONE if c == i else ZERO for c in range(n))


def completed_coroot_basis(gcm):
    """Coroots followed by the unit vectors of h needed to complete them to a basis."""
    real = realization(gcm)
    rows = [list(c) for c in real.simple_coroots]
    for i in range(real.n):
        if len(rows) == real.n:
            break
        if rank(rows + [list(_unit(real.n, i))]) > len(rows):
            rows.append(list(_unit(real.n, i)))
    return [tuple(r) for r in rows]


def default_lattice(gcm):
    """Dual basis of ``completed_coroot_basis``; its first l vectors are fundamental weights."""
    from .linalg import inverse

    hb = completed_coroot_basis(gcm)
    inv = inverse([list(r) for r in hb])  # columns of inv are the dual vectors
    n = len(hb)
    return [tuple(inv[r][c] for r in range(n)) for c in range(n)]


def fundamental_weights(gcm):
    return default_lattice(gcm)[: gcm.size]


@dataclass(frozen=True)
class GradingFunction:
    """``f = a f'`` where f' is linear with prescribed values on the simple roots,
    zero on the complement vectors, and ``a`` clears denominators on the lattice."""

    l: int
    n: int
    a: int
    simple_values: tuple
    complement: tuple
    lattice: tuple
    _inverse: tuple = field(repr=False, compare=False)

    def prime(self, weight):
        """``f'`` of an h*-coordinate vector."""
        weight = [q(x) for x in weight]
        coords = [sum((weight[r] * self._inverse[r][c] for r in range(self.n)), ZERO) for c in range(self.n)]
        return sum((coords[i] * self.simple_values[i] for i in range(self.l)), ZERO)

    def __call__(self, weight):
        return self.a * self.prime(weight)

    def of_root(self, root):
        return self.a * sum(k * v for k, v in zip(root, self.simple_values))

    def to_json(self):
        return {
            "a": self.a,
            "simple_values": [qstr(v) for v in self.simple_values],
            "complement": [[qstr(x) for x in v] for v in self.complement],
            "lattice": [[qstr(x) for x in v] for v in self.lattice],
        }


def check_grading_axioms(f, roots=(), weights=()):
    """Return ``(axiom, witness)`` for the first failure on the truncated data, else None.

    ``roots`` are root-lattice tuples (signed); ``weights`` are h*-coordinate
    vectors of the module, compared under dominance in root coordinates.
    """
    for b in f.lattice:
        if f(b).denominator != 1:
            return "F1", {"lattice_vector": [qstr(x) for x in b], "value": qstr(f(b))}
    for r in roots:
        v = f.of_root(r)
        if (is_positive(r) and v <= 0) or (is_negative(r) and v >= 0):
            return "F3", {"root": list(r), "value": qstr(v)}
    by_degree = {}
    for w in weights:
        by_degree.setdefault(f(w), []).append(tuple(q(x) for x in w))
    for deg, ws in sorted(by_degree.items()):
        for i, x in enumerate(ws):
            for y in ws[i + 1 :]:
                diff = [a - b for a, b in zip(x, y)]
                # comparable iff the difference is a nonzero element of +-Q+
                if any(diff[f.l :]) or not any(diff[: f.l]):
                    continue
                head = diff[: f.l]
                if all(d.denominator == 1 for d in head) and (dominates(head, [0] * f.l) or dominates([0] * f.l, head)):
                    return "F4", {"degree": qstr(deg), "weights": [[qstr(a) for a in x], [qstr(a) for a in y]]}
    return None


def make_grading_function(gcm, lattice=None, complement=None, simple_values=None, roots=(), weights=()):
    """Build and validate a grading function.

    ``lattice`` is a basis of the restricted weight lattice in h* coordinates
    (default: dual of coroots plus completing unit vectors, which contains the
    fundamental weights).  ``complement`` spans a complement of the root span
    on which f' vanishes (default: the trailing unit vectors).
    """
    real = realization(gcm)
    l, n = gcm.size, real.n
    roots_h = [tuple(r) for r in real.simple_roots]
    if complement is None:
        complement = [_unit(n, i) for i in range(l, n)]
    complement = [tuple(q(x) for x in v) for v in complement]
    frame = roots_h + complement
    if len(frame) != n or rank([list(v) for v in frame]) != n:
        raise NotRestrictedLattice("simple roots and complement do not form a basis of h*")
    from .linalg import inverse

    inv = inverse([list(v) for v in frame])  # weight . inv = coordinates in the frame
    if lattice is None:
        lattice = default_lattice(gcm)
    lattice = [tuple(q(x) for x in v) for v in lattice]
    if rank([list(v) for v in lattice]) != len(lattice):
        raise NotRestrictedLattice("lattice vectors are linearly dependent")
    for i, alpha in enumerate(roots_h):
        c = _solve_in_span(lattice, alpha)
        if c is None or any(x.denominator != 1 for x in c):
            raise NotRestrictedLattice(f"simple root {i + 1} is not an integral combination of the lattice basis", root=i + 1)
    values = tuple(q(v) for v in (simple_values or [1] * l))
    f = GradingFunction(l, n, 1, values, tuple(complement), tuple(lattice), tuple(tuple(r) for r in inv))
    a = lcm(*(int(f.prime(b).denominator) for b in lattice)) if lattice else 1
    f = GradingFunction(l, n, a, values, tuple(complement), tuple(lattice), f._inverse)
    failure = check_grading_axioms(f, roots, weights)
    if failure:
        raise GradingAxiomFailed(*failure)
    return f


def adjoint_grading(gcm):
    """``f = ht`` on the root lattice (a = 1)."""
    real = realization(gcm)
    return make_grading_function(gcm, lattice=[tuple(r) for r in real.simple_roots])


# ---------------------------------------------------------------------------
# vectors


class ModuleVector(dict):
    """Sparse vector ``basis key -> coefficient`` of a windowed module."""

    def __init__(self, module, terms=()):
        super().__init__(terms)
        self.module = module

    def _wrap(self, d):
        return ModuleVector(self.module, d)

    def __add__(self, other):
        return self._wrap(vadd(dict(self), other))

    def __sub__(self, other):
        return self._wrap(vadd(dict(self), other, -ONE))

    def __neg__(self):
        return self._wrap(vscale(self, -ONE))

    def __mul__(self, c):
        return self._wrap(vscale(self, q(c)))

    __rmul__ = __mul__

    def pi(self, m):
        """Projection to degree m."""
        deg = self.module.degree
        return self._wrap({k: c for k, c in self.items() if deg(k) == m})

    def degrees(self):
        return sorted({self.module.degree(k) for k in self})

    @property
    def order(self):
        """N(v): the smallest degree with a nonzero component."""
        return min(self.degrees()) if self else None

    def to_json(self):
        return self.module.vector_to_json(self)


# ---------------------------------------------------------------------------
# modules


class StandardGradedModule:
    integrable = False

    def __init__(self, alg, grading, window):
        self.alg = alg
        self.grading = grading
        self.window = (int(window[0]), int(window[1]))
        self._basis = {}

    # subclasses provide: _generate_basis(m), degree, weight, _act

    def basis(self, m):
        if m not in self._basis:
            lo, hi = self.window
            self._basis[m] = self._generate_basis(m) if lo <= m <= hi else []
        return self._basis[m]

    def keys(self):
        lo, hi = self.window
        return [k for m in range(lo, hi + 1) for k in self.basis(m)]

    def dims(self):
        lo, hi = self.window
        return {m: len(self.basis(m)) for m in range(lo, hi + 1)}

    def dimension(self):
        return sum(self.dims().values())

    def weight_spaces(self, m):
        out = {}
        for k in self.basis(m):
            out.setdefault(self.weight(k), []).append(k)
        return out

    def algebra_degree(self, a):
        return self.grading.of_root(a[0])

    def vector(self, terms=()):
        return ModuleVector(self, {k: q(c) for k, c in dict(terms).items() if c})

    def basis_vector(self, key):
        return ModuleVector(self, {key: ONE})

    def act(self, a, key, truncate=False):
        """Action of the algebra basis key ``a`` on the module basis key ``key``."""
        lo, hi = self.window
        target = self.degree(key) + self.algebra_degree(a)
        if target > hi:
            if truncate:
                return {}
            return self._outside(a, key, target, WindowExceeded)
        if target < lo:
            return self._outside(a, key, target, WindowFloorLoss)
        return self._act(a, key)

    def _outside(self, a, key, target, error):
        raise error(target, self.window)

    def apply(self, x, v, truncate=False):
        """``rho(x) v``; with ``truncate`` the components above the window are dropped
        (the action on the quotient by the degrees above ``hi``), which is only
        legitimate for x in nonnegative degrees."""
        if truncate and any(self.algebra_degree(a) < 0 for a in x):
            raise ValueError("truncation above the window needs x in nonnegative degrees")
        out = {}
        for a, ca in x.items():
            for k, cv in v.items():
                for r, c in self.act(a, k, truncate).items():
                    value = out.get(r, ZERO) + ca * cv * c
                    if value:
                        out[r] = value
                    else:
                        out.pop(r, None)
        return ModuleVector(self, out)

    def vector_to_json(self, v):
        terms = []
        for m in sorted({self.degree(k) for k in v}):
            for wt, keys in sorted(self.weight_spaces(m).items()):
                coords = [v.get(k, ZERO) for k in keys]
                if any(coords):
                    terms.append({"deg": m, "weight": [qstr(x) for x in wt], "coords": [qstr(x) for x in coords]})
        return {"window": list(self.window), "terms": terms}


class AdjointModule(StandardGradedModule):
    """``V = g`` with ``rho = ad`` over a window inside ``[-K, K]``."""

    integrable = True

    def __init__(self, alg, window=None):
        window = window or (-1, alg.K)
        if window[0] < -alg.K or window[1] > alg.K:
            raise CutoffExceeded(max(-window[0], window[1]), alg.K)
        super().__init__(alg, adjoint_grading(alg.gcm), window)

    def _generate_basis(self, m):
        return self.alg.basis(m)

    def degree(self, key):
        return height(key[0])

    def weight(self, key):
        return self.alg.realization.root_to_weight(key[0])

    def key_label(self, key):
        return self.alg.label(key)

    def _act(self, a, key):
        return dict(self.alg._bracket_keys(a, key))

    def _outside(self, a, key, target, error):
        s = tuple(x + y for x, y in zip(a[0], key[0]))
        if any(s) and not (is_positive(s) or is_negative(s)):
            return {}
        if abs(target) <= self.alg.K:
            if any(s) and not self.alg.dim(s):
                return {}
            out = self._act(a, key)
            if not out:
                return {}
        raise error(target, self.window)


def adjoint_module(alg, window=None):
    return AdjointModule(alg, window)


class VermaModule(StandardGradedModule):
    """``M(lambda)`` truncated to weights ``lambda - beta`` with ``ht(beta) <= D``.

    Basis keys are PBW monomials: nondecreasing tuples of negative algebra keys
    in the order (f-degree, root, index), read left to right as an ordered
    product applied to the highest weight vector.
    """

    def __init__(self, alg, weight, depth, grading=None):
        if depth > alg.K:
            raise DepthExceedsCutoff(f"depth {depth} exceeds cutoff {alg.K}", depth=depth, cutoff=alg.K)
        self.lam = tuple(q(x) for x in weight)
        if len(self.lam) != alg.n:
            raise ValueError(f"weight needs {alg.n} coordinates")
        grading = grading or make_grading_function(alg.gcm)
        for b in completed_coroot_basis(alg.gcm):
            if sum(x * y for x, y in zip(self.lam, b)).denominator != 1:
                raise NotRestrictedLattice("highest weight is not in the restricted weight lattice")
        self.depth = int(depth)
        top = grading(self.lam)
        if top.denominator != 1:
            raise NotRestrictedLattice("highest weight has a non-integral degree")
        self.top = int(top)
        self.grading = grading
        gens = [k for m in range(1, self.depth + 1) for k in alg.basis(-m)]
        self.generators = sorted(gens, key=lambda k: (self.algebra_degree(k), k[0], k[1]))
        self._pos = {k: i for i, k in enumerate(self.generators)}
        self._all = self._monomials()
        super().__init__(alg, grading, (min(self._all), self.top))

    def _monomials(self):
        out = {}

        def grow(start, mono, ht, deg):
            out.setdefault(deg, []).append(mono)
            for i in range(start, len(self.generators)):
                g = self.generators[i]
                h = ht - height(g[0])
                if h <= self.depth:
                    grow(i, mono + (g,), h, deg + self.algebra_degree(g))

        grow(0, (), 0, self.top)
        return out

    def _generate_basis(self, m):
        return sorted(self._all.get(m, []), key=lambda mono: [self._pos[g] for g in mono])

    @lru_cache(maxsize=None)
    def beta(self, mono):
        return tuple(-sum(g[0][i] for g in mono) for i in range(self.alg.l))

    def degree(self, key):
        return self.top - self.grading.of_root(self.beta(key))

    def weight(self, key):
        b = self.alg.realization.root_to_weight(self.beta(key))
        return tuple(x - y for x, y in zip(self.lam, b))

    def key_label(self, mono):
        return "*".join(self.alg.label(g) for g in mono) + ("*v" if mono else "v")

    def highest_weight_vector(self):
        return self.basis_vector(())

    def _outside(self, a, key, target, error):
        if target > self.top:
            return {}
        raise error(target, self.window)

    @lru_cache(maxsize=None)
    def _mul_neg(self, y, mono):
        """Straighten ``y * mono`` for a negative key y."""
        if not mono or self._pos[y] <= self._pos[mono[0]]:
            return ((((y,) + mono), ONE),)
        y1, rest = mono[0], mono[1:]
        out = {}
        for k, c in self.alg._bracket_keys(y, y1):
            for m, cm in self._mul_neg(k, rest):
                vadd(out, {m: cm}, c)
        for m, c in self._mul_neg(y, rest):
            for m2, c2 in self._mul_neg(y1, m):
                vadd(out, {m2: c2}, c)
        return tuple(out.items())

    @lru_cache(maxsize=None)
    def _act_cached(self, a, mono):
        root, idx = a
        if is_negative(root):
            return self._mul_neg(a, mono)
        if not any(root):
            value = self.weight(mono)[idx]
            return ((mono, value),) if value else ()
        if not mono:
            return ()
        y1, rest = mono[0], mono[1:]
        out = {}
        for k, c in self.alg._bracket_keys(a, y1):
            for m, cm in self._act_cached(k, rest):
                vadd(out, {m: cm}, c)
        for m, c in self._act_cached(a, rest):
            for m2, c2 in self._mul_neg(y1, m):
                vadd(out, {m2: c2}, c)
        return tuple(out.items())

    def _act(self, a, key):
        return dict(self._act_cached(a, key))


def verma_module(alg, weight, depth, grading=None):
    return VermaModule(alg, weight, depth, grading)


def kostant_partition(mults, beta):
    """Number of ways to write beta as a sum of positive roots counted with multiplicity."""
    beta = tuple(beta)
    table = {(0,) * len(beta): 1}
    from itertools import product

    box = sorted(product(*(range(b + 1) for b in beta)), key=lambda g: (sum(g), g))
    for root, m in sorted(mults.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        if not m or not all(r <= b for r, b in zip(root, beta)):
            continue
        for _ in range(m):
            for g in box:
                prev = tuple(x - y for x, y in zip(g, root))
                if all(x >= 0 for x in prev):
                    table[g] = table.get(g, 0) + table.get(prev, 0)
    return table.get(beta, 0)


def verma_weight_multiplicity_oracle(gcm, beta):
    """Kostant count of beta with Peterson-recurrence multiplicities."""
    return kostant_partition(peterson_table(gcm, beta), beta) if any(beta) else 1


def weight_from_labels(gcm, labels, extra=()):
    """The weight with ``<lambda, alpha_i^vee> = labels[i]`` and the given values on
    the completing unit vectors of h (zero by default), in h* coordinates."""
    lattice = default_lattice(gcm)
    values = list(labels) + list(extra) + [0] * (len(lattice) - len(labels) - len(extra))
    n = len(lattice)
    return tuple(sum((q(v) * b[c] for v, b in zip(values, lattice)), ZERO) for c in range(n))
