"""The pro-unipotent group in log coordinates, group words, and complete root groups.

Group elements of the positive completion are kept as their logarithm
``z`` in the truncated positive part.  Products go through a BCH routine that
never forms operator matrices: for an element ``delta`` with
``[w, delta] = -D(w)`` (D multiplies each homogeneous part by its degree), the
logarithm of ``exp(ad x) exp(ad y)`` applied to ``delta`` equals ``[z, delta]``,
so ``z = -D^{-1}`` of that vector.  In g, ``delta`` is the element of h on which
every simple root takes the value 1; in a free Lie algebra it is the degree
derivation.
"""

from dataclasses import dataclass, field
from itertools import product as iproduct

from .errors import (
    CutoffExceeded,
    NegativeImaginaryExponential,
    NonIntegrableLowering,
    NotNegativeNorm,
    NotRealRoot,
    TruncationMismatch,
)
from .freelie import (
    MagnusSeries,
    expand,
    lie_coordinates,
    lyndon_words_of_length,
    magnus_exp,
    poly_bracket,
    standard_factorization,
    witt,
)
from .linalg import ONE, ZERO, Echelon, q, qstr, solve, vadd, vscale
from .liealg import AlgebraElement, root_subalgebra_layers
from .modules import ModuleVector
from .prosum import WindowOperator, exp_apply
from .weyl import height, is_negative, is_positive, real_roots_up_to


# ---------------------------------------------------------------------------
# BCH through the degree derivation


def bch_generic(x, y, bracket, degree, top):
    """``log(exp x exp y)`` in a positively graded Lie algebra truncated above ``top``.

    ``bracket(a, b)`` must drop components above ``top``; ``degree(key)`` gives the
    grading of a basis key.
    """

    def scale(w, inverse=False):
        return {k: (c / degree(k) if inverse else c * degree(k)) for k, c in w.items()}

    def exp_ad(a, v):
        total, term, n = dict(v), dict(v), 0
        while term:
            n += 1
            term = vscale(bracket(a, term), ONE / n)
            vadd(total, term)
        return total

    def exp_ad_delta(a):
        # exp(ad a) delta - delta = sum_{n>=1} ad(a)^{n-1} (-D a) / n!
        term = vscale(scale(a), -ONE)
        total, n = dict(term), 1
        while term:
            n += 1
            term = vscale(bracket(a, term), ONE / n)
            vadd(total, term)
        return total

    def step(v):
        return vadd(exp_ad(x, exp_ad(y, v)), v, -ONE)

    w = vadd(exp_ad(x, exp_ad_delta(y)), exp_ad_delta(x))
    acc, power, k = dict(w), w, 1
    while power:
        k += 1
        power = step(power)
        vadd(acc, power, q((-1) ** (k + 1)) / k)
    return scale(vscale(acc, -ONE), inverse=True)


def bch(alg, x, y, top=None):
    """BCH product of two elements of the positive part of ``alg``, truncated at ``top``."""
    top = alg.K if top is None else top
    for el in (x, y):
        for key in el:
            if not is_positive(key[0]):
                raise ValueError(f"{list(key[0])} is not a positive root")
            if height(key[0]) > alg.K:
                raise CutoffExceeded(height(key[0]), alg.K)
    x = {k: c for k, c in x.items() if height(k[0]) <= top}
    y = {k: c for k, c in y.items() if height(k[0]) <= top}
    z = bch_generic(x, y, lambda a, b: alg.bracket(a, b, max_degree=top), lambda k: height(k[0]), top)
    return AlgebraElement(z)


def bch_free(x, y, top):
    """BCH of two Lie polynomials (expanded form, words -> coeff) truncated at length ``top``."""

    def bracket(a, b):
        return {w: c for w, c in poly_bracket(a, b).items() if len(w) <= top}

    return bch_generic(x, y, bracket, len, top)


# ---------------------------------------------------------------------------
# unipotent elements


@dataclass(frozen=True)
class UnipotentElement:
    """``exp(rho(z))`` for z in the positive part truncated at height K."""

    alg: object = field(repr=False, compare=False)
    z: AlgebraElement
    K: int

    def __post_init__(self):
        z = AlgebraElement({k: q(c) for k, c in self.z.items() if c})
        for key in z:
            if not is_positive(key[0]) or height(key[0]) > self.K:
                raise ValueError(f"log coordinate at {list(key[0])} is outside degrees 1..{self.K}")
        object.__setattr__(self, "z", z)

    def __eq__(self, other):
        return isinstance(other, UnipotentElement) and self.K == other.K and dict(self.z) == dict(other.z)

    def __hash__(self):
        return hash((self.K, frozenset(self.z.items())))

    def __mul__(self, other):
        return bch_product(self, other)

    def inverse(self):
        return UnipotentElement(self.alg, -self.z, self.K)

    def operator(self, module):
        return WindowOperator(module, {k: exp_apply(self.z, {k: ONE}, module) for k in module.keys()})

    def to_json(self):
        return {"K": self.K, "log": self.z.to_json()}


def unipotent(alg, z, K=None):
    return UnipotentElement(alg, AlgebraElement(z), alg.K if K is None else K)


def bch_product(g, h):
    if g.K != h.K:
        raise TruncationMismatch(f"truncations {g.K} and {h.K} differ", left=g.K, right=h.K)
    return UnipotentElement(g.alg, bch(g.alg, g.z, h.z, g.K), g.K)


def group_commutator(alg, x, y, top=None):
    """log of ``exp(x) exp(y) exp(-x) exp(-y)``."""
    return bch(alg, bch(alg, bch(alg, x, y, top), -x, top), -y, top)


def factorize_ordered(g):
    """Homogeneous ``x_1, ..., x_K`` with ``exp(z) = exp(x_K) ... exp(x_2) exp(x_1)``."""
    alg, K = g.alg, g.K
    rest = AlgebraElement(g.z)
    parts = []
    for k in range(1, K + 1):
        xk = rest.degree_part(k)
        if any(height(key[0]) < k for key in rest):
            raise ArithmeticError("peeling left a lower-degree remainder")
        parts.append(xk)
        if xk:
            rest = bch(alg, rest, -xk, K)
    return parts


def reconstruct_ordered(alg, parts, K=None):
    K = alg.K if K is None else K
    acc = AlgebraElement()
    for xk in parts:
        acc = bch(alg, xk, acc, K) if acc else AlgebraElement(xk)
    return acc


# ---------------------------------------------------------------------------
# commutators of root-group exponentials


def commutator_rootspan(alg, alpha, beta, max_height=None):
    """Root span of (alpha, beta) up to ``max_height``, ordered by (height, i, j)."""
    top = alg.K if max_height is None else max_height
    alpha, beta = tuple(alpha), tuple(beta)

    def is_root(g):
        return height(g) <= top and bool(alg.dim(g))

    s1 = tuple(a + b for a, b in zip(alpha, beta))
    layer = {s1} if is_root(s1) else set()
    span = set(layer)
    while layer:
        nxt = set()
        for g in layer:
            for d in (alpha, beta):
                c = tuple(a + b for a, b in zip(g, d))
                if c not in span and is_root(c):
                    nxt.add(c)
        span |= nxt
        layer = nxt
    return sorted(span, key=lambda g: (height(g),) + _ij(alpha, beta, g))


def _ij(alpha, beta, gamma):
    """(i, j) with ``gamma = i alpha + j beta`` (alpha, beta independent)."""
    for i in range(0, height(gamma) // max(height(alpha), 1) + 1):
        rest = tuple(g - i * a for g, a in zip(gamma, alpha))
        if all(r >= 0 for r in rest):
            hb = height(beta)
            j = height(rest) // hb if hb else 0
            if tuple(j * b for b in beta) == rest:
                return (i, j)
    raise ValueError(f"{list(gamma)} is not in the span of {list(alpha)}, {list(beta)}")


def _peel(alg, c, order, top):
    """Components w_gamma with ``exp(c) = ... exp(w_{g2}) exp(w_{g1})`` along ``order``."""
    out = {}
    for g in order:
        w = c.component(g)
        out[g] = w
        if w:
            c = bch(alg, c, -w, top)
    if c:
        raise ArithmeticError(f"commutator has components outside the root span: {c.roots()}")
    return out


def commutator_coeffs(alg, x, y, alpha, beta, max_height=None):
    """The z_gamma of the ordered commutator expansion, checked on an exact grid.

    Returns ``(sigma, z, degbound)``; ``z[gamma]`` is an AlgebraElement in g_gamma.
    """
    top = alg.K if max_height is None else max_height
    alpha, beta = tuple(alpha), tuple(beta)
    sigma = commutator_rootspan(alg, alpha, beta, top)
    if not sigma:
        c = group_commutator(alg, x, y, top)
        if c:
            raise ArithmeticError("commutator is nontrivial although alpha + beta is not a root")
        return [], {}, 0
    ij = {g: _ij(alpha, beta, g) for g in sigma}
    degbound = max(max(i, j) for i, j in ij.values())
    pts = list(range(1, degbound + 2))
    samples = {}
    for u, v in iproduct(pts, pts):
        c = group_commutator(alg, x * u, y * v, top)
        samples[u, v] = _peel(alg, c, sigma, top)
    # interpolate every coordinate as a polynomial of bidegree <= degbound
    n = degbound + 1
    vand = [[q(u) ** a * q(v) ** b for a in range(n) for b in range(n)] for u, v in iproduct(pts, pts)]
    z = {}
    for g in sigma:
        i, j = ij[g]
        keys = sorted({k for s in samples.values() for k in s[g]})
        zg = AlgebraElement()
        for key in keys:
            rhs = [samples[u, v][g].get(key, ZERO) for u, v in iproduct(pts, pts)]
            coeffs = solve(vand, rhs)
            for a, b in iproduct(range(n), range(n)):
                c = coeffs[a * n + b]
                if (a, b) != (i, j) and c:
                    raise ArithmeticError(f"coefficient of u^{a} v^{b} at {list(g)} is {qstr(c)}")
            if coeffs[i * n + j]:
                zg[key] = coeffs[i * n + j]
        z[g] = zg
    return sigma, z, degbound


def commutator_identity_holds(alg, x, y, alpha, beta, sigma, z, points, max_height=None):
    """Compare both sides of the commutator identity at the given (u, v) points."""
    top = alg.K if max_height is None else max_height
    ij = {g: _ij(alpha, beta, g) for g in sigma}
    for u, v in points:
        u, v = q(u), q(v)
        lhs = group_commutator(alg, x * u, y * v, top)
        rhs = AlgebraElement()
        for g in sigma:
            i, j = ij[g]
            rhs = bch(alg, z[g] * (u**i * v**j), rhs, top) if rhs else z[g] * (u**i * v**j)
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# group words


@dataclass(frozen=True)
class ChiReal:
    root: tuple
    t: object = 1

    def inverse(self):
        return ChiReal(self.root, -q(self.t))

    def to_json(self):
        return {"chi": {"root": list(self.root), "t": qstr(self.t)}}


@dataclass(frozen=True)
class Torus:
    w: tuple  # element of h in coordinates
    t: object = 1

    def inverse(self):
        return Torus(self.w, ONE / q(self.t))

    def to_json(self):
        return {"torus": {"w": [qstr(x) for x in self.w], "t": qstr(self.t)}}


@dataclass(frozen=True)
class ExpPos:
    x: AlgebraElement = field(hash=False)

    def inverse(self):
        return ExpPos(-AlgebraElement(self.x))

    def to_json(self):
        return {"exp": AlgebraElement(self.x).to_json()}


@dataclass(frozen=True)
class WTilde:
    word: tuple
    s: object = 1

    def inverse(self):
        return WTilde(tuple(reversed(self.word)), -q(self.s))

    def to_json(self):
        return {"wtilde": {"word": list(self.word), "s": qstr(self.s)}}


def token_from_json(data):
    if "chi" in data:
        return ChiReal(tuple(data["chi"]["root"]), q(data["chi"]["t"]))
    if "torus" in data:
        return Torus(tuple(q(x) for x in data["torus"]["w"]), q(data["torus"]["t"]))
    if "exp" in data:
        return ExpPos(AlgebraElement.from_json(data["exp"]))
    if "wtilde" in data:
        return WTilde(tuple(data["wtilde"]["word"]), q(data["wtilde"].get("s", "1")))
    raise ValueError(f"unknown token {data!r}")


def word_inverse(word):
    return [tok.inverse() for tok in reversed(word)]


def _is_positive_token(tok):
    if isinstance(tok, (Torus, ExpPos)):
        return True
    if isinstance(tok, ChiReal):
        return is_positive(tok.root)
    return False


def _exp_full(x, v, module):
    """exp(rho(x)) v with no truncation; the series must end inside the window."""
    total, term, n = ModuleVector(module, v), ModuleVector(module, v), 0
    limit = module.window[1] - module.window[0] + 2
    while term:
        n += 1
        if n > limit:
            raise NonIntegrableLowering("exponential series does not terminate on the window")
        term = module.apply(x, term) * (ONE / n)
        total = total + term
    return total


def _apply_token(tok, v, module, truncate):
    alg = module.alg
    if isinstance(tok, Torus):
        t = q(tok.t)
        if not t:
            raise ValueError("torus parameter must be nonzero")
        out = {}
        for k, c in v.items():
            e = sum((a * b for a, b in zip(module.weight(k), tok.w)), ZERO)
            if e.denominator != 1:
                raise ValueError(f"<mu, w> = {qstr(e)} is not an integer")
            out[k] = c * t ** int(e)
        return ModuleVector(module, out)
    if isinstance(tok, ExpPos):
        x = AlgebraElement(tok.x)
        return exp_apply(x, v, module) if truncate else _exp_full(x, v, module)
    if isinstance(tok, ChiReal):
        root = tuple(tok.root)
        if alg.norm(root) <= 0:
            raise NotRealRoot(f"{list(root)} is not a real root", root=list(root))
        if is_negative(root) and not module.integrable:
            raise NonIntegrableLowering("lowering exponential on a non-integrable module")
        x = alg.real_root_vector(root) * tok.t
        if is_positive(root):
            return exp_apply(x, v, module) if truncate else _exp_full(x, v, module)
        return _exp_full(x, v, module)
    if isinstance(tok, WTilde):
        if not module.integrable:
            raise NonIntegrableLowering("Weyl lifts need an integrable module")
        s = q(tok.s)
        for i in reversed(tok.word):
            e, f = alg.e(i), alg.f(i)
            v = _exp_full(e * s, v, module)
            v = _exp_full(f * (-ONE / s), v, module)
            v = _exp_full(e * s, v, module)
        return v
    raise TypeError(f"unknown token {tok!r}")


def evaluate_word_on(word, v, module):
    """Apply the tokens of ``word`` to a vector, rightmost first."""
    truncate = all(_is_positive_token(t) for t in word)
    v = ModuleVector(module, v)
    for tok in reversed(word):
        v = _apply_token(tok, v, module, truncate)
    return v


def evaluate_word(word, module):
    """The window operator of a group word (rightmost token acts first)."""
    return WindowOperator(module, {k: evaluate_word_on(word, {k: ONE}, module) for k in module.keys()})


# ---------------------------------------------------------------------------
# complete root groups


class RootAlgebra:
    """``n_alpha`` in layer coordinates.

    For ``(alpha, alpha) < 0`` the layers are the Lyndon components of the free Lie
    algebra on ``b_1, ..., b_m`` (a basis of g_alpha); otherwise ``n_alpha = g_alpha``
    is abelian and only words of length one occur.
    """

    def __init__(self, alg, alpha, kmax):
        self.alg = alg
        self.alpha = tuple(alpha)
        self.kmax = int(kmax)
        if is_negative(self.alpha) and alg.norm(self.alpha) < 0:
            raise NegativeImaginaryExponential(
                f"exp of g_{list(self.alpha)} is not defined in the positive completion",
                root=list(self.alpha),
            )
        self.m = alg.mult(self.alpha)
        if not self.m:
            raise ValueError(f"{list(self.alpha)} is not a root")
        self.norm = alg.norm(self.alpha)
        self.free = self.norm < 0
        self.real = self.norm > 0
        if not self.free:
            self.kmax = 1

    def generators(self):
        """Elements of g corresponding to b_1, ..., b_m."""
        if self.real:
            return [self.alg.real_root_vector(self.alpha)]
        return [AlgebraElement({(self.alpha, i): ONE}) for i in range(self.m)]

    def words(self, k):
        return list(lyndon_words_of_length(self.m, k)) if k <= self.kmax else []

    def layer_dims(self):
        return [len(self.words(k)) for k in range(1, self.kmax + 1)]

    def bracket(self, a, b):
        """Bracket of layer coordinates (Lyndon word -> coeff), truncated at kmax."""
        if not self.free:
            return {}
        pa = _from_coords(a)
        pb = _from_coords(b)
        p = {w: c for w, c in poly_bracket(pa, pb).items() if len(w) <= self.kmax}
        return lie_coordinates(p)

    def product(self, a, b):
        if not self.free:
            return vadd(dict(a), b)
        z = bch_free(_from_coords(a), _from_coords(b), self.kmax)
        return lie_coordinates(z)

    def to_algebra(self, coords):
        """Evaluate layer coordinates in g (all layers must be within the cutoff)."""
        gens = self.generators()
        out = AlgebraElement()
        for w, c in coords.items():
            out = out + self._word_in_g(tuple(w), gens) * c
        return out

    def _word_in_g(self, w, gens):
        if len(w) == 1:
            return AlgebraElement(gens[w[0] - 1])
        u, v = standard_factorization(w)
        return self.alg.bracket(self._word_in_g(u, gens), self._word_in_g(v, gens))

    def max_layer_in_g(self):
        return self.alg.K // height(tuple(abs(k) for k in self.alpha))

    def check_layers(self):
        """Per layer within the cutoff: (k, dim g_{alpha,k}, Lyndon count, independent)."""
        kk = min(self.kmax, self.max_layer_in_g())
        layers = root_subalgebra_layers(self.alg, tuple(abs(x) for x in self.alpha), kk) if is_positive(self.alpha) else None
        out = []
        gens = self.generators()
        for k in range(1, kk + 1):
            ech = Echelon()
            indep = all(ech.add(self._word_in_g(w, gens)) for w in self.words(k))
            dim = layers[k - 1][0] if layers else (1 if k == 1 else 0)
            out.append((k, dim, len(self.words(k)), indep and len(ech) == dim))
        return out


def _from_coords(coords):
    out = {}
    for w, c in coords.items():
        vadd(out, expand(tuple(w)), q(c))
    return out


@dataclass
class RootGroupElement:
    root_algebra: RootAlgebra = field(repr=False)
    coords: dict  # Lyndon word -> coefficient

    def __post_init__(self):
        self.coords = {tuple(w): q(c) for w, c in self.coords.items() if c}
        ra = self.root_algebra
        for w in self.coords:
            if len(w) > ra.kmax or any(not 1 <= a <= ra.m for a in w):
                raise ValueError(f"word {list(w)} is not a layer coordinate of n_alpha")

    @property
    def alpha(self):
        return self.root_algebra.alpha

    def __mul__(self, other):
        return RootGroupElement(self.root_algebra, self.root_algebra.product(self.coords, other.coords))

    def inverse(self):
        return RootGroupElement(self.root_algebra, {w: -c for w, c in self.coords.items()})

    def __eq__(self, other):
        return isinstance(other, RootGroupElement) and self.alpha == other.alpha and self.coords == other.coords

    def log_in_g(self):
        return self.root_algebra.to_algebra(self.coords)

    def to_json(self):
        return {
            "root": list(self.alpha),
            "coords": [{"word": list(w), "coeff": qstr(c)} for w, c in sorted(self.coords.items(), key=lambda kv: (len(kv[0]), kv[0]))],
        }


def root_group_element(alg, alpha, coords, kmax=None):
    """Element of the complete root group of alpha in layer coordinates."""
    ra = RootAlgebra(alg, alpha, kmax if kmax is not None else max([1] + [len(w) for w in coords]))
    return RootGroupElement(ra, dict(coords))


def magnus_embedding(g, D=6):
    """``exp`` of the layer coordinates as a Magnus series over b_1..b_m."""
    ra = g.root_algebra
    if not ra.free:
        raise NotNegativeNorm(f"(alpha, alpha) = {qstr(ra.norm)} is not negative", norm=qstr(ra.norm))
    if ra.kmax < D:
        raise TruncationMismatch(f"layers are computed to {ra.kmax} < {D}", layers=ra.kmax, trunc=D)
    return magnus_exp(MagnusSeries(D, _from_coords(g.coords)))


def abelian_embedding(g):
    """Coordinates of an element of an abelian root group (the diagonal map)."""
    if g.root_algebra.free:
        raise ValueError("root group is not abelian")
    return {w[0]: c for w, c in g.coords.items()}


__all__ = [
    "ChiReal",
    "ExpPos",
    "RootAlgebra",
    "RootGroupElement",
    "Torus",
    "UnipotentElement",
    "WTilde",
    "bch",
    "bch_free",
    "bch_generic",
    "bch_product",
    "commutator_coeffs",
    "commutator_identity_holds",
    "commutator_rootspan",
    "evaluate_word",
    "evaluate_word_on",
    "factorize_ordered",
    "group_commutator",
    "magnus_embedding",
    "reconstruct_ordered",
    "root_group_element",
    "token_from_json",
    "unipotent",
    "witt",
    "word_inverse",
]
