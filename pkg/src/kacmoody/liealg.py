"""The Kac-Moody algebra g(A) truncated to heights |ht| <= K.

The positive part is built degree by degree as the free Lie algebra on the
``e_i`` modulo the ideal generated by the Serre elements.  Each free component
is handled inside the free associative algebra (words), where the ideal is
spanned by the Serre elements of that multidegree together with ``[e_i, J]``
for the lower components ``J``.  Survivors of a Lyndon-ordered echelonization
give the root-space bases; the negative side is the ``e -> f`` mirror image.

Basis keys are ``(root, idx)``: ``root`` an integer tuple in simple-root
coordinates, the zero tuple with ``idx < n`` denoting the coordinate basis of h.
"""

from functools import lru_cache
from itertools import product

from .cartan import bilinear_form, realization
from .errors import CutoffExceeded
from .freelie import expand, lyndon_words, poly_bracket, standard_factorization, witt
from .linalg import ONE, ZERO, Echelon, q, qstr, vadd, vscale
from .weyl import height, is_negative, is_positive, real_roots_up_to, simple_root

DEFAULT_CUTOFF = 8


class AlgebraElement(dict):
    """Sparse element ``(root, idx) -> coefficient`` with no explicit zeros."""

    def __add__(self, other):
        return AlgebraElement(vadd(dict(self), other))

    def __sub__(self, other):
        return AlgebraElement(vadd(dict(self), other, -ONE))

    def __neg__(self):
        return AlgebraElement(vscale(self, -ONE))

    def __mul__(self, c):
        return AlgebraElement(vscale(self, q(c)))

    __rmul__ = __mul__

    def degree_part(self, m):
        """The projection to the height-m component."""
        return AlgebraElement({k: c for k, c in self.items() if sum(k[0]) == m})

    def component(self, root):
        root = tuple(root)
        return AlgebraElement({k: c for k, c in self.items() if k[0] == root})

    def degrees(self):
        return sorted({sum(k[0]) for k in self})

    @property
    def order(self):
        return min(self.degrees()) if self else None

    def roots(self):
        return sorted({k[0] for k in self}, key=lambda r: (sum(r), r))

    def to_json(self):
        items = sorted(self.items(), key=lambda kv: (sum(kv[0][0]), kv[0][0], kv[0][1]))
        return {"terms": [{"root": list(r), "idx": i, "coeff": qstr(c)} for (r, i), c in items]}

    @classmethod
    def from_json(cls, data):
        out = {}
        for t in data["terms"]:
            vadd(out, {(tuple(t["root"]), int(t["idx"])): q(t["coeff"])})
        return cls(out)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _mirror(elem):
    """``e_i -> f_i`` image of a positive element (same coefficients, negated roots)."""
    return AlgebraElement({(tuple(-k for k in r), i): c for (r, i), c in elem.items()})


class GradedAlgebra:
    """Positive and negative root spaces up to height K plus the Cartan subalgebra."""

    def __init__(self, gcm, cutoff=DEFAULT_CUTOFF):
        self.gcm = gcm
        self.K = int(cutoff)
        self.l = gcm.size
        self.symmetrizer = gcm.symmetrizer
        self.realization = realization(gcm)
        self.n = self.realization.n
        self.zero_root = (0,) * self.l
        self.dims = {}  # positive root -> dim of g_root (0 entries kept for non-roots)
        self.words = {}  # positive root -> Lyndon words of the chosen basis
        self.ideal_dims = {}
        self._reducer = {}
        self._build()

    # ------------------------------------------------------------------ build

    def _build(self):
        l, K = self.l, self.K
        by_content = {}
        for w in lyndon_words(l, K) if K else []:
            c = [0] * l
            for a in w:
                c[a - 1] += 1
            by_content.setdefault(tuple(c), []).append(w)

        serre = {}
        for i in range(l):
            for j in range(l):
                if i == j:
                    continue
                p = {(j + 1,): 1}
                for _ in range(1 - self.gcm[i, j]):
                    p = poly_bracket({(i + 1,): 1}, p)
                root = tuple(1 - self.gcm[i, j] if c == i else (1 if c == j else 0) for c in range(l))
                serre.setdefault(root, []).append(p)
        self.serre_roots = sorted(serre, key=lambda r: (height(r), r))

        ideal_rows = {}
        for d in range(1, K + 1):
            for beta in _compositions(d, l):
                reducer = Echelon()
                gens = list(serre.get(beta, []))
                for i in range(l):
                    if beta[i] == 0:
                        continue
                    lower = tuple(b - (c == i) for c, b in enumerate(beta))
                    for row in ideal_rows.get(lower, ()):
                        gens.append(poly_bracket({(i + 1,): 1}, row))
                for g in gens:
                    reducer.add(g)
                ideal_rows[beta] = [row for row, _ in reducer.rows.values()]
                self.ideal_dims[beta] = len(reducer)
                chosen = []
                for w in by_content.get(beta, ()):
                    if reducer.add(expand(w), {len(chosen): ONE}):
                        chosen.append(w)
                self.dims[beta] = len(chosen)
                self.words[beta] = chosen
                self._reducer[beta] = reducer

    # ---------------------------------------------------------------- queries

    def dim(self, root):
        root = tuple(root)
        if not any(root):
            return self.n
        if is_positive(root):
            return self.dims.get(root, 0) if height(root) <= self.K else None
        if is_negative(root):
            return self.dim(tuple(-k for k in root))
        return 0

    def mult(self, root):
        d = self.dim(root)
        if d is None:
            raise CutoffExceeded(height(root), self.K)
        return d

    def positive_roots(self):
        return sorted((r for r, d in self.dims.items() if d), key=lambda r: (height(r), r))

    def roots_of_height(self, m):
        if m == 0:
            return [self.zero_root]
        sign = 1 if m > 0 else -1
        return [tuple(sign * k for k in r) for r in self.positive_roots() if height(r) == abs(m)]

    def basis(self, m):
        """Basis keys of the height-m component, sorted by (root, idx)."""
        if m == 0:
            return [(self.zero_root, i) for i in range(self.n)]
        if abs(m) > self.K:
            raise CutoffExceeded(m, self.K)
        return [(r, i) for r in self.roots_of_height(m) for i in range(self.dim(r))]

    def root_basis(self, root):
        root = tuple(root)
        return [(root, i) for i in range(self.mult(root))]

    def norm(self, root):
        return bilinear_form(self.gcm, root, root)

    # ------------------------------------------------------------- generators

    def e(self, i):
        return AlgebraElement({(simple_root(self.l, i), 0): ONE})

    def f(self, i):
        return AlgebraElement({(tuple(-k for k in simple_root(self.l, i)), 0): ONE})

    def h(self, idx):
        """Coordinate basis vector ``idx`` (1-based) of h."""
        return AlgebraElement({(self.zero_root, idx - 1): ONE})

    def coroot(self, i):
        row = self.realization.simple_coroots[i - 1]
        return AlgebraElement({(self.zero_root, c): x for c, x in enumerate(row) if x})

    def h_element(self, coords):
        return AlgebraElement({(self.zero_root, c): q(x) for c, x in enumerate(coords) if x})

    def rho_check(self):
        """The element of h on which every simple root takes the value 1."""
        return self.h_element([1] * self.l + [0] * (self.n - self.l))

    def basis_element(self, root, idx=0):
        root = tuple(root)
        if idx >= self.mult(root):
            raise IndexError(f"root space {list(root)} has dimension {self.mult(root)}")
        return AlgebraElement({(root, idx): ONE})

    def label(self, key):
        """Human-readable bracket for a basis key."""
        root, idx = key
        if not any(root):
            return f"h{idx + 1}"
        pos = tuple(abs(k) for k in root)
        letter = "e" if is_positive(root) else "f"

        def render(w):
            if len(w) == 1:
                return f"{letter}{w[0]}"
            u, v = standard_factorization(w)
            return f"[{render(u)},{render(v)}]"

        return render(self.words[pos][idx])

    # ---------------------------------------------------------------- bracket

    def _coords(self, root, poly):
        """Reduce a free Lie polynomial of multidegree ``root`` into g_root coordinates."""
        if not self.dims.get(root):
            return AlgebraElement()
        coords = self._reducer[root].coordinates(poly)
        return AlgebraElement({(root, k): c for k, c in coords.items()})

    @lru_cache(maxsize=None)
    def _word_element(self, word):
        c = [0] * self.l
        for a in word:
            c[a - 1] += 1
        return self._coords(tuple(c), expand(word))

    def _check_sum(self, ra, rb):
        s = tuple(a + b for a, b in zip(ra, rb))
        ht = height(s)
        if abs(ht) > self.K and (is_positive(s) or is_negative(s)):
            raise CutoffExceeded(ht, self.K)
        return s

    @lru_cache(maxsize=None)
    def _bracket_keys(self, a, b):
        ra, ia = a
        rb, ib = b
        s = self._check_sum(ra, rb)
        za, zb = not any(ra), not any(rb)
        if za and zb:
            return ()
        if za:
            return (((rb, ib), q(rb[ia]) if ia < self.l else ZERO),) if ia < self.l and rb[ia] else ()
        if zb:
            return (((ra, ia), -q(ra[ib])),) if ib < self.l and ra[ib] else ()
        if not (is_positive(s) or is_negative(s) or not any(s)):
            return ()
        if any(s) and not self.dim(s):
            return ()
        pa, pb = is_positive(ra), is_positive(rb)
        if pa and pb:
            return tuple(self._positive_bracket(a, b).items())
        if not pa and not pb:
            na = (tuple(-k for k in ra), ia)
            nb = (tuple(-k for k in rb), ib)
            return tuple(_mirror(self._positive_bracket(na, nb)).items())
        if not pa:
            return tuple((k, -c) for k, c in self._bracket_keys(b, a))
        return tuple(self._mixed(a, b).items())

    def _positive_bracket(self, a, b):
        (ra, ia), (rb, ib) = a, b
        s = tuple(x + y for x, y in zip(ra, rb))
        poly = poly_bracket(expand(self.words[ra][ia]), expand(self.words[rb][ib]))
        return self._coords(s, poly)

    def _mixed(self, a, b):
        """``[x, y]`` for x positive and y negative, by induction on the height of y."""
        rb, ib = b
        gamma = tuple(-k for k in rb)
        word = self.words[gamma][ib]
        x = AlgebraElement({a: ONE})
        if len(word) == 1:
            return -self._ad_f(word[0], a)
        u, v = standard_factorization(word)
        U = _mirror(self._word_element(u))
        V = _mirror(self._word_element(v))
        return self.bracket(self.bracket(x, U), V) + self.bracket(U, self.bracket(x, V))

    def _ad_f(self, i, a):
        """``[f_i, x]`` for a positive basis key ``a``."""
        ra, ia = a
        word = self.words[ra][ia]
        if len(word) == 1:
            return -self.coroot(i) if word[0] == i else AlgebraElement()
        u, v = standard_factorization(word)
        U, V = self._word_element(u), self._word_element(v)
        fi = self.f(i)
        return self.bracket(self.bracket(fi, U), V) + self.bracket(U, self.bracket(fi, V))

    def bracket(self, x, y, max_degree=None):
        """``[x, y]``; with ``max_degree`` the components above that height are dropped."""
        out = {}
        for a, ca in x.items():
            for b, cb in y.items():
                if max_degree is not None and sum(a[0]) + sum(b[0]) > max_degree:
                    continue
                for k, c in self._bracket_keys(a, b):
                    value = out.get(k, ZERO) + ca * cb * c
                    if value:
                        out[k] = value
                    else:
                        out.pop(k, None)
        return AlgebraElement(out)

    def ad_power(self, x, y, n):
        for _ in range(n):
            y = self.bracket(x, y)
        return y

    def exp_ad(self, x, y, t=1):
        """``exp(t ad x) y`` for locally nilpotent action; stops at the first zero term."""
        t = q(t)
        total = AlgebraElement(y)
        term = AlgebraElement(y)
        n = 0
        while term:
            n += 1
            term = self.bracket(x, term) * (t / n)
            total = total + term
        return total

    # ------------------------------------------------------------ Weyl lifts

    def wtilde(self, i, y, s=1):
        """``w~_i(s) = chi_{a_i}(s) chi_{-a_i}(-1/s) chi_{a_i}(s)`` acting on y."""
        s = q(s)
        y = self.exp_ad(self.e(i), y, s)
        y = self.exp_ad(self.f(i), y, -ONE / s)
        return self.exp_ad(self.e(i), y, s)

    def wtilde_word(self, word, y, s=1):
        for i in reversed(word):
            y = self.wtilde(i, y, s)
        return y

    @lru_cache(maxsize=None)
    def real_root_vector(self, root):
        """``x_alpha = w~ e_i`` (or ``w~ f_i`` for negative alpha) from the BFS witness."""
        root = tuple(root)
        pos = tuple(abs(k) for k in root)
        witnesses = real_roots_up_to(self.gcm, height(pos))
        if pos not in witnesses:
            from .errors import NotRealRoot

            raise NotRealRoot(f"{list(root)} is not a real root", root=list(root))
        word, i = witnesses[pos]
        start = self.e(i) if is_positive(root) else self.f(i)
        return self.wtilde_word(word, start)

    # --------------------------------------------------------------- checks

    def serre_elements(self):
        """All Serre elements (both signs) of height within the cutoff, evaluated in g."""
        out = []
        for i in range(1, self.l + 1):
            for j in range(1, self.l + 1):
                if i == j or 2 - self.gcm[i - 1, j - 1] > self.K:
                    continue
                n = 1 - self.gcm[i - 1, j - 1]
                out.append(((i, j, "e"), self.ad_power(self.e(i), self.e(j), n)))
                out.append(((i, j, "f"), self.ad_power(self.f(i), self.f(j), n)))
        return out

    def multiplicity_table(self):
        return {r: self.dims[r] for r in sorted(self.dims, key=lambda r: (height(r), r))}


def build_graded_algebra(gcm, cutoff=DEFAULT_CUTOFF):
    return GradedAlgebra(gcm, cutoff)


# ---------------------------------------------------------------------------
# Peterson recurrence


def peterson_table(gcm, beta):
    """Root multiplicities for every gamma with 0 < gamma <= beta (componentwise).

    Uses ``(g|g-2rho) c_g = sum_{g'+g''=g} (g'|g'') c_g' c_g''`` with
    ``c_g = sum_{k | g} mult(g/k)/k`` and ``(alpha_i|rho) = d_i``.
    """
    beta = tuple(beta)
    d = gcm.symmetrizer
    boxes = sorted(
        (g for g in product(*(range(b + 1) for b in beta)) if any(g)),
        key=lambda g: (height(g), g),
    )
    c, mult = {}, {}
    log_d = None
    for g in boxes:
        if height(g) == 1:
            c[g] = ONE
            mult[g] = 1
            continue
        lhs = bilinear_form(gcm, g, g) - 2 * sum(k * di for k, di in zip(g, d))
        rhs = ZERO
        for g1 in product(*(range(k + 1) for k in g)):
            if not any(g1) or g1 == g:
                continue
            g2 = tuple(a - b for a, b in zip(g, g1))
            c1, c2 = c[g1], c[g2]
            if c1 and c2:
                rhs += bilinear_form(gcm, g1, g2) * c1 * c2
        if lhs == 0:
            # the recurrence carries no information here; read c off the denominator identity
            if rhs != 0:
                raise ArithmeticError(f"inconsistent recurrence at {g}")
            if log_d is None:
                log_d = _log_denominator(gcm, beta)
            c[g] = -log_d.get(g, ZERO)
        else:
            c[g] = rhs / lhs
        m = c[g]
        for k in range(2, max(g) + 1):
            if all(x % k == 0 for x in g):
                m -= q(mult[tuple(x // k for x in g)]) / k
        if m.denominator != 1 or m < 0:
            raise ArithmeticError(f"non-integral multiplicity {m} at {g}")
        mult[g] = int(m)
    return mult


def _log_denominator(gcm, box):
    """``log sum_w eps(w) e^{w rho - rho}`` as a series in ``e^{-beta}``, beta <= box.

    ``x_w = rho - w rho`` grows along length-increasing steps:
    ``x_{s_i w} = x_w + (1 - <x_w, alpha_i^vee>) alpha_i``.
    """
    l = gcm.size
    inside = lambda x: all(a <= b for a, b in zip(x, box))
    zero = (0,) * l
    sign = {zero: 1}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(l):
                step = 1 - sum(x[j] * gcm[i, j] for j in range(l))
                if step <= 0:
                    continue
                y = tuple(a + step * (k == i) for k, a in enumerate(x))
                if inside(y) and y not in sign:
                    sign[y] = -sign[x]
                    nxt.append(y)
        frontier = nxt
    nil = {x: q(s) for x, s in sign.items() if x != zero}

    def mul(a, b):
        out = {}
        for x, ca in a.items():
            for y, cb in b.items():
                z = tuple(u + v for u, v in zip(x, y))
                if inside(z):
                    out[z] = out.get(z, ZERO) + ca * cb
        return {k: v for k, v in out.items() if v}

    total, power, k = {}, dict(nil), 1
    while power:
        vadd(total, power, q((-1) ** (k + 1)) / k)
        power = mul(power, nil)
        k += 1
    return total


def peterson_mult(gcm, beta):
    beta = tuple(beta)
    if not is_positive(beta):
        return 0
    return peterson_table(gcm, beta)[beta]


# ---------------------------------------------------------------------------
# root subalgebra layers


def root_subalgebra_layers(alg, alpha, kmax):
    """Bases of ``g_{a,1} = g_a`` and ``g_{a,k} = [g_a, g_{a,k-1}]`` for k <= kmax.

    Returns a list of ``(dim, [AlgebraElement, ...])``; layer k lives in g_{k alpha}.
    """
    alpha = tuple(alpha)
    if kmax * abs(height(alpha)) > alg.K:
        raise CutoffExceeded(kmax * height(alpha), alg.K)
    first = [AlgebraElement({key: ONE}) for key in alg.root_basis(alpha)]
    layers = [(len(first), first)]
    prev = first
    for _ in range(2, kmax + 1):
        ech = Echelon()
        basis = []
        for x in first:
            for y in prev:
                z = alg.bracket(x, y)
                if ech.add(z):
                    basis.append(z)
        layers.append((len(basis), basis))
        prev = basis
    return layers


def layer_dimension_prediction(alg, alpha, k):
    """Expected layer dimension: m for k = 1, then witt(m, k) if (a,a) < 0 and 0 otherwise."""
    m = alg.mult(alpha)
    nn = alg.norm(alpha)
    if k == 1:
        return m
    if nn >= 0:
        return 0
    return witt(m, k)


def random_element(alg, rng, degrees, density=1.0, max_num=3, max_den=3):
    """Random rational element supported on the given heights."""
    out = {}
    for m in degrees:
        for key in alg.basis(m):
            if rng.random() <= density:
                num = rng.randint(-max_num, max_num)
                if num:
                    out[key] = q(num) / rng.randint(1, max_den)
    return AlgebraElement(out)


__all__ = [
    "AlgebraElement",
    "GradedAlgebra",
    "build_graded_algebra",
    "peterson_mult",
    "peterson_table",
    "random_element",
    "root_subalgebra_layers",
]
