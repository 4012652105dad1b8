"""Free Lie algebras on letters 1..m and the truncated Magnus algebra.

Words are tuples of positive ints.  A Lie polynomial is kept in its expanded
form inside the free associative algebra: a dict ``word -> coefficient``.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .errors import NotGroupElement
from .linalg import ONE, ZERO, q, qstr, vadd, vscale

DEFAULT_TRUNCATION = 6


# ---------------------------------------------------------------------------
# Lyndon words


def lyndon_words(m, max_len):
    """All Lyndon words over 1..m of length <= max_len, in lexicographic order (Duval)."""
    w = [0]
    out = []
    while w:
        w[-1] += 1
        out.append(tuple(w))
        n = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - n])
        while w and w[-1] == m:
            w.pop()
    return out


@lru_cache(maxsize=None)
def lyndon_words_of_length(m, k):
    return tuple(w for w in lyndon_words(m, k) if len(w) == k)


def is_lyndon(word):
    word = tuple(word)
    return bool(word) and all(word < word[i:] + word[:i] for i in range(1, len(word)))


def content(word, m):
    c = [0] * m
    for a in word:
        c[a - 1] += 1
    return tuple(c)


def standard_factorization(word):
    """``w = u v`` with v the longest proper Lyndon suffix (= smallest proper suffix)."""
    word = tuple(word)
    v = min(word[i:] for i in range(1, len(word)))
    return word[: len(word) - len(v)], v


def bracketing(word):
    """Nested-tuple standard bracketing, e.g. (1, (1, 2)) for the word 112."""
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (bracketing(u), bracketing(v))


def bracket_str(word, names=None):
    def render(t):
        if isinstance(t, int):
            return names[t - 1] if names else f"b{t}"
        return f"[{render(t[0])},{render(t[1])}]"

    return render(bracketing(tuple(word)))


def poly_mul(p, r, max_len=None):
    out = {}
    for a, ca in p.items():
        for b, cb in r.items():
            if max_len is not None and len(a) + len(b) > max_len:
                continue
            w = a + b
            value = out.get(w, 0) + ca * cb
            if value:
                out[w] = value
            else:
                out.pop(w, None)
    return out


def poly_bracket(p, r):
    return vadd(poly_mul(p, r), poly_mul(r, p), -1)


@lru_cache(maxsize=None)
def _expand(word):
    if len(word) == 1:
        return ((word, 1),)
    u, v = standard_factorization(word)
    pu, pv = dict(_expand(u)), dict(_expand(v))
    return tuple(sorted(poly_bracket(pu, pv).items()))


def expand(word):
    """The Lyndon bracket of ``word`` as an integer polynomial in the free associative algebra."""
    return dict(_expand(tuple(word)))


@dataclass(frozen=True)
class LyndonBracket:
    word: tuple

    @property
    def degree(self):
        return len(self.word)

    def multidegree(self, m):
        return content(self.word, m)

    def expand(self):
        return expand(self.word)

    def __str__(self):
        return bracket_str(self.word)


def lyndon_basis(m, k):
    """Standard-bracketed Lyndon words of degree k over m letters, lexicographic order."""
    return [LyndonBracket(w) for w in lyndon_words_of_length(m, k)]


def mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def witt(m, k):
    total = sum(mobius(d) * m ** (k // d) for d in range(1, k + 1) if k % d == 0)
    return total // k


def lie_coordinates(poly):
    """Coordinates of a homogeneous-or-not Lie polynomial in the Lyndon basis.

    ``P(w) = w + (lexicographically larger words)`` for every Lyndon w, so the
    system is triangular: repeatedly clear the smallest surviving word.
    Returns ``None`` when ``poly`` is not a Lie polynomial.
    """
    rest = {w: q(c) for w, c in poly.items() if c}
    coords = {}
    while rest:
        w = min(rest, key=lambda x: (len(x), x))
        if not is_lyndon(w):
            return None
        c = rest[w]
        coords[w] = c
        vadd(rest, expand(w), -c)
    return coords


def from_lie_coordinates(coords):
    out = {}
    for w, c in coords.items():
        vadd(out, expand(w), c)
    return out


# ---------------------------------------------------------------------------
# Magnus algebra


@dataclass
class MagnusSeries:
    """Noncommutative power series truncated at total degree ``trunc``."""

    trunc: int = DEFAULT_TRUNCATION
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {tuple(w): q(c) for w, c in self.terms.items() if c and len(w) <= self.trunc}

    @classmethod
    def one(cls, trunc=DEFAULT_TRUNCATION):
        return cls(trunc, {(): ONE})

    @classmethod
    def letter(cls, a, coeff=1, trunc=DEFAULT_TRUNCATION):
        return cls(trunc, {(a,): q(coeff)})

    @property
    def constant(self):
        return self.terms.get((), ZERO)

    def __eq__(self, other):
        return isinstance(other, MagnusSeries) and self.trunc == other.trunc and self.terms == other.terms

    def _check(self, other):
        if self.trunc != other.trunc:
            raise ValueError("truncation mismatch")

    def __add__(self, other):
        self._check(other)
        return MagnusSeries(self.trunc, vadd(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        return MagnusSeries(self.trunc, vadd(dict(self.terms), other.terms, -ONE))

    def __neg__(self):
        return MagnusSeries(self.trunc, vscale(self.terms, -ONE))

    def scale(self, c):
        return MagnusSeries(self.trunc, vscale(self.terms, q(c)))

    def __mul__(self, other):
        self._check(other)
        return MagnusSeries(self.trunc, poly_mul(self.terms, other.terms, self.trunc))

    def degree_part(self, k):
        return {w: c for w, c in self.terms.items() if len(w) == k}

    def _power_series(self, coeffs):
        """``sum_n coeffs[n] * self**n`` for a series without constant term."""
        result = MagnusSeries(self.trunc, {(): coeffs[0]} if coeffs[0] else {})
        power = MagnusSeries.one(self.trunc)
        for n in range(1, self.trunc + 1):
            power = power * self
            if not power.terms:
                break
            result = result + power.scale(coeffs[n])
        return result

    def to_json(self):
        return {
            "trunc": self.trunc,
            "terms": [{"word": list(w), "coeff": qstr(c)} for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))],
        }

    @classmethod
    def from_json(cls, data):
        return cls(int(data["trunc"]), {tuple(t["word"]): q(t["coeff"]) for t in data["terms"]})


def _require_group(s):
    if s.constant != ONE:
        raise NotGroupElement(f"constant term is {qstr(s.constant)}, expected 1")


def magnus_mul(s, t):
    _require_group(s)
    _require_group(t)
    return s * t


def magnus_inv(s):
    _require_group(s)
    nil = s - MagnusSeries.one(s.trunc)
    return nil._power_series([(-ONE) ** n for n in range(s.trunc + 1)])


def magnus_commutator(s, t):
    """Group commutator ``s t s^-1 t^-1``."""
    return magnus_mul(magnus_mul(magnus_mul(s, t), magnus_inv(s)), magnus_inv(t))


def magnus_exp(x):
    if x.constant:
        raise NotGroupElement("exp needs a series with zero constant term")
    return x._power_series([ONE / factorial(n) for n in range(x.trunc + 1)])


def magnus_log(s):
    _require_group(s)
    nil = s - MagnusSeries.one(s.trunc)
    coeffs = [ZERO] + [q((-1) ** (n + 1)) / n for n in range(1, s.trunc + 1)]
    return nil._power_series(coeffs)


def is_lie_series(x):
    """True when every homogeneous component is a Lie polynomial."""
    return x.constant == 0 and lie_coordinates(x.terms) is not None
