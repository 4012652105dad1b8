"""Exact rational arithmetic: scalar helpers, dense solves, and a sparse echelon basis.

All scalars are ``gmpy2.mpq``.  Sparse vectors are plain dicts mapping a sortable
column key to a nonzero rational.
"""

import heapq

from gmpy2 import mpq

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def q(value):
    """Coerce ints, ``"p/q"`` strings, Fractions and mpq values to ``mpq``."""
    if isinstance(value, str):
        return mpq(value.strip())
    return mpq(value)


def qstr(value):
    """Canonical rational string: ``"3"``, ``"-1/2"``."""
    value = mpq(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# sparse vectors


def vadd(acc, vec, coeff=ONE):
    """In-place ``acc += coeff * vec`` dropping zeros; returns ``acc``."""
    if not coeff:
        return acc
    for key, c in vec.items():
        value = acc.get(key, ZERO) + coeff * c
        if value:
            acc[key] = value
        else:
            acc.pop(key, None)
    return acc


def vscale(vec, coeff):
    if not coeff:
        return {}
    return {k: coeff * c for k, c in vec.items()}


def vsub(a, b):
    return vadd(dict(a), b, -ONE)


class Echelon:
    """Incrementally built row-echelon basis of sparse vectors.

    Each row carries a *tag*: a sparse combination of caller-supplied labels that
    the row represents.  ``reduce`` returns the residual together with the
    combination of tags that was subtracted, which lets the same object serve as
    a span-membership test and as a coordinate solver for quotient spaces.
    """

    def __init__(self):
        self.rows = {}  # pivot column -> (row, tag); row[pivot] == 1

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, tag=None):
        vec = dict(vec)
        tag = dict(tag) if tag else {}
        rows = self.rows
        if not rows:
            return vec, tag
        heap = [k for k in vec if k in rows]
        heapq.heapify(heap)
        while heap:
            col = heapq.heappop(heap)
            c = vec.get(col)
            if not c:
                continue
            row, rtag = rows[col]
            for k, x in row.items():
                value = vec.get(k, ZERO) - c * x
                if value:
                    if k not in vec and k in rows:
                        heapq.heappush(heap, k)
                    vec[k] = value
                else:
                    vec.pop(k, None)
            vadd(tag, rtag, -c)
        return vec, tag

    def add(self, vec, tag=None):
        """Add ``vec``; returns True when it enlarged the span."""
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False
        pivot = min(vec)
        inv = ONE / vec[pivot]
        self.rows[pivot] = (vscale(vec, inv), vscale(tag, inv))
        return True

    def contains(self, vec):
        return not self.reduce(vec)[0]

    def coordinates(self, vec):
        """Return the tag combination representing ``vec``; raises if not in the span."""
        residual, tag = self.reduce(vec)
        if residual:
            raise ValueError("vector is not in the span")
        return {k: -c for k, c in tag.items()}


# ---------------------------------------------------------------------------
# dense helpers (small matrices: Cartan data, realizations, Vandermonde solves)


def to_q_matrix(rows):
    return [[q(x) for x in row] for row in rows]


def _rref(m):
    m = [list(row) for row in m]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(m):
    if not m or not m[0]:
        return 0
    return len(_rref(to_q_matrix(m))[1])


def det(m):
    m = to_q_matrix(m)
    n = len(m)
    result = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        inv = ONE / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def solve(a, b):
    """Solve ``a x = b`` for a square nonsingular ``a``; ``b`` a vector or matrix."""
    a = to_q_matrix(a)
    n = len(a)
    vector = not isinstance(b[0], (list, tuple))
    bm = [[q(x)] for x in b] if vector else to_q_matrix(b)
    aug = [ra + rb for ra, rb in zip(a, bm)]
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular system")
    sol = [row[n:] for row in red[:n]]
    return [row[0] for row in sol] if vector else sol


def inverse(a):
    n = len(a)
    return solve(a, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])


def nullspace(m):
    """Basis of ``{x : m x = 0}`` as a list of vectors."""
    m = to_q_matrix(m)
    ncols = len(m[0])
    red, pivots = _rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for r, pc in enumerate(pivots):
            x[pc] = -red[r][fc]
        basis.append(x)
    return basis


def matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in zip(*b)] for row in a]
