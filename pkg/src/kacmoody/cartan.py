"""Generalized Cartan matrices: validation, symmetrizers, type, realization, form.

Indices are 0-based internally; error messages and JSON use 1-based entries.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import gcd, lcm

from .errors import NotAGCM, NotSymmetrizable
from .linalg import ONE, ZERO, det, nullspace, q, rank


@dataclass(frozen=True)
class GCM:
    entries: tuple  # tuple of int tuples

    @property
    def size(self):
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]

    @cached_property
    def symmetrizer(self):
        return _symmetrize(self)

    @cached_property
    def rank(self):
        return rank(self.rows())

    def components(self):
        """Indecomposable components as sorted index lists."""
        n = self.size
        seen, comps = set(), []
        for start in range(n):
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if j not in seen and self.entries[i][j] != 0:
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def submatrix(self, idx):
        return GCM(tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def to_json(self):
        return {"cartan": self.rows()}


def validate(entries):
    """Check (C1)-(C3) and return a GCM."""
    rows = [list(r) for r in entries]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotAGCM("square", (0, 0), "matrix must be square and nonempty")
    for i in range(n):
        for j in range(n):
            if int(rows[i][j]) != rows[i][j]:
                raise NotAGCM("integer", (i, j))
    for i in range(n):
        if rows[i][i] != 2:
            raise NotAGCM("C1", (i, i))
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] > 0:
                raise NotAGCM("C2", (i, j))
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] == 0 and rows[j][i] != 0:
                raise NotAGCM("C3", (i, j))
    return GCM(tuple(tuple(int(x) for x in r) for r in rows))


def _symmetrize(gcm):
    n = gcm.size
    d = [None] * n
    for comp in gcm.components():
        root = comp[0]
        d[root] = ONE
        stack = [root]
        while stack:
            i = stack.pop()
            for j in comp:
                if j == i or gcm[i, j] == 0:
                    continue
                # d_i a_ij = d_j a_ji
                dj = d[i] * gcm[i, j] / gcm[j, i]
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    raise NotSymmetrizable(
                        f"no positive solution to d_i a_ij = d_j a_ji at ({i + 1},{j + 1})",
                        entry=[i + 1, j + 1],
                    )
        den = lcm(*(int(d[i].denominator) for i in comp))
        ints = [int(d[i] * den) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            d[i] = v // g
    return tuple(d)


def validate_and_symmetrize(entries):
    gcm = validate(entries)
    return gcm, gcm.symmetrizer


def symmetrized(gcm):
    d = gcm.symmetrizer
    return [[q(d[i] * gcm[i, j]) for j in range(gcm.size)] for i in range(gcm.size)]


# ---------------------------------------------------------------------------
# type classification


@dataclass(frozen=True)
class TypeClass:
    kind: str  # "finite" | "affine" | "indefinite"
    hyperbolic: bool = False

    def to_json(self):
        out = {"type": self.kind}
        if self.kind == "indefinite":
            out["hyperbolic"] = self.hyperbolic
        return out


def _definiteness(m):
    n = len(m)
    if all(det([row[:k] for row in m[:k]]) > 0 for k in range(1, n + 1)):
        return "finite"
    # positive semidefinite iff every principal minor is nonnegative
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if det([[m[i][j] for j in idx] for i in idx]) < 0:
                return "indefinite"
    return "affine"


def _is_indecomposable(gcm):
    return len(gcm.components()) == 1


def classify(gcm):
    kind = _definiteness(symmetrized(gcm))
    hyperbolic = False
    if kind == "indefinite" and _is_indecomposable(gcm):
        hyperbolic = True
        n = gcm.size
        for k in range(1, n):
            for idx in combinations(range(n), k):
                sub = gcm.submatrix(idx)
                if _is_indecomposable(sub) and _definiteness(symmetrized(sub)) == "indefinite":
                    hyperbolic = False
                    break
            if not hyperbolic:
                break
    return TypeClass(kind, hyperbolic)


# ---------------------------------------------------------------------------
# realization


@dataclass(frozen=True)
class Realization:
    n: int
    simple_roots: tuple  # l x n, rows = alpha_i in a basis of h*
    simple_coroots: tuple  # l x n, rows = alpha_i^vee in the dual basis of h

    def pairing(self, weight, coweight):
        return sum((a * b for a, b in zip(weight, coweight)), ZERO)

    def pairing_matrix(self):
        """Entry (i, j) is <alpha_j, alpha_i^vee>."""
        return [
            [self.pairing(self.simple_roots[j], self.simple_coroots[i]) for j in range(len(self.simple_roots))]
            for i in range(len(self.simple_coroots))
        ]

    def root_to_weight(self, coeffs):
        """Root-lattice coordinates -> h* coordinates."""
        out = [ZERO] * self.n
        for k, row in zip(coeffs, self.simple_roots):
            if k:
                for c, x in enumerate(row):
                    out[c] += k * x
        return tuple(out)

    def to_json(self):
        from .linalg import qstr

        return {
            "n": self.n,
            "simple_roots": [[qstr(x) for x in r] for r in self.simple_roots],
            "simple_coroots": [[qstr(x) for x in r] for r in self.simple_coroots],
        }


def realization(gcm):
    """Simple roots are the first l unit vectors of h*; coroots are ``[A | B]``.

    ``B`` adds one unit column for every row of A outside a fixed maximal
    independent set of rows (chosen greedily top to bottom), which makes the
    coroots independent while keeping the pairing matrix equal to A.
    """
    l = gcm.size
    r = gcm.rank
    n = 2 * l - r
    rows = gcm.rows()
    chosen, dependent = [], []
    for i in range(l):
        if rank([rows[k] for k in chosen + [i]]) > len(chosen):
            chosen.append(i)
        else:
            dependent.append(i)
    coroots = []
    for i in range(l):
        extra = [ONE if dependent[k] == i else ZERO for k in range(l - r)]
        coroots.append(tuple([q(x) for x in rows[i]] + extra))
    roots = tuple(tuple(ONE if c == i else ZERO for c in range(n)) for i in range(l))
    real = Realization(n, roots, tuple(coroots))
    assert real.pairing_matrix() == [[q(x) for x in row] for row in rows]
    assert rank([list(x) for x in real.simple_coroots]) == l
    return real


def coxeter_matrix(gcm):
    table = {0: 2, 1: 3, 2: 4, 3: 6}
    n = gcm.size
    return [
        [1 if i == j else table.get(gcm[i, j] * gcm[j, i], 0) for j in range(n)]
        for i in range(n)
    ]


def bilinear_form(gcm, x, y, symmetrizer=None):
    """``(x, y)`` for root-lattice coordinate vectors, ``(alpha_i, alpha_j) = d_i a_ij``."""
    d = symmetrizer or gcm.symmetrizer
    n = gcm.size
    total = ZERO
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if y[j]:
                total += q(x[i]) * q(y[j]) * d[i] * gcm[i, j]
    return total


def null_vector(gcm):
    """Kernel of A over Q (for affine matrices this spans the imaginary direction)."""
    return nullspace(gcm.rows())
