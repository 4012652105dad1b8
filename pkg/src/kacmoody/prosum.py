"""Operators on a module window: exponentials, ordered products, shift/smear decomposition.

An operator is stored by sparse columns ``basis key -> ModuleVector``.  Positive
operators are computed on the quotient of the window by the degrees above
``hi``, so every column is exact for ``pi_k`` with ``k <= hi``.
"""

from itertools import product as iproduct
from math import factorial

from .errors import NotSmear, WrongDegree
from .linalg import ONE, ZERO, q, qstr, vadd
from .liealg import AlgebraElement
from .modules import ModuleVector
from .weyl import height


class WindowOperator:
    def __init__(self, module, cols):
        self.module = module
        self.cols = {k: ModuleVector(module, v) for k, v in cols.items() if v}

    @classmethod
    def identity(cls, module):
        return cls(module, {k: {k: ONE} for k in module.keys()})

    @classmethod
    def from_map(cls, module, fn):
        return cls(module, {k: fn(module.basis_vector(k)) for k in module.keys()})

    def column(self, key):
        return self.cols.get(key, ModuleVector(self.module))

    def apply(self, v):
        out = {}
        for k, c in v.items():
            vadd(out, self.column(k), c)
        return ModuleVector(self.module, out)

    __call__ = apply

    def compose(self, other):
        """``self o other`` (other applied first)."""
        return WindowOperator(self.module, {k: self.apply(col) for k, col in other.cols.items()})

    __matmul__ = compose

    def __add__(self, other):
        cols = {k: dict(v) for k, v in self.cols.items()}
        for k, v in other.cols.items():
            cols[k] = vadd(cols.get(k, {}), v)
        return WindowOperator(self.module, cols)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = q(c)
        return WindowOperator(self.module, {k: {r: c * x for r, x in v.items()} for k, v in self.cols.items()})

    def __eq__(self, other):
        if not isinstance(other, WindowOperator):
            return NotImplemented
        keys = set(self.cols) | set(other.cols)
        return all(dict(self.column(k)) == dict(other.column(k)) for k in keys)

    def __hash__(self):
        return id(self)

    def is_identity(self):
        return self == WindowOperator.identity(self.module)

    def blocks(self):
        """Dense matrices per (source degree, target degree) with nonzero entries."""
        mod = self.module
        lo, hi = mod.window
        out = []
        for j in range(lo, hi + 1):
            src = mod.basis(j)
            for k in range(lo, hi + 1):
                tgt = mod.basis(k)
                mat = [[self.column(s).get(t, ZERO) for s in src] for t in tgt]
                if any(any(row) for row in mat):
                    out.append((j, k, src, tgt, mat))
        return out

    def to_json(self, shift=None):
        label = getattr(self.module, "key_label", repr)
        return {
            "window": list(self.module.window),
            "shift": shift,
            "blocks": [
                {
                    "from": j,
                    "to": k,
                    "cols": [label(s) for s in src],
                    "rows": [label(t) for t in tgt],
                    "matrix": [[qstr(x) for x in row] for row in mat],
                }
                for j, k, src, tgt, mat in self.blocks()
            ],
        }


class ShiftOperator(WindowOperator):
    """Maps V_k into V_{k+m} for every k."""

    def __init__(self, module, shift, cols):
        super().__init__(module, cols)
        self.shift = shift
        deg = module.degree
        for k, col in self.cols.items():
            for r in col:
                if deg(r) != deg(k) + shift:
                    raise ValueError(f"column {k!r} leaves the {shift}-shift pattern")

    def to_json(self):
        return super().to_json(self.shift)


# ---------------------------------------------------------------------------
# exponentials


def _check_positive(x):
    for root, _ in x:
        if height(root) < 1 or any(k < 0 for k in root):
            raise ValueError(f"element has a component at {list(root)}, outside the positive part")


def exp_apply(x, v, module, bound=None, truncate=True):
    """``exp(rho(x)) v`` accumulated term by term ``t_n = rho(x) t_{n-1} / n``.

    ``bound`` caps n; by default ``hi - N(v)``, past which every term lies above
    the window.
    """
    _check_positive(x)
    v = ModuleVector(module, v)
    if not v:
        return v
    if bound is None:
        bound = module.window[1] - v.order
    total = ModuleVector(module, v)
    term = v
    for n in range(1, bound + 1):
        term = module.apply(x, term, truncate=truncate) * (ONE / n)
        if not term:
            break
        total = total + term
    return total


def exp_operator(x, module, bound=None):
    """``exp(rho(x))`` on the window, for x in the positive part."""
    _check_positive(x)
    return WindowOperator(module, {k: exp_apply(x, {k: ONE}, module, bound) for k in module.keys()})


def _homogeneous_parts(x):
    parts = {}
    for key, c in x.items():
        parts.setdefault(height(key[0]), AlgebraElement())[key] = c
    return parts


def _sequences(total, allowed, ordered_strict=False):
    """Tuples of degrees from ``allowed`` summing to ``total`` (strictly increasing if asked)."""
    allowed = sorted(allowed)

    def rec(rest, last):
        if rest == 0:
            yield ()
            return
        for j in allowed:
            if j > rest:
                break
            if ordered_strict and last is not None and j <= last:
                continue
            for tail in rec(rest - j, j):
                yield (j,) + tail

    return rec(total, None)


def exp_apply_reference(x, v, module):
    """Slow composition expansion of ``exp(rho(x)) v``.

    The degree-n part sums, over every ordered sequence ``(j_1, ..., j_r)`` with
    ``j_1 + ... + j_r = n``, the term ``x_{j_r} ... x_{j_1} v / r!``.
    """
    _check_positive(x)
    parts = _homogeneous_parts(x)
    v = ModuleVector(module, v)
    if not v:
        return v
    total = ModuleVector(module, v)
    for n in range(1, module.window[1] - v.order + 1):
        for seq in _sequences(n, parts):
            w = v
            for j in seq:
                w = module.apply(parts[j], w, truncate=True)
                if not w:
                    break
            total = total + w * (ONE / factorial(len(seq)))
    return total


def _check_factors(factors):
    out = {}
    for j, xj in sorted(dict(factors).items()):
        xj = AlgebraElement(xj)
        if j < 1 or any(height(k[0]) != j or any(c < 0 for c in k[0]) for k in xj):
            raise WrongDegree(j)
        if xj:
            out[j] = xj
    return out


def ordered_product_apply(factors, v, module):
    """``... exp(rho(x_2)) exp(rho(x_1)) v``: the lowest degree factor acts first."""
    factors = _check_factors(factors)
    w = ModuleVector(module, v)
    for j in sorted(factors):
        w = exp_apply(factors[j], w, module)
    return w


def ordered_product_operator(factors, module):
    factors = _check_factors(factors)
    return WindowOperator(module, {k: ordered_product_apply(factors, {k: ONE}, module) for k in module.keys()})


def ordered_product_reference(factors, v, module):
    """Slow expansion over ``0 < j_1 < ... < j_m`` with powers ``n_i``, weight ``1/prod n_i!``."""
    factors = _check_factors(factors)
    v = ModuleVector(module, v)
    if not v:
        return v
    total = ModuleVector(module, v)
    degs = sorted(factors)
    for n in range(1, module.window[1] - v.order + 1):
        for m in range(1, len(degs) + 1):
            for js in _choose(degs, m):
                for ns in iproduct(*(range(1, n // j + 1) for j in js)):
                    if sum(a * b for a, b in zip(ns, js)) != n:
                        continue
                    w = v
                    weight = ONE
                    for j, k in zip(js, ns):
                        for _ in range(k):
                            w = module.apply(factors[j], w, truncate=True)
                        weight /= factorial(k)
                    total = total + w * weight
    return total


def _choose(items, m):
    from itertools import combinations

    return combinations(items, m)


# ---------------------------------------------------------------------------
# smear operators


def smear_witness(op):
    """A basis key whose image fails ``phi(v) in v + (higher degrees)``, else None."""
    deg = op.module.degree
    for k in op.module.keys():
        diff = op.column(k) - {k: ONE}
        bad = [r for r in diff if deg(r) <= deg(k)]
        if bad:
            return k, bad[0]
    return None


def is_smear(op):
    return smear_witness(op) is None


def smear_decompose(op):
    """``[phi_1, ..., phi_{hi-lo}]`` with ``phi_m = pi_{j+m} o phi |V_j``."""
    witness = smear_witness(op)
    if witness:
        k, r = witness
        raise NotSmear(
            f"image of {k!r} has a component in degree {op.module.degree(r)}",
            source=repr(k),
            component=repr(r),
        )
    mod = op.module
    lo, hi = mod.window
    shifts = []
    for m in range(1, hi - lo + 1):
        cols = {}
        for k in mod.keys():
            part = op.column(k).pi(mod.degree(k) + m)
            if part:
                cols[k] = part
        shifts.append(ShiftOperator(mod, m, cols))
    return shifts


def reconstruct(shifts, module):
    op = WindowOperator.identity(module)
    for s in shifts:
        op = op + s
    return op


def stabilizes(x, v, module, extra=5):
    """Each ``pi_k`` of the series is fixed once the term bound reaches ``k - N(v)``."""
    v = ModuleVector(module, v)
    if not v:
        return True
    lo, hi = module.window
    for k in range(v.order, hi + 1):
        b = k - v.order
        if exp_apply(x, v, module, bound=b).pi(k) != exp_apply(x, v, module, bound=b + extra).pi(k):
            return False
    return True
