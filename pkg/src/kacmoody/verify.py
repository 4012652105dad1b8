"""Invariant suites for the four reference matrices.

Every ``check_*`` function returns ``None`` on success and a JSON-ready witness
on the first failure.  ``run_suite`` bundles them per matrix for ``km verify``;
the tests call the individual checks with their own sample counts.
"""

import random
from dataclasses import dataclass, field
from itertools import product as iproduct

from .cartan import classify, coxeter_matrix, validate
from .errors import CutoffExceeded, KMError, NegativeImaginaryExponential
from .freelie import lyndon_words, witt
from .groups import (
    ChiReal,
    ExpPos,
    Torus,
    WTilde,
    bch,
    commutator_coeffs,
    commutator_identity_holds,
    evaluate_word,
    factorize_ordered,
    group_commutator,
    magnus_embedding,
    reconstruct_ordered,
    root_group_element,
    unipotent,
)
from .liealg import AlgebraElement, build_graded_algebra, peterson_table, random_element, root_subalgebra_layers
from .linalg import ONE, ZERO, Echelon, q, qstr
from .modules import ModuleVector, adjoint_module
from .prosum import (
    exp_apply,
    exp_apply_reference,
    exp_operator,
    is_smear,
    ordered_product_apply,
    ordered_product_operator,
    ordered_product_reference,
    reconstruct,
    smear_decompose,
    stabilizes,
)
from .weyl import height, is_positive, real_roots_up_to, reflect_root, simple_root

REFERENCE_MATRICES = {
    "A2": [[2, -1], [-1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "A1^(1)": [[2, -2], [-2, 2]],
    "H(3)": [[2, -3], [-3, 2]],
}

SUITES = ("liealg", "prosum", "groups")


@dataclass(frozen=True)
class SuiteConfig:
    cutoff: int = 6
    samples: int = 8
    seed: int = 0
    mult_height: int = 8


@dataclass
class CheckResult:
    suite: str
    name: str
    matrix: str
    passed: bool
    witness: object = None
    info: dict = field(default_factory=dict)

    def to_json(self):
        out = {"suite": self.suite, "property": self.name, "matrix": self.matrix, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.info:
            out["info"] = self.info
        return out


def _elem_json(alg, x):
    return [{"label": alg.label(k), "root": list(k[0]), "coeff": qstr(c)} for k, c in sorted(x.items(), key=lambda kv: (height(kv[0][0]), kv[0]))]


def _rational(rng, max_num=5, max_den=4):
    num = 0
    while not num:
        num = rng.randint(-max_num, max_num)
    return q(num) / rng.randint(1, max_den)


def _random_vector(module, rng, terms=3):
    keys = list(module.keys())
    return ModuleVector(module, {rng.choice(keys): _rational(rng) for _ in range(terms)})


def _random_in_root(alg, root, rng):
    return AlgebraElement({key: _rational(rng) for key in alg.root_basis(root)})


# ---------------------------------------------------------------------------
# liealg


def check_serre(alg):
    for label, value in alg.serre_elements():
        if value:
            return {"serre": list(label), "value": _elem_json(alg, value)}
    return None


def check_chevalley(alg):
    """``[e_i, f_j] = delta_ij alpha_i^vee`` and ``[h, e_i] = <alpha_i, h> e_i``."""
    for i in range(1, alg.l + 1):
        for j in range(1, alg.l + 1):
            want = alg.coroot(i) if i == j else AlgebraElement()
            if alg.bracket(alg.e(i), alg.f(j)) != want:
                return {"bracket": [f"e{i}", f"f{j}"]}
        for c in range(1, alg.n + 1):
            pair = alg.realization.pairing(alg.realization.root_to_weight(simple_root(alg.l, i)), [ONE * (k == c - 1) for k in range(alg.n)])
            if alg.bracket(alg.h(c), alg.e(i)) != alg.e(i) * pair:
                return {"bracket": [f"h{c}", f"e{i}"]}
            if alg.bracket(alg.h(c), alg.f(i)) != alg.f(i) * (-pair):
                return {"bracket": [f"h{c}", f"f{i}"]}
    return None


def _window_keys(alg, top):
    return [k for m in range(-top, top + 1) for k in alg.basis(m)]


def check_jacobi(alg, rng, count, span=None):
    """Jacobi identity on random basis triples whose partial sums stay inside the cutoff."""
    top = alg.K if span is None else span
    keys = _window_keys(alg, top)
    done = tries = 0
    while done < count and tries < 50 * count:
        tries += 1
        a, b, c = (rng.choice(keys) for _ in range(3))
        hs = [height(k[0]) for k in (a, b, c)]
        if any(abs(s) > alg.K for s in (hs[0] + hs[1], hs[1] + hs[2], hs[0] + hs[2], sum(hs))):
            continue
        x, y, z = (AlgebraElement({k: ONE}) for k in (a, b, c))
        br = alg.bracket
        total = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
        if total:
            return {"triple": [alg.label(k) for k in (a, b, c)], "value": _elem_json(alg, total)}
        done += 1
    if done < count:
        return {"reason": "too few admissible triples", "checked": done}
    return None


def check_antisymmetry(alg, rng, count):
    keys = _window_keys(alg, alg.K)
    for _ in range(count):
        a, b = rng.choice(keys), rng.choice(keys)
        if abs(height(a[0]) + height(b[0])) > alg.K:
            continue
        x, y = AlgebraElement({a: ONE}), AlgebraElement({b: ONE})
        if alg.bracket(x, y) != -alg.bracket(y, x):
            return {"pair": [alg.label(a), alg.label(b)]}
    return None


def multiplicity_rows(alg, max_height, oracle=True):
    """Rows ``(root, height, serre_dim, oracle_dim)`` for every 0 < beta with ht <= max_height."""
    if max_height > alg.K:
        raise CutoffExceeded(max_height, alg.K)
    l = alg.l
    table = peterson_table(alg.gcm, (max_height,) * l) if oracle else {}
    rows = []
    for beta in iproduct(range(max_height + 1), repeat=l):
        if not any(beta) or height(beta) > max_height:
            continue
        serre = alg.dim(beta)
        if serre or table.get(beta):
            rows.append((beta, height(beta), serre, table.get(beta) if oracle else None))
    rows.sort(key=lambda r: (r[1], r[0]))
    return rows


def check_multiplicities(alg, max_height):
    for beta, _, serre, oracle in multiplicity_rows(alg, max_height):
        if serre != oracle:
            return {"root": list(beta), "serre_dim": serre, "oracle_dim": oracle}
    return None


# ---------------------------------------------------------------------------
# prosum


def _positive_element(alg, rng, top=3):
    x = AlgebraElement()
    while not x:
        x = random_element(alg, rng, range(1, min(top, alg.K) + 1), density=0.6)
    return x


def check_stabilization(module, rng, count):
    alg = module.alg
    for _ in range(count):
        x, v = _positive_element(alg, rng), _random_vector(module, rng)
        if not stabilizes(x, v, module):
            return {"x": _elem_json(alg, x), "v": module.vector_to_json(v)}
    return None


def check_exp_reference(module, rng, count):
    alg = module.alg
    for _ in range(count):
        x, v = _positive_element(alg, rng), _random_vector(module, rng)
        if exp_apply(x, v, module) != exp_apply_reference(x, v, module):
            return {"x": _elem_json(alg, x), "v": module.vector_to_json(v)}
    return None


def check_smear_decomposition(module, rng, count):
    alg = module.alg
    for _ in range(count):
        x = _positive_element(alg, rng)
        op = exp_operator(x, module)
        if reconstruct(smear_decompose(op), module) != op:
            return {"x": _elem_json(alg, x)}
    return None


def check_ordered_product(module, rng, count):
    alg = module.alg
    for _ in range(count):
        factors = {j: random_element(alg, rng, [j], density=0.7) for j in range(1, min(3, alg.K) + 1)}
        v = _random_vector(module, rng)
        if ordered_product_apply(factors, v, module) != ordered_product_reference(factors, v, module):
            return {"factors": {str(j): _elem_json(alg, x) for j, x in factors.items()}}
    return None


# ---------------------------------------------------------------------------
# groups


def check_bch_operator(gcm, cutoff, rng, count, density=0.5):
    """``exp(x) exp(y) = exp(bch(x, y))`` as operators on the adjoint window ``[-1, cutoff]``.

    The logarithm is computed in an algebra built one degree further, since its
    component of degree ``cutoff + 1`` maps V_{-1} into V_cutoff.
    """
    big = build_graded_algebra(gcm, cutoff + 1)
    module = adjoint_module(big, (-1, cutoff))
    for _ in range(count):
        x = random_element(big, rng, range(1, cutoff + 1), density=density)
        y = random_element(big, rng, range(1, cutoff + 1), density=density)
        z = bch(big, x, y)
        if exp_operator(x, module) @ exp_operator(y, module) != exp_operator(z, module):
            return {"x": _elem_json(big, x), "y": _elem_json(big, y)}
    return None


def check_tower(alg, rng, count):
    """Degreewise coset congruences for products and commutators of homogeneous elements."""
    for _ in range(count):
        n = rng.randint(1, max(1, alg.K // 2))
        x, y = random_element(alg, rng, [n]), random_element(alg, rng, [n])
        rest = bch(alg, x, y) - x - y
        if rest and rest.order <= n:
            return {"kind": "product", "n": n, "x": _elem_json(alg, x), "y": _elem_json(alg, y)}
        m = rng.randint(1, max(1, alg.K - n))
        if n + m > alg.K:
            continue
        y = random_element(alg, rng, [m])
        rest = group_commutator(alg, x, y) - alg.bracket(x, y)
        if rest and rest.order <= n + m:
            return {"kind": "commutator", "n": n, "m": m, "x": _elem_json(alg, x), "y": _elem_json(alg, y)}
    return None


def check_quotient(alg, rng, count):
    """The degree-n part of bch(x, y) is ``x_n + y_n`` when x, y start in degree n."""
    for _ in range(count):
        n = rng.randint(1, alg.K)
        degs = range(n, alg.K + 1)
        x, y = random_element(alg, rng, degs, 0.5), random_element(alg, rng, degs, 0.5)
        if bch(alg, x, y).degree_part(n) != x.degree_part(n) + y.degree_part(n):
            return {"n": n, "x": _elem_json(alg, x), "y": _elem_json(alg, y)}
    return None


def check_factorization(alg, rng, count, operator_samples=0):
    """Round trip ``reconstruct(factorize(z)) = z``; optionally compare operators on [0, K]."""
    module = adjoint_module(alg, (0, alg.K)) if operator_samples else None
    for s in range(count):
        z = random_element(alg, rng, range(1, alg.K + 1), density=0.5)
        parts = factorize_ordered(unipotent(alg, z))
        if any(p and p.degrees() != [k] for k, p in enumerate(parts, 1)):
            return {"z": _elem_json(alg, z), "reason": "inhomogeneous factor"}
        if reconstruct_ordered(alg, parts) != z:
            return {"z": _elem_json(alg, z)}
        if s < operator_samples:
            factors = {k: p for k, p in enumerate(parts, 1)}
            if ordered_product_operator(factors, module) != exp_operator(z, module):
                return {"z": _elem_json(alg, z), "reason": "operator mismatch"}
    return None


def _orbit_pairs(alg):
    """(beta, i) with beta positive, s_i beta positive and different, both within the cutoff."""
    out = []
    for beta in alg.positive_roots():
        for i in range(1, alg.l + 1):
            if beta == simple_root(alg.l, i):
                continue
            img = reflect_root(alg.gcm, i, beta)
            if is_positive(img) and height(img) <= alg.K:
                out.append((beta, i, img))
    return out


def check_weyl_roots(alg, rng, count):
    """``w_i . g_beta = g_{s_i beta}`` and equal multiplicities on orbit samples."""
    pairs = _orbit_pairs(alg)
    rng.shuffle(pairs)
    done = 0
    for beta, i, img in pairs:
        if done >= count:
            break
        if alg.mult(beta) != alg.mult(img):
            return {"root": list(beta), "reflection": i, "mults": [alg.mult(beta), alg.mult(img)]}
        try:
            images = [alg.wtilde(i, AlgebraElement({k: ONE})) for k in alg.root_basis(beta)]
        except CutoffExceeded:
            continue
        if any(set(y.roots()) != {img} for y in images):
            return {"root": list(beta), "reflection": i}
        ech = Echelon()
        if not all(ech.add(y) for y in images):
            return {"root": list(beta), "reflection": i, "reason": "image is degenerate"}
        done += 1
    return None


def _finite_setup(gcm):
    """Algebra and adjoint module covering every root of a finite type matrix."""
    top = max(height(r) for r in real_roots_up_to(gcm, 64))
    alg = build_graded_algebra(gcm, 2 * top)
    return alg, adjoint_module(alg, (-top, top))


def check_weyl_conjugation(gcm, rng, count):
    """``w_i exp(x) w_i^-1 = exp(w_i . x)`` as window operators (finite type only)."""
    alg, module = _finite_setup(gcm)
    pairs = [(b, i) for b, i, _ in _orbit_pairs(alg)]
    for _ in range(count):
        beta, i = rng.choice(pairs)
        x = _random_in_root(alg, beta, rng)
        s = _rational(rng)
        wx = alg.wtilde(i, x, s)
        tok = WTilde((i,), s)
        if evaluate_word([tok, ExpPos(x), tok.inverse()], module) != evaluate_word([ExpPos(wx)], module):
            return {"root": list(beta), "reflection": i, "s": qstr(s)}
    return None


def check_braid(gcm):
    """Both reduced words of the longest element give the same lift (finite rank two)."""
    alg, module = _finite_setup(gcm)
    m = coxeter_matrix(gcm)[0][1]
    w1 = tuple(1 + (k % 2) for k in range(m))
    w2 = tuple(2 - (k % 2) for k in range(m))
    if evaluate_word([WTilde(w1)], module) != evaluate_word([WTilde(w2)], module):
        return {"words": [list(w1), list(w2)]}
    return None


def check_torus(module, rng, count):
    alg = module.alg
    for _ in range(count):
        w = tuple(rng.randint(-2, 2) for _ in range(alg.n))
        t = _rational(rng, 3, 3)
        x = _positive_element(alg, rng, 2)
        real = alg.realization
        y = AlgebraElement({k: c * t ** int(real.pairing(real.root_to_weight(k[0]), w)) for k, c in x.items()})
        tok = Torus(w, t)
        if evaluate_word([tok, ExpPos(x), tok.inverse()], module) != evaluate_word([ExpPos(y)], module):
            return {"w": list(w), "t": qstr(t), "x": _elem_json(alg, x)}
    return None


def check_smear_words(module, rng, count):
    alg = module.alg
    reals = [r for r in real_roots_up_to(alg.gcm, alg.K)]
    for _ in range(count):
        word = []
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.5:
                word.append(ChiReal(rng.choice(reals), _rational(rng)))
            else:
                word.append(ExpPos(_positive_element(alg, rng, 2)))
        if not is_smear(evaluate_word(word, module)):
            return {"word": [tok.to_json() for tok in word]}
    return None


def commutator_grid(degbound):
    """Non-integer rational sample points, (degbound + 1)^2 of them."""
    pts = [q(2 * k + 1) / (k + 2) for k in range(degbound + 1)]
    return [(u, v) for u in pts for v in pts]


def check_commutator(alg, alpha, beta, rng, max_height=None):
    alpha, beta = tuple(alpha), tuple(beta)
    x, y = _random_in_root(alg, alpha, rng), _random_in_root(alg, beta, rng)
    sigma, z, degbound = commutator_coeffs(alg, x, y, alpha, beta, max_height)
    s = tuple(a + b for a, b in zip(alpha, beta))
    if sigma and z[s] != alg.bracket(x, y):
        return {"reason": "leading term", "x": _elem_json(alg, x), "y": _elem_json(alg, y)}
    if not commutator_identity_holds(alg, x, y, alpha, beta, sigma, z, commutator_grid(degbound), max_height):
        return {"reason": "identity", "x": _elem_json(alg, x), "y": _elem_json(alg, y)}
    return None


def _random_coords(m, kmax, rng, density=0.5):
    return {w: _rational(rng) for w in lyndon_words(m, kmax) if rng.random() < density}


def magnus_root(alg):
    """Lowest positive root of negative norm, preferring multiplicity at least two."""
    cands = [r for r in alg.positive_roots() if alg.norm(r) < 0]
    if not cands:
        return None
    return min(cands, key=lambda r: (alg.mult(r) < 2, height(r), r))


def check_magnus(alg, alpha, rng, count, D=6):
    m = alg.mult(alpha)
    for _ in range(count):
        g = root_group_element(alg, alpha, _random_coords(m, D, rng), kmax=D)
        h = root_group_element(alg, alpha, _random_coords(m, D, rng), kmax=D)
        if magnus_embedding(g * h, D) != magnus_embedding(g, D) * magnus_embedding(h, D):
            return {"root": list(alpha), "g": g.to_json(), "h": h.to_json()}
    return None


def check_layers(alg, alpha, kmax):
    """Layer dimensions of the root subalgebra against the Lyndon/Witt counts."""
    m, norm = alg.mult(alpha), alg.norm(alpha)
    layers = root_subalgebra_layers(alg, alpha, kmax)
    for k, (dim, _) in enumerate(layers, 1):
        want = m if k == 1 else (witt(m, k) if norm < 0 else 0)
        if dim != want:
            return {"root": list(alpha), "layer": k, "dim": dim, "expected": want}
    return None


def check_negative_imaginary(alg, alpha):
    neg = tuple(-a for a in alpha)
    try:
        root_group_element(alg, neg, {(1,): ONE})
    except NegativeImaginaryExponential:
        return None
    return {"root": list(neg), "reason": "constructed without error"}


def check_abelian(alg, delta, rng, count):
    for _ in range(count):
        m = alg.mult(delta)
        a = {(i,): _rational(rng) for i in range(1, m + 1)}
        b = {(i,): _rational(rng) for i in range(1, m + 1)}
        g, h = root_group_element(alg, delta, a), root_group_element(alg, delta, b)
        if (g * h).coords != {w: a.get(w, ZERO) + b.get(w, ZERO) for w in a if a.get(w, ZERO) + b.get(w, ZERO)}:
            return {"root": list(delta)}
    return None


# ---------------------------------------------------------------------------
# suite runner


def _record(out, suite, name, label, fn, *args, **info):
    try:
        witness = fn(*args)
    except KMError as exc:
        witness = exc.to_json()
    except ArithmeticError as exc:
        witness = {"error": type(exc).__name__, "message": str(exc)}
    out.append(CheckResult(suite, name, label, witness is None, witness, info))


def run_suite(suites=SUITES, matrices=None, config=SuiteConfig()):
    """Run the invariant suites; results come back in a deterministic order."""
    matrices = REFERENCE_MATRICES if matrices is None else matrices
    results = []
    for label, entries in matrices.items():
        gcm = validate(entries)
        kind = classify(gcm).kind
        rng = random.Random(f"{config.seed}:{label}")
        alg = build_graded_algebra(gcm, max(config.cutoff, config.mult_height))
        small = build_graded_algebra(gcm, config.cutoff)
        module = adjoint_module(small)
        n = config.samples
        if "liealg" in suites:
            _record(results, "liealg", "serre", label, check_serre, alg)
            _record(results, "liealg", "chevalley", label, check_chevalley, alg)
            _record(results, "liealg", "antisymmetry", label, check_antisymmetry, alg, rng, 4 * n)
            _record(results, "liealg", "jacobi", label, check_jacobi, alg, rng, 4 * n)
            _record(results, "liealg", "peterson", label, check_multiplicities, alg, config.mult_height)
        if "prosum" in suites:
            _record(results, "prosum", "stabilization", label, check_stabilization, module, rng, n)
            _record(results, "prosum", "exp_reference", label, check_exp_reference, module, rng, n)
            _record(results, "prosum", "smear_decomposition", label, check_smear_decomposition, module, rng, n)
            _record(results, "prosum", "ordered_product", label, check_ordered_product, module, rng, n)
        if "groups" in suites:
            _record(results, "groups", "bch_operator", label, check_bch_operator, gcm, config.cutoff, rng, n)
            _record(results, "groups", "tower", label, check_tower, small, rng, n)
            _record(results, "groups", "quotient", label, check_quotient, small, rng, n)
            _record(results, "groups", "factorization", label, check_factorization, small, rng, n, 2)
            _record(results, "groups", "weyl_roots", label, check_weyl_roots, alg, rng, 4 * n)
            _record(results, "groups", "torus", label, check_torus, module, rng, n)
            _record(results, "groups", "smear_words", label, check_smear_words, module, rng, n)
            _record(results, "groups", "commutator", label, check_commutator, small, (1, 0), (0, 1), rng)
            if kind == "finite":
                _record(results, "groups", "weyl_conjugation", label, check_weyl_conjugation, gcm, rng, n)
                _record(results, "groups", "braid", label, check_braid, gcm)
            root = magnus_root(small)
            if root is not None:
                _record(results, "groups", "magnus", label, check_magnus, small, root, rng, n, info={"root": list(root)})
                _record(results, "groups", "negative_imaginary", label, check_negative_imaginary, small, root)
            if kind == "affine":
                delta = min((r for r in small.positive_roots() if small.norm(r) == 0), key=height)
                _record(results, "groups", "abelian", label, check_abelian, small, delta, rng, n, info={"root": list(delta)})
                _record(results, "groups", "layers", label, check_layers, small, delta, 2, info={"root": list(delta)})
    return results


__all__ = [
    "REFERENCE_MATRICES",
    "SUITES",
    "CheckResult",
    "SuiteConfig",
    "multiplicity_rows",
    "run_suite",
]
