"""``km``: JSON front end for the engine.

Exit codes: 0 on success, 1 when a computation fails (structured error on
stdout), 2 on malformed input.
"""

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field

from .cartan import classify, validate
from .errors import KMError
from .groups import (
    RootAlgebra,
    bch,
    commutator_coeffs,
    commutator_identity_holds,
    magnus_embedding,
    root_group_element,
)
from .liealg import DEFAULT_CUTOFF, AlgebraElement, build_graded_algebra
from .linalg import q, qstr
from .modules import adjoint_module
from .prosum import exp_apply, exp_operator
from .verify import REFERENCE_MATRICES, SUITES, SuiteConfig, commutator_grid, multiplicity_rows, run_suite
from .weyl import height

DEFAULT_TRUNCATION = 6


class UsageError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    matrix: list = None
    cutoff: int = DEFAULT_CUTOFF
    window: tuple = None
    truncation: int = DEFAULT_TRUNCATION
    inputs: dict = field(default_factory=dict)
    output: str = None


# ---------------------------------------------------------------------------
# parsing


def parse_matrix(text):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"matrix is not valid JSON: {exc}") from None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise UsageError("matrix must be a nonempty list of rows")
    if any(not isinstance(x, int) for r in rows for x in r):
        raise UsageError("matrix entries must be integers")
    return rows


def parse_ints(text):
    try:
        return tuple(int(x) for x in text.replace("(", "").replace(")", "").split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def parse_rational(text):
    try:
        return q(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([efhc])(\d+)|(x\()|([-+*\[\],;()]))")


class _ElementParser:
    """Sums of rational multiples of generators and brackets.

    Atoms: ``e1``, ``f2`` (Chevalley generators), ``h1`` (coordinate basis of h),
    ``c1`` (simple coroot), ``x(r1,...,rl;idx)`` (basis element of a root space).
    """

    def __init__(self, alg, text):
        self.alg = alg
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                if text[pos:].strip() == "":
                    break
                raise UsageError(f"cannot parse element at {text[pos:]!r}")
            num, letter, index, xopen, punct = m.groups()
            if num:
                self.tokens.append(("num", num))
            elif letter:
                self.tokens.append(("gen", (letter, int(index))))
            elif xopen:
                self.tokens.append(("x", None))
            else:
                self.tokens.append(("p", punct))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise UsageError(f"unexpected token in element {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        out = self.expr()
        if self.i != len(self.tokens):
            raise UsageError(f"trailing input in element {self.text!r}")
        return out

    def expr(self):
        total = self.term()
        while self.peek() in (("p", "+"), ("p", "-")):
            sign = self.take()[1]
            t = self.term()
            total = total + t if sign == "+" else total - t
        return total

    def term(self):
        if self.peek() == ("p", "-"):
            self.take()
            return -self.term()
        if self.peek()[0] == "num":
            c = q(self.take()[1])
            if self.peek() == ("p", "*"):
                self.take()
                return self.term() * c
            if c:
                raise UsageError("a bare number is not an element; write e.g. 2*e1")
            return AlgebraElement()
        return self.atom()

    def atom(self):
        kind, value = self.peek()
        alg = self.alg
        if kind == "gen":
            self.take()
            letter, i = value
            limit = alg.n if letter == "h" else alg.l
            if not 1 <= i <= limit:
                raise UsageError(f"{letter}{i} is out of range")
            return {"e": alg.e, "f": alg.f, "h": alg.h, "c": alg.coroot}[letter](i)
        if kind == "x":
            self.take()
            root = []
            while True:
                sign = -1 if self.peek() == ("p", "-") else 1
                if sign < 0:
                    self.take()
                root.append(sign * int(self.take("num")[1]))
                if self.peek() == ("p", ","):
                    self.take()
                    continue
                break
            self.take("p", ";")
            idx = int(self.take("num")[1])
            self.take("p", ")")
            if len(root) != alg.l:
                raise UsageError(f"root {root} needs {alg.l} coordinates")
            return AlgebraElement({(tuple(root), idx): q(1)})
        if (kind, value) == ("p", "["):
            self.take()
            a = self.expr()
            self.take("p", ",")
            b = self.expr()
            self.take("p", "]")
            return alg.bracket(a, b)
        if (kind, value) == ("p", "("):
            self.take()
            a = self.expr()
            self.take("p", ")")
            return a
        raise UsageError(f"unexpected token in element {self.text!r}")


def parse_element(alg, text):
    """An element from the bracket syntax or from ``{"terms": [...]}`` JSON."""
    text = text.strip()
    if text.startswith("{"):
        try:
            return AlgebraElement.from_json(json.loads(text))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad element JSON: {exc}") from None
    return _ElementParser(alg, text).parse()


def parse_coords(text):
    """Layer coordinates as JSON ``{"1": "1/2", "1,2": 3}`` (keys are Lyndon words)."""
    try:
        raw = json.loads(text)
        return {parse_ints(k): q(str(v)) for k, v in raw.items()}
    except (json.JSONDecodeError, AttributeError, ValueError) as exc:
        raise UsageError(f"bad coordinates: {exc}") from None


# ---------------------------------------------------------------------------
# output helpers


def element_json(alg, x):
    # by height, then simple-root order (e1 before e2), then index
    items = sorted(x.items(), key=lambda kv: (height(kv[0][0]), tuple(-c for c in kv[0][0]), kv[0][1]))
    return [{"label": alg.label(k), "root": list(k[0]), "idx": k[1], "coeff": qstr(c)} for k, c in items]


def element_str(alg, x):
    if not x:
        return "0"
    parts = []
    for t in element_json(alg, x):
        c = t["coeff"]
        if c == "1":
            parts.append(f"+ {t['label']}")
        elif c == "-1":
            parts.append(f"- {t['label']}")
        elif c.startswith("-"):
            parts.append(f"- {c[1:]}*{t['label']}")
        else:
            parts.append(f"+ {c}*{t['label']}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _algebra(job):
    return build_graded_algebra(validate(job.matrix), job.cutoff)


# ---------------------------------------------------------------------------
# commands


def cmd_classify(job):
    return classify(validate(job.matrix)).to_json()


def cmd_roots(job):
    alg = _algebra(job)
    top = job.inputs["max_height"] or job.cutoff
    rows = []
    for beta in alg.positive_roots():
        if height(beta) > top:
            continue
        norm = alg.norm(beta)
        rows.append(
            {
                "root": list(beta),
                "height": height(beta),
                "mult": alg.mult(beta),
                "norm": qstr(norm),
                "kind": "real" if norm > 0 else "imaginary",
            }
        )
    return {"matrix": job.matrix, "cutoff": job.cutoff, "max_height": top, "roots": rows}


def cmd_mult(job):
    top = job.inputs["max_height"] or job.cutoff
    alg = build_graded_algebra(validate(job.matrix), max(top, job.cutoff if job.inputs["cutoff_given"] else top))
    oracle = job.inputs["oracle"] == "peterson"
    rows = []
    agree = True
    for beta, ht, serre, orc in multiplicity_rows(alg, top, oracle):
        row = {"root": list(beta), "height": ht, "serre_dim": serre}
        if oracle:
            row["oracle_dim"] = orc
            row["agree"] = serre == orc
            agree = agree and serre == orc
        rows.append(row)
    out = {"matrix": job.matrix, "max_height": top, "oracle": job.inputs["oracle"], "rows": rows}
    if oracle:
        out["agree"] = agree
    return out, (0 if agree else 1)


def cmd_exp(job):
    alg = _algebra(job)
    module = adjoint_module(alg, job.window or (-1, job.cutoff))
    x = parse_element(alg, job.inputs["x"])
    out = {"x": element_json(alg, x), "window": list(module.window)}
    if job.inputs.get("v"):
        v = parse_element(alg, job.inputs["v"])
        result = exp_apply(x, module.vector(v), module)
        out["v"] = element_json(alg, v)
        out["result"] = element_json(alg, AlgebraElement(result))
    else:
        out["operator"] = exp_operator(x, module).to_json()
    return out


def cmd_bch(job):
    alg = _algebra(job)
    x, y = parse_element(alg, job.inputs["x"]), parse_element(alg, job.inputs["y"])
    z = bch(alg, x, y)
    return {
        "K": job.cutoff,
        "x": element_json(alg, x),
        "y": element_json(alg, y),
        "z": element_json(alg, z),
        "z_text": element_str(alg, z),
    }


def cmd_commutator(job):
    alg = _algebra(job)
    alpha, beta = job.inputs["alpha"], job.inputs["beta"]
    for r in (alpha, beta):
        if len(r) != alg.l:
            raise UsageError(f"root {list(r)} needs {alg.l} coordinates")
    x = parse_element(alg, job.inputs["x"]) if job.inputs.get("x") else alg.basis_element(alpha)
    y = parse_element(alg, job.inputs["y"]) if job.inputs.get("y") else alg.basis_element(beta)
    top = job.inputs["max_height"] or job.cutoff
    sigma, z, degbound = commutator_coeffs(alg, x, y, alpha, beta, top)
    holds = commutator_identity_holds(alg, x, y, alpha, beta, sigma, z, commutator_grid(degbound), top)
    return {
        "alpha": list(alpha),
        "beta": list(beta),
        "max_height": top,
        "sigma": [list(g) for g in sigma],
        "degbound": degbound,
        "z": [{"root": list(g), "element": element_json(alg, z[g])} for g in sigma],
        "identity_holds": holds,
    }, (0 if holds else 1)


def cmd_rootgroup(job):
    alg = _algebra(job)
    alpha = job.inputs["alpha"]
    if len(alpha) != alg.l:
        raise UsageError(f"root {list(alpha)} needs {alg.l} coordinates")
    D = job.truncation
    kmax = job.inputs["kmax"] or D
    ra = RootAlgebra(alg, alpha, kmax)
    out = {
        "root": list(alpha),
        "mult": ra.m,
        "norm": qstr(ra.norm),
        "kind": "real" if ra.real else ("imaginary-free" if ra.free else "imaginary-abelian"),
        "layer_dims": ra.layer_dims(),
        "layers_in_g": [
            {"k": k, "dim": dim, "lyndon": lyn, "independent": ok} for k, dim, lyn, ok in ra.check_layers()
        ],
    }
    if job.inputs.get("coords"):
        g = root_group_element(alg, alpha, parse_coords(job.inputs["coords"]), kmax=ra.kmax)
        out["element"] = g.to_json()
        if ra.free:
            out["magnus"] = magnus_embedding(g, D).to_json()
    return out


def cmd_verify(job):
    suites = SUITES if job.inputs["suite"] == "all" else (job.inputs["suite"],)
    matrices = {"input": job.matrix} if job.matrix else REFERENCE_MATRICES
    config = SuiteConfig(
        cutoff=job.cutoff if job.inputs["cutoff_given"] else SuiteConfig.cutoff,
        samples=job.inputs["samples"],
        seed=job.inputs["seed"],
    )
    results = run_suite(suites, matrices, config)
    passed = all(r.passed for r in results)
    return {"suite": job.inputs["suite"], "passed": passed, "results": [r.to_json() for r in results]}, (0 if passed else 1)


COMMANDS = {
    "classify": cmd_classify,
    "roots": cmd_roots,
    "mult": cmd_mult,
    "exp": cmd_exp,
    "bch": cmd_bch,
    "commutator": cmd_commutator,
    "rootgroup": cmd_rootgroup,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="km", description="Exact Kac-Moody algebra and group computations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, matrix_required=True):
        p.add_argument("--matrix", required=matrix_required, help='generalized Cartan matrix, e.g. "[[2,-1],[-1,2]]"')
        p.add_argument("--K", type=int, default=None, help="cutoff height (env KM_DEFAULT_CUTOFF, else 8)")
        p.add_argument("--output", help="write the JSON result to this file")
        return p

    common(sub.add_parser("classify", help="finite / affine / indefinite"))
    p = common(sub.add_parser("roots", help="positive roots with multiplicities"))
    p.add_argument("--max-height", type=int)
    p = common(sub.add_parser("mult", help="multiplicity table, optionally against an oracle"))
    p.add_argument("--max-height", type=int)
    p.add_argument("--oracle", choices=["peterson", "none"], default="none")
    p = common(sub.add_parser("exp", help="exp(ad x) on the adjoint window"))
    p.add_argument("--x", required=True)
    p.add_argument("--v")
    p.add_argument("--window", help="lo,hi (default -1,K)")
    p = common(sub.add_parser("bch", help="log(exp x exp y) in the truncated positive part"))
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p = common(sub.add_parser("commutator", help="commutator expansion over the root span"))
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--max-height", type=int)
    p = common(sub.add_parser("rootgroup", help="root algebra layers and Magnus image"))
    p.add_argument("--alpha", required=True)
    p.add_argument("--kmax", type=int)
    p.add_argument("--D", type=int, default=DEFAULT_TRUNCATION)
    p.add_argument("--coords", help='layer coordinates, e.g. {"1": "1/2", "1,2": 3}')
    p = common(sub.add_parser("verify", help="run the invariant suites"), matrix_required=False)
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.add_argument("--samples", type=int, default=SuiteConfig.samples)
    p.add_argument("--seed", type=int, default=SuiteConfig.seed)
    return parser


def _default_cutoff(environ):
    raw = environ.get("KM_DEFAULT_CUTOFF")
    if raw is None:
        return DEFAULT_CUTOFF
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"KM_DEFAULT_CUTOFF must be an integer, got {raw!r}") from None


def make_job(argv, environ=None):
    environ = os.environ if environ is None else environ
    ns = build_parser().parse_args(argv)
    cutoff = ns.K if ns.K is not None else _default_cutoff(environ)
    if cutoff < 1:
        raise UsageError("cutoff must be positive")
    inputs = {"cutoff_given": ns.K is not None or "KM_DEFAULT_CUTOFF" in environ}
    for name in ("max_height", "oracle", "x", "y", "v", "kmax", "coords", "suite", "samples", "seed"):
        if hasattr(ns, name):
            inputs[name] = getattr(ns, name)
    for name in ("alpha", "beta"):
        if hasattr(ns, name):
            inputs[name] = parse_ints(getattr(ns, name))
    window = None
    if getattr(ns, "window", None):
        window = parse_ints(ns.window)
        if len(window) != 2 or window[0] > window[1]:
            raise UsageError("window must be lo,hi with lo <= hi")
    return JobSpec(
        command=ns.command,
        matrix=parse_matrix(ns.matrix) if ns.matrix else None,
        cutoff=cutoff,
        window=window,
        truncation=getattr(ns, "D", DEFAULT_TRUNCATION),
        inputs=inputs,
        output=ns.output,
    )


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def run(argv, environ=None):
    """Execute one invocation; returns ``(exit_code, json_text)``."""
    try:
        job = make_job(argv, environ)
        if job.matrix is not None:
            validate(job.matrix)
    except UsageError as exc:
        return 2, dumps({"error": "UsageError", "message": str(exc)})
    except KMError as exc:
        return 2, dumps(exc.to_json())
    try:
        result = COMMANDS[job.command](job)
    except UsageError as exc:
        return 2, dumps({"error": "UsageError", "message": str(exc)})
    except KMError as exc:
        return 1, dumps(exc.to_json())
    except (ArithmeticError, ValueError, IndexError) as exc:
        return 1, dumps({"error": type(exc).__name__, "message": str(exc)})
    code = 0
    if isinstance(result, tuple):
        result, code = result
    text = dumps(result)
    if job.output:
        with open(job.output, "w") as fh:
            fh.write(text)
        text = ""
    return code, text


def main(argv=None):
    code, text = run(sys.argv[1:] if argv is None else argv)
    if text:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
