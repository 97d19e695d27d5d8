"""Object-expression language.

Expressions use Python call syntax and are parsed with :mod:`ast`, e.g.
``twist(stratum_sheaf([1,2]), (1,1,0))`` or ``cohomology(tensorL(Ox, Oz))``.
Values are presented modules, free complexes or cohomology tables.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping

from . import derived, graded
from .errors import DimensionMismatch, ExpressionError
from .graded import GradedFree, GradedMatrix, PresentedModule
from .torus import Stratum, TorusSetup


@dataclass(frozen=True)
class CohomologyTable:
    modules: Mapping[int, PresentedModule]

    def to_json(self) -> dict:
        return {str(k): module_json(M) for k, M in sorted(self.modules.items())}


def module_json(M: PresentedModule) -> dict:
    out = M.to_json()
    fl = graded.finite_length(M)
    out["finite_length"] = fl is not None
    if fl is not None:
        out["characters"] = [{"char": list(k), "dim": v} for k, v in fl.items()]
    return out


def value_json(v) -> dict:
    if isinstance(v, PresentedModule):
        return {"kind": "module", "module": module_json(v)}
    if isinstance(v, derived.FreeComplex):
        table = CohomologyTable(derived.cohomology(v))
        return {"kind": "complex", "complex": v.to_json(), "cohomology": table.to_json()}
    if isinstance(v, CohomologyTable):
        return {"kind": "cohomology", "cohomology": v.to_json()}
    raise TypeError(type(v).__name__)


class Evaluator:
    """Evaluates expressions against a setup and a table of named objects."""

    def __init__(self, setup: TorusSetup, names: Mapping[str, Any] | None = None):
        self.setup = setup
        self.names: dict[str, Any] = {"A": graded.free_module(setup.n, [(0,) * setup.n])}
        self.names.update(names or {})
        self.verbs: dict[str, tuple[Callable, int]] = {
            "free": (self._free, -1),
            "skyscraper": (self._skyscraper, 1),
            "stratum_sheaf": (self._stratum_sheaf, 1),
            "koszul": (self._koszul, 1),
            "twist": (self._twist, 2),
            "shift": (self._shift, 2),
            "dual": (self._dual, 1),
            "tensorL": (self._tensor, 2),
            "rhom": (self._rhom, 2),
            "pullbackL": (self._pullback, 2),
            "shriek": (self._shriek, 2),
            "sum": (self._sum, 2),
            "push": (self._push, 1),
            "cohomology": (self._cohomology, 1),
            "coker": (self._coker, 3),
            "H": (self._h, 1),
        }

    # -- parsing ----------------------------------------------------------

    def evaluate(self, text: str):
        try:
            tree = ast.parse(text.strip(), mode="eval")
        except SyntaxError as exc:
            raise ExpressionError(f"syntax error: {exc.msg}", expression=text, column=exc.offset) from None
        return self._eval(tree.body, text)

    def _err(self, node, msg: str, text: str, **ctx):
        return ExpressionError(msg, expression=text, column=getattr(node, "col_offset", 0) + 1, **ctx)

    def _eval(self, node, text):
        if isinstance(node, ast.Name):
            if node.id not in self.names:
                raise self._err(node, f"unknown name {node.id!r}", text, known=sorted(self.names))
            return self.names[node.id]
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in self.verbs:
                name = node.func.id if isinstance(node.func, ast.Name) else "?"
                raise self._err(node, f"unknown operation {name!r}", text, known=sorted(self.verbs))
            if node.keywords:
                raise self._err(node, "keyword arguments are not supported", text)
            fn, arity = self.verbs[node.func.id]
            if arity >= 0 and len(node.args) != arity:
                raise self._err(node, f"{node.func.id} takes {arity} argument(s), got {len(node.args)}", text)
            return fn(node.args, text)
        raise self._err(node, "expected a name or an operation", text)

    def _literal(self, node, text):
        try:
            return ast.literal_eval(node)
        except (ValueError, SyntaxError):
            raise self._err(node, "expected a literal", text) from None

    def _char(self, node, text):
        v = self._literal(node, text)
        if not isinstance(v, (list, tuple)) or not all(isinstance(x, int) for x in v):
            raise self._err(node, "malformed character: expected a tuple of integers", text)
        if len(v) != self.setup.n:
            raise self._err(node, f"character must have {self.setup.n} entries", text, got=list(v))
        return tuple(v)

    def _int(self, node, text):
        v = self._literal(node, text)
        if not isinstance(v, int):
            raise self._err(node, "expected an integer", text)
        return v

    def _indices(self, node, text):
        v = self._literal(node, text)
        if not isinstance(v, (list, tuple)) or not all(isinstance(x, int) and 1 <= x <= self.setup.n for x in v):
            raise self._err(node, f"expected a list of coordinates in 1..{self.setup.n}", text)
        return sorted(set(v))

    def _object(self, node, text):
        v = self._eval(node, text)
        if isinstance(v, CohomologyTable):
            raise self._err(node, "a cohomology table cannot be used as an object", text)
        return v

    # -- verbs ------------------------------------------------------------

    def _free(self, args, text):
        if not args:
            raise self._err(None, "free needs at least one character", text)
        return graded.free_module(self.setup.n, [self._char(a, text) for a in args])

    def _skyscraper(self, args, text):
        return graded.skyscraper(self._char(args[0], text))

    def _stratum_sheaf(self, args, text):
        return graded.stratum_sheaf(self.setup.n, self._indices(args[0], text))

    def _koszul(self, args, text):
        return derived.koszul(self.setup.n, self._indices(args[0], text))

    def _twist(self, args, text):
        obj = self._object(args[0], text)
        lam = self._char(args[1], text)
        return obj.twist(lam)

    def _shift(self, args, text):
        return derived.shift(derived.as_complex(self._object(args[0], text)), self._int(args[1], text))

    def _dual(self, args, text):
        return derived.minimize(derived.dualize(self.setup, self._object(args[0], text)))

    def _tensor(self, args, text):
        a, b = (self._object(x, text) for x in args)
        return derived.minimize(derived.tensorL(a, b))

    def _rhom(self, args, text):
        a, b = (self._object(x, text) for x in args)
        return derived.minimize(derived.rhom(a, b))

    def _pullback(self, args, text):
        obj = self._object(args[0], text)
        return derived.minimize(derived.pullback_L(self.setup, obj, Stratum(self._indices(args[1], text))))

    def _shriek(self, args, text):
        obj = self._object(args[0], text)
        return derived.minimize(derived.shriek_R(self.setup, obj, Stratum(self._indices(args[1], text))))

    def _sum(self, args, text):
        a, b = (self._object(x, text) for x in args)
        if isinstance(a, PresentedModule) and isinstance(b, PresentedModule):
            return graded.direct_sum(a, b)
        return derived.direct_sum(derived.as_complex(a), derived.as_complex(b))

    def _push(self, args, text):
        obj = self._object(args[0], text)
        if isinstance(obj, PresentedModule):
            return graded.pushforward_module(obj)
        return derived.pushforward_closed(obj)

    def _cohomology(self, args, text):
        return CohomologyTable(derived.cohomology(self._object(args[0], text)))

    def _coker(self, args, text):
        tgt = self._literal(args[0], text)
        src = self._literal(args[1], text)
        entries = self._literal(args[2], text)
        n = self.setup.n
        try:
            T = GradedFree(n, tuple(tuple(g) for g in tgt))
            S = GradedFree(n, tuple(tuple(g) for g in src))
            coeffs = {(int(r), int(c)): Fraction(str(v)) for r, c, v in entries}
        except (TypeError, ValueError, DimensionMismatch) as exc:
            raise self._err(args[0], f"malformed coker data: {exc}", text) from None
        return PresentedModule(GradedMatrix(S, T, coeffs))

    def _h(self, args, text):
        from .purity import h_lambda

        return h_lambda(self.setup, self._char(args[0], text))


def parse_expression(text: str) -> ast.Expression:
    """Syntax check only; returns the parsed tree."""
    try:
        return ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"syntax error: {exc.msg}", expression=text, column=exc.offset) from None


def evaluate(setup: TorusSetup, text: str, names: Mapping[str, Any] | None = None):
    return Evaluator(setup, names).evaluate(text)
