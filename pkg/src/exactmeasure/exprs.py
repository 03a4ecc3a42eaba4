"""Tiny exact evaluator for rational expressions such as ``1/2 + 1/(n+2)``.

Used by the descriptor parser so that battery files can describe parametric
sequences.  Only integer literals, ``+ - * /``, integer powers, parentheses
and caller-supplied names are accepted; ``inf``/``-inf`` stand alone.
"""

import ast
from fractions import Fraction

from .xreal import INF, NEG_INF, XReal, xr

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def eval_rational(text, env=None) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if isinstance(text, XReal):
        return text.value
    try:
        tree = ast.parse(str(text).strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse rational expression {text!r}") from exc
    return _eval(tree.body, env or {})


def eval_xreal(text, env=None) -> XReal:
    if isinstance(text, XReal):
        return text
    s = str(text).strip().lower()
    if s in ("inf", "+inf"):
        return INF
    if s == "-inf":
        return NEG_INF
    return xr(eval_rational(text, env))


def _eval(node, env):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        raise ValueError(f"only integer literals are allowed, got {node.value!r}")
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise ValueError(f"unknown name {node.id!r}")
        return Fraction(env[node.id])
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left, right = _eval(node.left, env), _eval(node.right, env)
        if isinstance(node.op, ast.Pow):
            if right.denominator != 1:
                raise ValueError("only integer exponents are allowed")
            return left ** int(right)
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise ValueError(f"operator {type(node.op).__name__} not allowed")
        if isinstance(node.op, ast.Div) and right == 0:
            raise ValueError("division by zero")
        return op(left, right)
    raise ValueError(f"unsupported expression element {ast.dump(node)}")
