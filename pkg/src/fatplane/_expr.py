"""Small arithmetic-expression evaluator used by the text formats.

Expressions such as ``(-1+A)*x + A*y - z`` or ``c^2+c+2`` are parsed with the
standard :mod:`ast` module and evaluated with caller-supplied values, so the
same code serves field elements, forms and plain integers.
"""

import ast
from fractions import Fraction


class ExpressionError(ValueError):
    pass


def evaluate(text, names, const):
    """Evaluate ``text`` where ``names`` maps identifiers to values and
    ``const`` turns an integer literal into a value.

    ``^`` is read as exponentiation.  Only integer literals, names, ``+ - * /``,
    unary minus and integer powers are accepted.
    """
    src = text.strip().replace("^", "**")
    if not src:
        raise ExpressionError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError("cannot parse %r" % text) from exc
    return _eval(tree.body, names, const, text)


def _eval(node, names, const, text):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return const(node.value)
        raise ExpressionError("bad literal %r in %r" % (node.value, text))
    if isinstance(node, ast.Name):
        if node.id not in names:
            raise ExpressionError("unknown name %r in %r" % (node.id, text))
        return names[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _eval(node.operand, names, const, text)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            e = node.right
            sign = 1
            if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                sign, e = -1, e.operand
            if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                raise ExpressionError("exponent must be an integer in %r" % text)
            base = _eval(node.left, names, const, text)
            if sign < 0:
                return (const(1) / base) ** e.value
            return base ** e.value
        a = _eval(node.left, names, const, text)
        b = _eval(node.right, names, const, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    raise ExpressionError("unsupported syntax in %r" % text)


def parse_rational(text):
    """Parse ``3``, ``-7/2`` and the like into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ExpressionError("not a rational number: %r" % text) from exc
