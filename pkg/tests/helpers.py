"""Shared generators and independent oracles for the test suite."""

import math

import numpy as np

from majorkit import expr


def random_ast(rng, depth=3, variables=("t",)):
    """Random expression AST with nonnegative constants.

    Exponents are kept as small integer constants so evaluation stays in
    range when the AST is also used for evaluation tests.
    """
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.5 or not variables:
            return expr.Const(round(rng.uniform(0, 3), 3))
        return expr.Var(rng.choice(variables))
    roll = rng.random()
    if roll < 0.15:
        return expr.Unary("-", random_ast(rng, depth - 1, variables))
    if roll < 0.75:
        op = rng.choice("+-*/^")
        left = random_ast(rng, depth - 1, variables)
        if op == "^":
            right = expr.Const(float(rng.randint(0, 3)))
        else:
            right = random_ast(rng, depth - 1, variables)
        return expr.Bin(op, left, right)
    name = rng.choice(sorted(expr.FUNCTION_ARITY))
    args = tuple(
        random_ast(rng, depth - 1, variables)
        for _ in range(expr.FUNCTION_ARITY[name])
    )
    return expr.Call(name, args)


def naive_eval(node, bindings):
    """Direct-recursion evaluation oracle, independent of expr.evaluate.

    Raises on the same domain failures (KeyError, ValueError,
    ZeroDivisionError, OverflowError) and refuses non-finite results.
    """

    def check(v):
        if not math.isfinite(v):
            raise OverflowError("non-finite result")
        return v

    if isinstance(node, expr.Const):
        return node.value
    if isinstance(node, expr.Var):
        return bindings[node.name]
    if isinstance(node, expr.Unary):
        return -naive_eval(node.operand, bindings)
    if isinstance(node, expr.Bin):
        a = naive_eval(node.left, bindings)
        b = naive_eval(node.right, bindings)
        if node.op == "+":
            return check(a + b)
        if node.op == "-":
            return check(a - b)
        if node.op == "*":
            return check(a * b)
        if node.op == "/":
            if b == 0:
                raise ZeroDivisionError
            return check(a / b)
        if a == 0.0 and b == 0.0:
            return 1.0
        if a == 0.0 and b < 0.0:
            raise ValueError("zero to a negative power")
        return check(math.pow(a, b))
    if isinstance(node, expr.Call):
        args = [naive_eval(arg, bindings) for arg in node.args]
        if node.name == "exp":
            return check(math.exp(args[0]))
        if node.name == "log":
            if args[0] <= 0:
                raise ValueError("log domain")
            return math.log(args[0])
        if node.name == "abs":
            return abs(args[0])
        if node.name == "sqrt":
            if args[0] < 0:
                raise ValueError("sqrt domain")
            return math.sqrt(args[0])
        if node.name == "max":
            return max(args)
        if node.name == "min":
            return min(args)
    raise TypeError(node)


def random_tree_edges(rng, n):
    """Random labeled tree on n vertices: attach each vertex to an earlier one."""
    return [(f"v{int(rng.integers(0, i))}", f"v{i}") for i in range(1, n)]


def random_doubly_stochastic(rng, n, terms=None):
    """Convex combination of random permutation matrices."""
    terms = terms or n + 1
    weights = rng.dirichlet(np.ones(terms))
    mat = np.zeros((n, n))
    for w in weights:
        perm = rng.permutation(n)
        mat[np.arange(n), perm] += w
    return mat


def majorized_pair(rng, n, lo=0.0, hi=10.0, alpha=1.0):
    """A pair (x, y) with x classically majorized by alpha * y."""
    y = rng.uniform(lo, hi, size=n)
    x = random_doubly_stochastic(rng, n) @ (alpha * y)
    return x, y


def floyd_warshall(n, index_edges):
    """All-pairs shortest paths on an unweighted graph, cubic and simple."""
    big = 10**9
    dist = [[0 if i == j else big for j in range(n)] for i in range(n)]
    for u, v in index_edges:
        dist[u][v] = dist[v][u] = 1
    for k in range(n):
        for i in range(n):
            dik = dist[i][k]
            for j in range(n):
                if dik + dist[k][j] < dist[i][j]:
                    dist[i][j] = dik + dist[k][j]
    return dist
