"""Exact twisted Alexander polynomials of the figure-eight knot for small n.

Fox calculus and Sym^(n-1) are redone here in sympy with exact algebraic
entries (omega = e^(2 pi i/3)), removing column y. Prints Delta^{alpha,n}
for n = 2, 3, 4 and the classical polynomials of the two-bridge fixtures.
"""
import sympy as sp

t = sp.symbols("t")


def parse(s):
    return [(c.lower(), 1 if c.islower() else -1) for c in s]


def fox(word, gen, rep):
    n = rep["x"].shape[0]
    acc, pre, ex = sp.zeros(n), sp.eye(n), 0
    for g, e in word:
        m = rep[g] if e > 0 else rep[g].inv()
        if g == gen:
            acc += t ** ex * pre if e > 0 else -(t ** (ex - 1)) * pre * m
        pre, ex = pre * m, ex + e
    return acc


def sym(m, n):
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    x, y = sp.symbols("X Y")
    s = sp.zeros(n)
    for k in range(n):
        p = sp.Poly(sp.expand((a * x + c * y) ** (n - 1 - k) * (b * x + d * y) ** k), x, y)
        for i in range(n):
            s[i, k] = p.coeff_monomial(x ** (n - 1 - i) * y ** i)
    return s


if __name__ == "__main__":
    one = {"x": sp.Matrix([[1]]), "y": sp.Matrix([[1]])}
    for name, rel in [("trefoil", "xyxYXY"), ("fig8", "xYXyxYxyXY"), ("knot52", "xyXYxyxYXyxYXY")]:
        print(name, sp.factor(sp.expand(fox(parse(rel), "y", one)[0])))
    om = sp.Rational(-1, 2) + sp.sqrt(3) * sp.I / 2
    X, Y = sp.Matrix([[1, 1], [0, 1]]), sp.Matrix([[1, 0], [-om, 1]])
    for n in (2, 3, 4):
        rep = {"x": sym(X, n), "y": sym(Y, n)}
        num = sp.expand(sp.simplify(fox(parse("xYXyxYxyXY"), "x", rep).det()))
        den = sp.expand((t * rep["y"] - sp.eye(n)).det())
        q = sp.cancel(num / den)
        if n % 2:
            q = sp.cancel(q / (t - 1))
        print(n, sp.expand(sp.simplify(q)))
