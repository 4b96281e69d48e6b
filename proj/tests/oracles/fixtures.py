"""Builds the data/ fixtures with mpmath, independently of the C++ code.

Holonomy lifts are found by Newton iteration on the relator equations with
a parabolic (two-bridge) or trace-coordinate (punctured-torus bundle)
ansatz, then checked against their closed forms.
"""
import os
import sys

import mpmath as mp

mp.mp.dps = 700
DIGITS = 600
OUT = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "..", "data")


def parse(s):
    return [(c.lower(), 1 if c.islower() else -1) for c in s]


def fmt(w):
    return "".join(g if e > 0 else g.upper() for g, e in w)


def inv(w):
    return [(g, -e) for g, e in reversed(w)]


def two_bridge_knot(p, q):
    eps = [(-1) ** ((i * q) // p) for i in range(1, p)]
    w = [("x" if i % 2 == 0 else "y", e) for i, e in enumerate(eps)]
    return w + [("x", 1)] + inv(w) + [("y", -1)], w


def two_bridge_link(p, q):
    eps = [(-1) ** ((i * q) // p) for i in range(1, p)]
    w = [("y" if i % 2 == 0 else "x", e) for i, e in enumerate(eps)]
    return [("x", 1)] + w + [("x", -1)] + inv(w), w


def ev(word, rep):
    m = mp.eye(2)
    for g, e in word:
        m = m * (rep[g] if e > 0 else rep[g] ** -1)
    return m


def resid(m):
    return max(abs(m[i, j] - (1 if i == j else 0)) for i in range(2) for j in range(2))


def cstr(z):
    z = mp.mpc(z)
    re = mp.nstr(z.real, DIGITS, min_fixed=-1, max_fixed=1) if z.real != 0 else "0"
    im = mp.nstr(abs(z.imag), DIGITS, min_fixed=-1, max_fixed=1)
    if z.imag == 0:
        return re
    return f"{re}{'-' if z.imag < 0 else '+'}{im}i"


def write(name, text):
    with open(os.path.join(OUT, name), "w") as f:
        f.write(text)


def rep_text(title, rep, order):
    lines = [f"# {title}", f"digits: {DIGITS}"]
    for g in order:
        m = rep[g]
        lines.append(f"{g}: {cstr(m[0, 0])} {cstr(m[0, 1])} {cstr(m[1, 0])} {cstr(m[1, 1])}")
    return "\n".join(lines) + "\n"


def alpha_of(word, a):
    return [sum(e * a[g][k] for g, e in word) for k in range(len(next(iter(a.values()))))]


def find_longitude(rel_w, mer, rep, a, gens):
    """Searches w-based candidates for a word commuting with the meridian
    whose alpha vanishes."""
    M = rep[mer]
    cands = []
    wbar = list(reversed(rel_w))
    for base in (rel_w, wbar + rel_w, rel_w + wbar, inv(wbar) + rel_w):
        for k in range(-12, 13):
            cands.append(base + [(mer, 1 if k > 0 else -1)] * abs(k))
    for c in cands:
        c = reduce(c)
        if not c or any(v != 0 for v in alpha_of(c, a)):
            continue
        L = ev(c, rep)
        if mp.mnorm(L * M - M * L, 1) < mp.mpf(10) ** (-150):
            return c, L
    raise RuntimeError("no longitude found")


def reduce(w):
    out = []
    for l in w:
        if out and out[-1][0] == l[0] and out[-1][1] == -l[1]:
            out.pop()
        else:
            out.append(l)
    return out


def knot_fixtures():
    for name, (p, q) in {"trefoil": (3, 1), "fig8": (5, 3), "knot52": (7, 3)}.items():
        rel, w = two_bridge_knot(p, q)
        write(f"{name}.pres", f"# two-bridge knot b({p},{q})\ngens: x y\nrel: {fmt(rel)}\n")
        write(f"{name}.alpha", "x: 1\ny: 1\n")

    rel, w = two_bridge_knot(5, 3)
    # parabolic ansatz rho(x) = [[1,1],[0,1]], rho(y) = [[1,0],[-u,1]]
    X = mp.matrix([[1, 1], [0, 1]])

    def f(u):
        # the (0,0) entry carries the Riley factor with multiplicity one
        R = ev(rel, {"x": X, "y": mp.matrix([[1, 0], [-u, 1]])})
        return R[0, 0] - 1

    u = mp.findroot(f, mp.mpc(-0.4, 0.8), tol=mp.mpf(10) ** -640)
    omega = mp.exp(2j * mp.pi / 3)
    assert abs(u - omega) < mp.mpf(10) ** (-600), u
    rep = {"x": X, "y": mp.matrix([[1, 0], [-u, 1]])}
    assert resid(ev(rel, rep)) < mp.mpf(10) ** (-600)
    write("fig8.rep", rep_text("figure-eight knot, parabolic lift from Newton solve", rep, "xy"))
    lon, L = find_longitude(w, "x", rep, {"x": [1], "y": [1]}, "xy")
    tr = L[0, 0] + L[1, 1]
    assert abs(tr + 2) < mp.mpf(10) ** (-150), tr
    write("fig8.periph", f"cusp: x {fmt(lon)}\n")
    print("fig8 longitude", fmt(lon), mp.nstr(tr, 10))


def whitehead_fixtures():
    rel, w = two_bridge_link(8, 3)
    write("whitehead.pres", f"# two-bridge link b(8,3)\ngens: x y\nrel: {fmt(rel)}\n")
    write("whitehead.alpha", "x: 1 0\ny: 0 1\n")
    X = mp.matrix([[1, 1], [0, 1]])

    def f(u):
        return ev(rel, {"x": X, "y": mp.matrix([[1, 0], [u, 1]])})[0, 0] - 1

    u = mp.findroot(f, mp.mpc(-0.9, 1.1), tol=mp.mpf(10) ** -640)
    assert abs(u - mp.mpc(-1, 1)) < mp.mpf(10) ** (-600), u
    rep = {"x": X, "y": mp.matrix([[1, 0], [u, 1]])}
    assert resid(ev(rel, rep)) < mp.mpf(10) ** (-600)
    write("whitehead.rep", rep_text("Whitehead link, parabolic lift from Newton solve", rep, "xy"))
    a = {"x": [1, 0], "y": [0, 1]}
    lx, Lx = find_longitude(w, "x", rep, a, "xy")
    wy = [("x" if g == "y" else "y", e) for g, e in w]
    ly, Ly = find_longitude(wy, "y", rep, a, "xy")
    for L in (Lx, Ly):
        assert abs(L[0, 0] + L[1, 1] + 2) < mp.mpf(10) ** (-150), L[0, 0] + L[1, 1]
    write("whitehead.periph", f"cusp: x {fmt(lx)}\ncusp: y {fmt(ly)}\n")
    print("whitehead longitudes", fmt(lx), fmt(ly))


def bundle_fixtures():
    # monodromy a -> ab, b -> bab; relators t a T = ab, t b T = bab
    rels = ["taTBA", "tbTBAB"]
    write("fig8bundle.pres", "# once-punctured torus bundle, monodromy a->ab, b->bab\ngens: a b t\n"
          + "".join(f"rel: {r}\n" for r in rels))
    write("fig8bundle.alpha", "a: 0\nb: 0\nt: 1\n")
    x = (3 + mp.sqrt(3) * 1j) / 2
    y = x / (x - 1)
    # Newton refine of the fixed-point equations of the trace map
    x, y = mp.findroot(lambda x, y: [x * x + y * y + x * x - x * y * x, y * (x - 1) - x], (x, y), tol=mp.mpf(10) ** -640)
    assert abs(x * x - 3 * x + 3) < mp.mpf(10) ** (-600)
    s = (-x + mp.sqrt(x * x - 4)) / 2
    A = mp.matrix([[x, 1], [-1, 0]])
    B = mp.matrix([[0, s], [-1 / s, y]])
    AB, BAB = A * B, B * A * B
    # tau A = AB tau and tau B = BAB tau, linear in the entries of tau
    rows = []
    for P, Q in ((A, AB), (B, BAB)):
        for i in range(2):
            for j in range(2):
                row = [mp.mpc(0)] * 4
                for k in range(2):
                    row[i * 2 + k] += P[k, j]
                    row[k * 2 + j] -= Q[i, k]
                rows.append(row)
    M = mp.matrix(rows)
    U, S, V = mp.svd_c(M)
    v = V.H[:, 3] if V.rows == 4 else None
    T = mp.matrix([[v[0], v[1]], [v[2], v[3]]])
    T = T / mp.sqrt(mp.det(T))
    rep = {"a": A, "b": B, "t": T}
    for r in rels:
        assert resid(ev(parse(r), rep)) < mp.mpf(10) ** (-180), resid(ev(parse(r), rep))
    C = ev(parse("abAB"), rep)
    assert abs(C[0, 0] + C[1, 1] + 2) < mp.mpf(10) ** (-150)
    comm = mp.mnorm(T * C - C * T, 1)
    assert comm < mp.mpf(10) ** (-150), comm
    write("fig8bundle.rep", rep_text("figure-eight bundle, trace coordinates x^2-3x+3=0", rep, "abt"))
    write("fig8bundle.periph", "cusp: t abAB\n")
    print("bundle tr t", mp.nstr(T[0, 0] + T[1, 1], 12))


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    knot_fixtures()
    whitehead_fixtures()
    bundle_fixtures()
