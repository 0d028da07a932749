#!/usr/bin/env python3
"""Exact symbolic interval structure of resonance fibers.

For each frequency ratio, rationalize the computational scheme in
rho = sqrt(1 - 16*eta2) and enumerate ALL real roots of the five constraint
functions (eta1, p13, p24, d13, d24) inside eta2 in (0, 1/16) with sympy's
exact root isolation.  Between consecutive roots the admissibility of the
scheme is decided by exact rational evaluation at midpoints.  The output
(interval endpoints, endpoint kinds, isolated touch points, component
counts) is the ground truth frozen into the Rust tests.

Counting rule for components of the full fiber in mass space: each
admissible eta2-interval lifts to 8 arcs (one per element of D4); arcs are
identified at an endpoint where d13 = 0 (the point gains the (13)
reflection) or d24 = 0 (gains (24)); isolated touch points contribute a
single D4 orbit of points.

Run:  python3 tools/oracles/fiber_exact.py
"""

from fractions import Fraction

import sympy as sp

RHO = sp.Symbol("rho", positive=True)


def scheme_polys(xi, eta):
    """Constraint functions as exact expressions in rho, with positive
    multipliers cleared so signs are preserved for rho in (0,1)."""
    eta2 = (1 - RHO**2) / sp.Integer(16)
    eta1 = (eta - 3 * eta2) / 4
    s13 = (1 - RHO) / 4
    s24 = (1 + RHO) / 4
    p13 = (xi / 4 - s13 * eta1) * 2 / RHO
    p24 = eta1 - p13
    d13 = s13**2 - 4 * p13
    d24 = s24**2 - 4 * p24
    funcs = {"eta1": eta1, "p13": p13, "p24": p24, "d13": d13, "d24": d24}
    return {k: sp.together(v) for k, v in funcs.items()}


def roots_in_01(expr):
    num, _ = sp.fraction(sp.together(expr))
    poly = sp.Poly(sp.expand(num), RHO)
    out = []
    for r in poly.real_roots():
        if 0 < r < 1:
            out.append(r)
    return out


def classify_exact(n1, n2, n3):
    s = sp.Integer(n1**2 + n2**2 + n3**2)
    lam = [sp.Integer(n1**2) / s, sp.Integer(n2**2) / s, sp.Integer(n3**2) / s]
    xi = lam[0] * lam[1] * lam[2]
    eta = lam[0] * lam[1] + lam[0] * lam[2] + lam[1] * lam[2]
    if sp.simplify(eta - 4 * xi - sp.Rational(3, 16)) == 0:
        return None

    funcs = scheme_polys(xi, eta)
    # exact eta2 for each rho-root
    events = []
    for name, expr in funcs.items():
        for r in roots_in_01(expr):
            eta2 = (1 - r**2) / 16
            events.append((eta2, name, r))
    events.sort(key=lambda t: sp.N(t[0], 50))

    # interval breakpoints in eta2: 0, roots (ascending), 1/16
    breaks = [sp.Integer(0)] + [e[0] for e in events] + [sp.Rational(1, 16)]

    def admissible(eta2_val):
        rho = sp.sqrt(1 - 16 * eta2_val)
        vals = [funcs[k].subs(RHO, rho) for k in funcs]
        return all(sp.N(v, 50) > 0 for v in vals)

    segs = []
    for i in range(len(breaks) - 1):
        lo, hi = breaks[i], breaks[i + 1]
        if sp.N(hi - lo, 50) <= 0:
            continue
        mid = (lo + hi) / 2
        segs.append((lo, hi, admissible(mid)))

    intervals = []
    i = 0
    while i < len(segs):
        if segs[i][2]:
            j = i
            while j + 1 < len(segs) and segs[j + 1][2]:
                j += 1
            intervals.append((segs[i][0], segs[j][1]))
            i = j + 1
        else:
            i += 1

    def kind_at(eta2_val):
        rho = sp.sqrt(1 - 16 * eta2_val)
        best, bestv = None, None
        for k in funcs:
            v = abs(sp.N(funcs[k].subs(RHO, rho), 50))
            if bestv is None or v < bestv:
                best, bestv = k, v
        return best

    # isolated touch points: double roots of d13/d24 with everything else > 0
    touches = []
    for name in ("d13", "d24"):
        num, _ = sp.fraction(sp.together(funcs[name]))
        poly = sp.Poly(sp.expand(num), RHO)
        for r, mult in sp.roots(poly.as_expr(), RHO).items():
            if not r.is_real or not (0 < sp.N(r, 50) < 1):
                continue
            if mult % 2 == 0:
                eta2 = (1 - r**2) / 16
                if not any(sp.N(lo - 1e-30, 50) <= sp.N(eta2, 50) <= sp.N(hi + 1e-30, 50)
                           for lo, hi in intervals):
                    rho = sp.sqrt(1 - 16 * eta2)
                    others = [funcs[k].subs(RHO, rho) for k in funcs if k != name]
                    if all(sp.N(v, 50) > 0 for v in others):
                        touches.append((eta2, name))

    # component count
    count_curves = 0
    opens = 0
    compacts = 0
    details = []
    for lo, hi in intervals:
        klo = kind_at(lo) if sp.N(lo, 50) > 0 else "range"
        khi = kind_at(hi) if sp.N(hi, 50) < 1 / 16 else "range"
        glue = set()
        open_ends = 0
        for k in (klo, khi):
            if k in ("d13", "d24"):
                glue.add(k)
            else:
                open_ends += 1
        group = {frozenset(): 1, frozenset({"d13"}): 2,
                 frozenset({"d24"}): 2, frozenset({"d13", "d24"}): 4}[frozenset(glue)]
        n_comp = 8 // group
        details.append((lo, hi, klo, khi, n_comp, open_ends))
        if open_ends:
            opens += n_comp
        else:
            compacts += n_comp

    points = 0
    for eta2, name in touches:
        # stabilizer of the touch point: the vanished discriminant gives a
        # reflection symmetry, so the D4 orbit has 4 elements
        points += 4
        details.append((eta2, eta2, name + "-touch", name + "-touch", 4, 0))

    return intervals, touches, opens, compacts, points, details


ROWS = [
    (1, 1, 2), (1, 2, 2), (1, 2, 3), (1, 2, 4),
    (1, 1, 1), (1, 1, 3), (1, 2, 5), (1, 2, 6),
    (1, 3, 3), (1, 3, 4), (1, 3, 5), (1, 3, 6),
    (1, 3, 7), (1, 3, 9), (2, 3, 4), (2, 3, 6),
]

TABLE = {
    (1, 1, 2): "four points", (1, 2, 2): "empty",
    (1, 2, 3): "four open curves", (1, 2, 4): "12 open curves",
    (1, 1, 1): "empty", (1, 1, 3): "four points",
    (1, 2, 5): "12 open curves", (1, 2, 6): "12 open curves",
    (1, 3, 3): "empty", (1, 3, 4): "four open curves",
    (1, 3, 5): "four open curves", (1, 3, 6): "12 open curves",
    (1, 3, 7): "12 open curves", (1, 3, 9): "12 open curves",
    (2, 3, 4): "two compact curves", (2, 3, 6): "two compact curves",
}


def main():
    for n1, n2, n3 in ROWS:
        res = classify_exact(n1, n2, n3)
        intervals, touches, opens, compacts, points, details = res
        desc = []
        if points:
            desc.append(f"{points} points")
        if opens:
            desc.append(f"{opens} open curves")
        if compacts:
            desc.append(f"{compacts} compact curves")
        got = ", ".join(desc) if desc else "empty"
        print(f"({n1}:{n2}:{n3}) exact -> {got:22s} table: {TABLE[(n1,n2,n3)]}")
        for lo, hi, klo, khi, n_comp, open_ends in details:
            lo_s = f"{sp.N(lo, 20)}"
            hi_s = f"{sp.N(hi, 20)}"
            try:
                lo_ex = sp.nsimplify(lo, rational=True) if sp.ask(sp.Q.rational(lo)) else lo
            except Exception:
                lo_ex = lo
            print(f"    [{lo_s}, {hi_s}]  ends {klo}/{khi}  comps {n_comp}"
                  f"  exact lo: {sp.radsimp(lo)}")


if __name__ == "__main__":
    main()
