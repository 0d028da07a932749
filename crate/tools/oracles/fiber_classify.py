#!/usr/bin/env python3
"""Reference classification of mass-distribution fibers for frequency ratios.

Independent oracle for the eta2-scan classifier: for each frequency ratio it
scans the admissible eta2 range, extracts maximal admissible intervals and
isolated touch points, assembles branch arcs under the dihedral group D4,
and counts connected components.  Expected counts for the Rust tests are
frozen from this script's output.

Run:  python3 tools/oracles/fiber_classify.py
"""

from fractions import Fraction
from itertools import product
import math

GRID = 40000


def target(n1, n2, n3):
    s = Fraction(n1 * n1 + n2 * n2 + n3 * n3)
    xi = Fraction(n1 * n1) * Fraction(n2 * n2) * Fraction(n3 * n3) / s ** 3
    eta = (Fraction(n1 * n1 * n2 * n2) + Fraction(n1 * n1 * n3 * n3)
           + Fraction(n2 * n2 * n3 * n3)) / s ** 2
    return xi, eta


def discriminant_t(xi, eta):
    return 27 * xi * xi + 4 * eta ** 3 - 18 * xi * eta - eta * eta + 4 * xi


def constraints(xi, eta, eta2):
    """(eta1, p13, p24, d13, d24); admissible iff all are >= 0 (p's > 0)."""
    root = 1.0 - 16.0 * eta2
    if root <= 0.0:
        return None
    root = math.sqrt(root)
    eta1 = (eta - 3.0 * eta2) / 4.0
    s13 = (1.0 - root) / 4.0
    s24 = (1.0 + root) / 4.0
    p13 = (xi / 4.0 - s13 * eta1) / (root / 2.0)
    p24 = eta1 - p13
    d13 = s13 * s13 - 4.0 * p13
    d24 = s24 * s24 - 4.0 * p24
    return eta1, p13, p24, d13, d24


def margin(xi, eta, eta2):
    g = constraints(xi, eta, eta2)
    return -1.0 if g is None else min(g)


def point_at(xi, eta, eta2):
    eta1, p13, p24, d13, d24 = constraints(xi, eta, eta2)
    root = math.sqrt(1.0 - 16.0 * eta2)
    s13 = (1.0 - root) / 4.0
    s24 = (1.0 + root) / 4.0
    h13 = math.sqrt(max(d13, 0.0)) / 2.0
    h24 = math.sqrt(max(d24, 0.0)) / 2.0
    return (s13 / 2.0 - h13, s24 / 2.0 - h24, s13 / 2.0 + h13, s24 / 2.0 + h24)


def dihedral_images():
    """The 8 coordinate permutations of the square 1-2-3-4."""
    perms = []
    for k in range(4):
        perms.append(tuple((i + k) % 4 for i in range(4)))
        perms.append(tuple((k - i) % 4 for i in range(4)))
    return perms


def orbit_size(a, tol=1e-9):
    seen = set()
    for p in dihedral_images():
        img = tuple(round(a[p[i]] / tol) for i in range(4))
        seen.add(img)
    return len(seen)


def bisect(f, lo, hi, positive_at_hi):
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if (f(mid) > 0.0) == positive_at_hi:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def refine_max(f, lo, hi):
    for _ in range(300):
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if f(m1) < f(m2):
            lo = m1
        else:
            hi = m2
    x = 0.5 * (lo + hi)
    return x, f(x)


def endpoint_kind(xi, eta, eta2):
    g = constraints(xi, eta, eta2)
    labels = ["eta1", "p13", "p24", "d13", "d24"]
    k = min(range(5), key=lambda i: abs(g[i]))
    return labels[k]


def classify(n1, n2, n3):
    xi_r, eta_r = target(n1, n2, n3)
    xi, eta = float(xi_r), float(eta_r)
    if eta_r - 4 * xi_r - Fraction(3, 16) == 0:
        # Scheme degenerate; the fiber concentrates at eta2 = 1/16 where it
        # is a segment, shrinking to the equal-mass point iff xi = 1/32.
        return ("exceptional", 1 if xi_r == Fraction(1, 32) else None, [])

    f = lambda x: margin(xi, eta, x)
    xs = [(i + 0.5) * (1.0 / 16.0) / GRID for i in range(GRID)]
    ms = [f(x) for x in xs]

    intervals = []
    i = 0
    while i < GRID:
        if ms[i] > 0.0:
            j = i
            while j + 1 < GRID and ms[j + 1] > 0.0:
                j += 1
            lo = bisect(f, xs[i - 1], xs[i], True) if i > 0 else xs[0]
            hi = bisect(f, xs[j + 1], xs[j], True) if j + 1 < GRID else xs[-1]
            intervals.append((lo, hi))
            i = j + 1
        else:
            i += 1

    touches = []
    for i in range(1, GRID - 1):
        if ms[i] < 0.0 and ms[i] >= ms[i - 1] and ms[i] >= ms[i + 1] and ms[i] > -1e-4:
            x, v = refine_max(f, xs[i - 1], xs[i + 1])
            if v > -1e-10 and all(abs(x - t) > 1e-7 for t in touches):
                touches.append(x)

    points = sum(orbit_size(point_at(xi, eta, x)) for x in touches)

    # Assemble arcs: 8 dihedral copies of each interval arc, glued where a
    # discriminant vanishes at an interval end.
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        parent[find(x)] = find(y)

    perms = dihedral_images()
    swap13 = (2, 1, 0, 3)
    swap24 = (0, 3, 2, 1)

    def compose(p, q):
        return tuple(p[q[i]] for i in range(4))

    open_end = set()
    for idx, (lo, hi) in enumerate(intervals):
        for p in perms:
            parent.setdefault((idx, p), (idx, p))
        for end in (lo, hi):
            kind = endpoint_kind(xi, eta, end)
            for p in perms:
                if kind == "d13":
                    union((idx, p), (idx, compose(p, swap13)))
                elif kind == "d24":
                    union((idx, p), (idx, compose(p, swap24)))
                else:
                    open_end.add((idx, p))

    comps = {}
    for node in parent:
        comps.setdefault(find(node), []).append(node)
    opens = sum(1 for c in comps.values() if any(n in open_end for n in c))
    compacts = len(comps) - opens
    return ("scan", points, intervals, opens, compacts)


ROWS = [
    (1, 1, 2, "four points"), (1, 2, 2, "empty"),
    (1, 2, 3, "four open curves"), (1, 2, 4, "12 open curves"),
    (1, 1, 1, "empty"), (1, 1, 3, "four points"),
    (1, 2, 5, "12 open curves"), (1, 2, 6, "12 open curves"),
    (1, 3, 3, "empty"), (1, 3, 4, "four open curves"),
    (1, 3, 5, "four open curves"), (1, 3, 6, "12 open curves"),
    (1, 3, 7, "12 open curves"), (1, 3, 9, "12 open curves"),
    (2, 3, 4, "two compact curves"), (2, 3, 6, "two compact curves"),
]


def main():
    xi, eta = target(1, 1, 2)
    print("(1:1:2) exact T:", discriminant_t(xi, eta))
    print("(1:2:2) eta <= 2 xi + 1/4:",
          target(1, 2, 2)[1] <= 2 * target(1, 2, 2)[0] + Fraction(1, 4))
    print("T(1/27, 1/3):", discriminant_t(Fraction(1, 27), Fraction(1, 3)))
    xi_c, eta_c = Fraction(1, 32), Fraction(5, 16)
    print("(1:1:sqrt2) on exceptional line:", eta_c - 4 * xi_c - Fraction(3, 16) == 0)

    for n1, n2, n3, expected in ROWS:
        res = classify(n1, n2, n3)
        if res[0] == "exceptional":
            print(f"({n1}:{n2}:{n3}) exceptional line, expected: {expected}")
            continue
        _, points, intervals, opens, compacts = res
        desc = []
        if points:
            desc.append(f"{points} points")
        if opens:
            desc.append(f"{opens} open curves")
        if compacts:
            desc.append(f"{compacts} compact curves")
        got = ", ".join(desc) if desc else "empty"
        ivs = ", ".join(f"[{lo:.12f}, {hi:.12f}]"
                        + f" ({endpoint_kind(*map(float, target(n1, n2, n3)), lo)}"
                        + f"/{endpoint_kind(*map(float, target(n1, n2, n3)), hi)})"
                        for lo, hi in intervals)
        print(f"({n1}:{n2}:{n3}) -> {got:24s} expected: {expected:20s} {ivs}")

    # Published interval endpoints for (2:3:4): 42/841 and 99/1682.
    res = classify(2, 3, 4)
    lo, hi = res[2][0]
    print("(2:3:4) interval vs 42/841, 99/1682:",
          lo - 42 / 841, hi - 99 / 1682)
    # Published isolated point for (1:1:2).
    xi, eta = map(float, target(1, 1, 2))
    print("(1:1:2) point at eta2=1/18:", point_at(xi, eta, 1.0 / 18.0),
          "ref (1/12, (2-sqrt2)/12, 1/12, (2+sqrt2)/12) =",
          (1 / 12, (2 - math.sqrt(2)) / 12, 1 / 12, (2 + math.sqrt(2)) / 12))


if __name__ == "__main__":
    main()
