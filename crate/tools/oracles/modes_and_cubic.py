#!/usr/bin/env python3
"""Reference computation for the eigenmode transform of the four-particle chain.

Independent oracle used to freeze expected values in the Rust test suite.
It builds everything from first principles (numpy eigendecomposition plus
the closed-form mass curve) and cross-checks the closed-form transform
matrix entries and the ten cubic interaction coefficients.

Run:  python3 tools/oracles/modes_and_cubic.py
"""

import numpy as np

# Positive eigenvalues of A*C for the 3:2:1 frequency pattern, zero mode last.
LAMBDA = np.array([9.0 / 14.0, 2.0 / 7.0, 1.0 / 14.0, 0.0])

U1 = 8.0 / 3.0 - (2.0 / 3.0) * 19.0 ** (1.0 / 3.0)


def inverse_masses(u):
    """Closed-form inverse masses a(u) on the resonant curve, 0 <= u < u1."""
    s13 = (2.0 + u) / 28.0
    s24 = (12.0 - u) / 28.0
    h13 = (np.sqrt(2.0) / 112.0) * np.sqrt(u * (6.0 - u) * (16.0 - u) / (5.0 - u))
    h24 = (1.0 / (56.0 * np.sqrt(2.0))) * np.sqrt((6.0 + u) * (4.0 - u) * (10.0 - u) / (5.0 - u))
    a1 = s13 / 2.0 - h13
    a3 = s13 / 2.0 + h13
    a2 = s24 / 2.0 - h24
    a4 = s24 / 2.0 + h24
    return np.array([a1, a2, a3, a4])


def coupling_matrix():
    c = np.zeros((4, 4))
    for i in range(4):
        c[i, i] = 2.0
        c[i, (i + 1) % 4] = -1.0
        c[i, (i - 1) % 4] = -1.0
    return c


def numeric_transform(u):
    """L(u) via eigendecomposition of A^(1/2) C A^(1/2), columns sign-matched
    to the closed-form table."""
    a = inverse_masses(u)
    c = coupling_matrix()
    sqrt_a = np.diag(np.sqrt(a))
    m = sqrt_a @ c @ sqrt_a
    w, v = np.linalg.eigh(m)
    order = np.argsort(w)[::-1]
    w = w[order]
    v = v[:, order]
    l_num = sqrt_a @ v
    l_ref = closed_form_l(u)
    for j in range(4):
        if np.dot(l_num[:, j], l_ref[:, j]) < 0.0:
            l_num[:, j] = -l_num[:, j]
    return a, w, l_num


def lemma_transform(u):
    """L(u) via the resolvent-style eigenvector formula, normalized."""
    a = inverse_masses(u)
    cols = []
    for lam in LAMBDA[:3]:
        mu = 1.0 / (2.0 - lam / a)
        v = np.array([mu[0] * (mu[1] + mu[3]), mu[1], mu[2] * (mu[1] + mu[3]), mu[3]])
        w = v / np.sqrt(a)
        cols.append(v / np.linalg.norm(w))
    v4 = np.ones(4)
    w4 = v4 / np.sqrt(a)
    cols.append(v4 / np.linalg.norm(w4))
    l = np.column_stack(cols)
    l_ref = closed_form_l(u)
    for j in range(4):
        if np.dot(l[:, j], l_ref[:, j]) < 0.0:
            l[:, j] = -l[:, j]
    return l


def closed_form_l(u, misprinted_corner=False):
    """Closed-form transform matrix.

    The last column is the zero mode, which must be a constant vector; the
    (1,4) entry therefore uses the same radicand as rows 2..4.  Setting
    `misprinted_corner=True` evaluates the variant with +484u instead, which
    breaks the constancy for u > 0 (kept only so the oracle can demonstrate
    that the variant is wrong).
    """
    sq = np.sqrt
    den1 = 192.0 * sq(35.0) * (u - 5.0)
    den2 = 64.0 * sq(105.0) * (u - 5.0)
    den3 = 64.0 * sq(21.0) * (u - 5.0)
    den4 = 96.0 * sq(14.0) * (u - 5.0)

    l = np.zeros((4, 4))
    l[0, 0] = sq(u + 6.0) * (sq(16.0 - u) * (20.0 - 3.0 * (u - 4.0) * u)
                             - 18.0 * sq(2.0) * sq(5.0 - u) * sq(6.0 - u) * sq(u)) / den1
    l[0, 1] = sq(4.0 - u) * (sq(2.0) * sq(6.0 - u) * (u * (3.0 * u - 22.0) - 20.0)
                             + 16.0 * sq(5.0 - u) * sq((16.0 - u) * u)) / den2
    l[0, 2] = sq(10.0 - u) * (sq(u) * ((28.0 - 3.0 * u) * u - 76.0)
                              + 2.0 * sq(2.0) * sq(5.0 - u) * sq(6.0 - u) * sq(16.0 - u)) / den3
    zero_mode_radicand = u * (-3.0 * (u - 22.0) * u - 484.0) + 1200.0
    first_row_radicand = 1200.0 - u * (3.0 * (u - 22.0) * u - 484.0)
    r14 = first_row_radicand if misprinted_corner else zero_mode_radicand
    l[0, 3] = -sq(r14) * sq(40.0 - u * (3.0 * (u - 8.0) * u + 64.0)) / den4

    l[1, 0] = sq(16.0 - u) * (sq(u + 6.0) * (-3.0 * (u - 16.0) * u - 160.0)
                              + 18.0 * sq(8.0 - 2.0 * u) * sq(5.0 - u) * sq(10.0 - u)) / den1
    l[1, 1] = sq(6.0 - u) * (sq(8.0 - 2.0 * u) * (u * (3.0 * u - 38.0) + 60.0)
                             + 16.0 * sq(5.0 - u) * sq((10.0 - u) * (u + 6.0))) / den2
    l[1, 2] = -sq(u) * (sq(10.0 - u) * (u * (3.0 * u - 32.0) + 96.0)
                        + 2.0 * sq(8.0 - 2.0 * u) * sq((5.0 - u) * (u + 6.0))) / den3
    l[1, 3] = -sq(zero_mode_radicand) * sq(u * (-3.0 * (u - 8.0) * u - 64.0) + 40.0) / den4

    l[2, 0] = sq(u + 6.0) * (sq(16.0 - u) * (20.0 - 3.0 * (u - 4.0) * u)
                             + 18.0 * sq(2.0) * sq(5.0 - u) * sq((6.0 - u) * u)) / den1
    l[2, 1] = sq(4.0 - u) * (sq(2.0) * sq(6.0 - u) * (u * (3.0 * u - 22.0) - 20.0)
                             - 16.0 * sq(5.0 - u) * sq((16.0 - u) * u)) / den2
    l[2, 2] = -sq(10.0 - u) * (sq(u) * (u * (3.0 * u - 28.0) + 76.0)
                               + 2.0 * sq(2.0) * sq(5.0 - u) * sq(6.0 - u) * sq(16.0 - u)) / den3
    l[2, 3] = -sq(1200.0 - u * (3.0 * (u - 22.0) * u + 484.0)) \
        * sq(40.0 - u * (3.0 * (u - 8.0) * u + 64.0)) / den4

    l[3, 0] = -sq(16.0 - u) * (sq(u + 6.0) * (3.0 * (u - 16.0) * u + 160.0)
                               + 18.0 * sq(8.0 - 2.0 * u) * sq(5.0 - u) * sq(10.0 - u)) / den1
    l[3, 1] = sq(6.0 - u) * (sq(8.0 - 2.0 * u) * (u * (3.0 * u - 38.0) + 60.0)
                             - 16.0 * sq(5.0 - u) * sq((10.0 - u) * (u + 6.0))) / den2
    l[3, 2] = sq(u) * (sq(10.0 - u) * ((32.0 - 3.0 * u) * u - 96.0)
                       + 2.0 * sq(8.0 - 2.0 * u) * sq((5.0 - u) * (u + 6.0))) / den3
    l[3, 3] = -sq(1200.0 - u * (3.0 * (u - 22.0) * u + 484.0)) \
        * sq(40.0 - u * (3.0 * (u - 8.0) * u + 64.0)) / den4
    return l


def cubic_coefficients(l):
    """Ten cubic coefficients from the transform matrix.

    The chain cubic is (1/3) * sum_j (q_{j+1} - q_j)^3 with cyclic index.
    Substituting q = L x (zero mode dropped) gives a cubic in (x1,x2,x3);
    coefficients are returned in the order
    x1^3, x1^2 x2, x1^2 x3, x2^2 x1, x3^2 x1, x1 x2 x3, x2^3, x3^3,
    x3^2 x2, x2^2 x3.
    """
    delta = np.array([l[(j + 1) % 4, :3] - l[j, :3] for j in range(4)])
    c3 = lambda i: np.sum(delta[:, i] ** 3) / 3.0
    c21 = lambda i, k: np.sum(delta[:, i] ** 2 * delta[:, k])
    c111 = 2.0 * np.sum(delta[:, 0] * delta[:, 1] * delta[:, 2])
    return np.array([
        c3(0), c21(0, 1), c21(0, 2), c21(1, 0), c21(2, 0),
        c111, c3(1), c3(2), c21(2, 1), c21(1, 2),
    ])


def table_coefficients(u, d9_denominator=896.0):
    """Cubic coefficients from the published closed forms.

    The ninth coefficient's denominator constant is a known misprint (869);
    896 reproduces both the numeric transform and the tabulated decimal
    values, see the d9 comparison printed by this script.
    """
    sq = np.sqrt
    g = 5.0 - u
    d = np.zeros(10)
    d[0] = sq(u) * 27.0 * sq(4.0 - u) * sq(6.0 - u) * sq(10.0 - u) * (16.0 - u) * (u + 6.0) \
        / (35840.0 * sq(35.0) * g)
    d[1] = -sq(u) * 3.0 * sq(3.0) * sq(10.0 - u) * sq(16.0 - u) * sq(u + 6.0) \
        * (3.0 * u * u - 30.0 * u + 52.0) / (4480.0 * sq(70.0) * g)
    d[2] = -3.0 * sq(3.0) * sq(4.0 - u) * sq(6.0 - u) * sq(16.0 - u) * sq(u + 6.0) \
        * (3.0 * u * u - 30.0 * u + 160.0) / (35840.0 * sq(7.0) * g)
    d[3] = -sq(u) * sq(4.0 - u) * sq(6.0 - u) * sq(10.0 - u) \
        * (-3.0 * u * u + 30.0 * u + 68.0) / (1120.0 * sq(35.0) * g)
    d[4] = -sq(u) * sq(4.0 - u) * sq(6.0 - u) * sq(10.0 - u) \
        * (3.0 * u * u - 30.0 * u + 64.0) / (7168.0 * sq(35.0) * g)
    d[5] = -(-3.0 * u ** 4 + 60.0 * u ** 3 - 352.0 * u * u + 520.0 * u + 960.0) \
        / (2240.0 * sq(14.0) * g)
    d[6] = sq(u) * sq(10.0 - u) * sq(16.0 - u) * (6.0 - u) * (4.0 - u) * sq(u + 6.0) \
        / (420.0 * sq(210.0) * g)
    d[7] = u * sq(4.0 - u) * sq(6.0 - u) * sq(16.0 - u) * (10.0 - u) * sq(u + 6.0) \
        / (21504.0 * sq(21.0) * g)
    d[8] = -sq(u) * sq(10.0 - u) * sq(16.0 - u) * sq(u + 6.0) \
        * (u * u - 10.0 * u + 28.0) / (d9_denominator * sq(210.0) * g)
    d[9] = sq(4.0 - u) * sq(6.0 - u) * sq(16.0 - u) * sq(u + 6.0) \
        * (u * u - 10.0 * u + 20.0) / (1120.0 * sq(21.0) * g)
    return d


def fmt(x):
    return np.array2string(np.asarray(x), precision=17, floatmode="maxprec",
                           separator=", ", max_line_width=120)


def main():
    rng = np.random.default_rng(7)
    c = coupling_matrix()

    print("u1 =", repr(U1))

    q = rng.standard_normal(4)
    lhs = sum((q[(j + 1) % 4] - q[j]) ** 3 for j in range(4)) / 3.0
    rhs = sum((q[(j + 1) % 4] - q[(j - 1) % 4]) * q[j] ** 2 for j in range(4))
    print("cyclic cubic identity residual:", lhs - rhs)

    for u in (0.0, 0.25, 0.534105, 0.826713):
        a, w, l_num = numeric_transform(u)
        l_cf = closed_form_l(u)
        l_lem = lemma_transform(u)
        k_cf = np.diag(1.0 / a) @ l_cf
        print(f"\n=== u = {u}")
        print("a =", fmt(a))
        print("eigenvalues =", fmt(w), " (target 9/14, 2/7, 1/14, 0)")
        print("|L_num - L_cf|max  =", np.max(np.abs(l_num - l_cf)))
        print("|L_lem - L_cf|max  =", np.max(np.abs(l_lem - l_cf)))
        print("|K^T A K - I|max   =", np.max(np.abs(k_cf.T @ np.diag(a) @ k_cf - np.eye(4))))
        print("|L^T C L - Lam|max =", np.max(np.abs(l_cf.T @ c @ l_cf - np.diag(LAMBDA))))
        corner = closed_form_l(u, misprinted_corner=True)[0, 3]
        print("zero-mode column spread (corrected, +484u variant):",
              np.ptp(l_cf[:, 3]), abs(corner - l_cf[1, 3]))
        d_num = cubic_coefficients(l_num)
        d_tab = table_coefficients(u)
        print("d (from transform) =", fmt(d_num))
        print("|d_table - d_transform|max =", np.max(np.abs(d_tab - d_num)))
        d9_869 = table_coefficients(u, d9_denominator=869.0)[8]
        print("d9: transform", repr(d_num[8]), " table/896", repr(d_tab[8]),
              " table/869", repr(d9_869))

    print("\npublished decimals, u = 0.534105:")
    print(" a ref  [0.00510292, 0.117265, 0.0854008, 0.292231]")
    print(" d ref  [0.0281999, -0.0258437, -0.0777574, -0.0275058, -0.00252349,")
    print("         -0.0306229, 0.0157538, 0.000502655, -0.0089438, 0.028527]")
    print("published decimals, u = 0.826713:")
    print(" a ref  [0.000685158, 0.11239, 0.100269, 0.286656]")
    print(" d ref  [0.0352657, -0.0272316, -0.0743155, -0.0366184, -0.00260064,")
    print("         -0.0337877, 0.0181144, 0.000760425, -0.0105601, 0.023904]")


if __name__ == "__main__":
    main()
