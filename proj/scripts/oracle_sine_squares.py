#!/usr/bin/env python3
"""Independent numpy evaluation of the sine problem on an n x n square grid.

Used once to produce the frozen error values asserted in
tests/test_analysis.cpp; also prints a linear-FEM result on the
triangulated grid as a plausibility check of the magnitudes.

    python3 scripts/oracle_sine_squares.py 8
"""

import sys

import numpy as np

PI = np.pi
u = lambda x, y: np.sin(PI * x) * np.sin(PI * y)
grad_u = lambda x, y: np.array([PI * np.cos(PI * x) * np.sin(PI * y),
                                PI * np.sin(PI * x) * np.cos(PI * y)])
f = lambda x, y: 2 * PI**2 * u(x, y)

# Radon degree-5 rule (barycentric, weight)
RULE = [((1 / 3, 1 / 3, 1 / 3), 0.225)]
for a, b, w in ((0.059715871789769820, 0.470142064105115090, 0.132394152788506181),
                (0.797426985353087322, 0.101286507323456339, 0.125939180544827153)):
    RULE += [((a, b, b), w), ((b, a, b), w), ((b, b, a), w)]


def grid(n):
    xs = np.linspace(0, 1, n + 1)
    P = np.array([(x, y) for y in xs for x in xs])
    idx = lambda i, j: j * (n + 1) + i
    cells = [[idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)]
             for j in range(n) for i in range(n)]
    bnd = [k for k, (x, y) in enumerate(P) if min(x, y) == 0 or max(x, y) == 1]
    return P, cells, bnd


def local(P):
    n = len(P)
    area = 0.5 * sum(P[i, 0] * P[(i + 1) % n, 1] - P[(i + 1) % n, 0] * P[i, 1] for i in range(n))
    c = sum((P[i] + P[(i + 1) % n]) * (P[i, 0] * P[(i + 1) % n, 1] - P[(i + 1) % n, 0] * P[i, 1])
            for i in range(n)) / (6 * area)
    h = max(np.linalg.norm(p - q) for p in P for q in P)
    D = np.column_stack([np.ones(n), (P[:, 0] - c[0]) / h, (P[:, 1] - c[1]) / h])
    B = np.zeros((3, n))
    B[0] = 1 / n
    for i in range(n):
        prev, nxt = P[i - 1], P[(i + 1) % n]
        B[1, i] = 0.5 * (nxt[1] - prev[1]) / h
        B[2, i] = 0.5 * (prev[0] - nxt[0]) / h
    Pi = np.linalg.solve(B @ D, B)
    G = np.diag([0, area / h**2, area / h**2])
    S = np.eye(n) - D @ Pi
    return area, c, h, Pi, Pi.T @ G @ Pi + S.T @ S


def fan_integral(P, apex, g):
    total = 0.0
    for i in range(len(P)):
        p, q = P[i], P[(i + 1) % len(P)]
        a = 0.5 * ((p[0] - apex[0]) * (q[1] - apex[1]) - (q[0] - apex[0]) * (p[1] - apex[1]))
        total += a * sum(w * g(*(l0 * apex + l1 * p + l2 * q)) for (l0, l1, l2), w in RULE)
    return total


def solve(P, cells, bnd, element_matrices):
    N = len(P)
    K = np.zeros((N, N))
    F = np.zeros(N)
    for ids, (Ke, fe) in zip(cells, element_matrices):
        K[np.ix_(ids, ids)] += Ke
        F[ids] += fe
    inner = [k for k in range(N) if k not in set(bnd)]
    U = np.zeros(N)
    U[bnd] = [u(*P[k]) for k in bnd]
    U[inner] = np.linalg.solve(K[np.ix_(inner, inner)], F[inner] - K[np.ix_(inner, bnd)] @ U[bnd])
    return U


def vem(n):
    P, cells, bnd = grid(n)
    mats, data = [], []
    for ids in cells:
        area, c, h, Pi, Ke = local(P[ids])
        mats.append((Ke, np.full(len(ids), area / len(ids) * f(*c))))
        data.append((area, c, h, Pi))
    U = solve(P, cells, bnd, mats)
    w = np.zeros(len(P))
    for ids, (area, *_ ) in zip(cells, data):
        w[ids] += area / len(ids)
    err = U - np.array([u(*p) for p in P])
    h1 = 0.0
    for ids, (area, c, h, Pi) in zip(cells, data):
        a = Pi @ U[ids]
        gh = np.array([a[1] / h, a[2] / h])
        h1 += fan_integral(P[ids], c, lambda x, y: np.sum((gh - grad_u(x, y))**2))
    return np.max(np.abs(err)), np.sqrt(np.sum(w * err**2)), np.sqrt(h1)


def fem(n):
    P, cells, bnd = grid(n)
    tris = [t for a, b, c, d in cells for t in ((a, b, c), (a, c, d))]
    mats, grads = [], []
    for t in tris:
        X = P[list(t)]
        M = np.column_stack([np.ones(3), X])
        C = np.linalg.inv(M)  # columns: barycentric coefficient vectors
        gr = C[1:, :].T       # gradient of each hat function
        area = 0.5 * abs(np.linalg.det(M))
        c = X.mean(axis=0)
        mats.append((area * gr @ gr.T, np.full(3, area / 3 * f(*c))))
        grads.append(gr)
    U = solve(P, [list(t) for t in tris], bnd, mats)
    h1 = 0.0
    for t, gr in zip(tris, grads):
        gh = gr.T @ U[list(t)]
        X = P[list(t)]
        h1 += fan_integral(X, X.mean(axis=0), lambda x, y: np.sum((gh - grad_u(x, y))**2))
    return np.sqrt(h1)


if __name__ == "__main__":
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    vmax, vl2, h1 = vem(n)
    print("vem  n=%d vertex_max=%.17g vertex_l2=%.17g h1=%.17g" % (n, vmax, vl2, h1))
    print("fem  n=%d h1=%.17g" % (n, fem(n)))
