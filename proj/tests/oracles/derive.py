#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Independent reference values frozen into the C++ tests.

Plain numpy re-derivations; nothing here calls the library.
Run: python3 tests/oracles/derive.py
"""
import numpy as np


def clamp(x, lo, hi):
    return np.minimum(np.maximum(x, lo), hi)


def saddle_op(u, v):
    # Gamma(u, v) = uv + u + v
    return np.array([v + 1.0, -u - 1.0])


def prox(x, c, w, lam, lo=0.0, hi=1.0):
    return clamp((x + lam * w * c) / (1 + lam * w), lo, hi)


def fbf_iterates(x0, c, w, steps, lam_of, beta_of):
    x = np.array(x0, float)
    out = [x.copy()]
    for n in range(1, steps + 1):
        lam, beta = lam_of(n), beta_of(n)
        lb = lam * beta
        bx = saddle_op(*x)
        y = prox(x - lb * bx, c, w, lam)
        x = y + lb * (bx - saddle_op(*y))
        out.append(x.copy())
    return out


def vi_solve(a_fn, x, lam, lo, hi, iters=200000):
    # extragradient on z -> lam*A z + z - x
    z = clamp(x, lo, hi)
    t = 0.1
    for _ in range(iters):
        f = lam * a_fn(z) + z - x
        zh = clamp(z - t * f, lo, hi)
        z = clamp(z - t * (lam * a_fn(zh) + zh - x), lo, hi)
    return z


def conj_brute(p, q, beta, n=2001):
    s, t = 2 * p / beta, 2 * q / beta
    ys = np.linspace(0.0, 1.0, n)
    first = np.max(s * ys - (2 * ys + 1))      # Gamma(y, 1) = 2y + 1
    second = np.max(t * ys + ys)               # -Gamma(0, y) = -y
    return first, second, t


def main():
    np.set_printoptions(precision=17)
    print("spectral [[3,-1],[-1,3]]:", np.linalg.norm([[3, -1], [-1, 3]], 2))
    m = np.array([[1.0, 2.0, 0.0], [0.5, -1.0, 3.0]])
    print("spectral 2x3:", repr(np.linalg.norm(m, 2)))

    print("prox (1,1):", prox(np.array([1.0, 1.0]), np.array([0.3, 0.7]), 1.0, 1.0))

    # affine resolvent: A1 u = 2u + 1, A2 v = v - 0.5 on [-1,1]^2, lambda 0.5
    a = lambda z: np.array([2 * z[0] + 1, z[1] - 0.5])
    z = vi_solve(a, np.array([0.8, 3.0]), 0.5, -1.0, 1.0)
    print("paired resolvent:", repr(z))

    it = fbf_iterates([0.5, 0.5], np.array([0.5, 0.5]), 1.0, 5,
                      lambda n: 0.9 / (1 + np.sqrt(n)), lambda n: 1 + np.sqrt(n))
    for k, x in enumerate(it):
        print("growing x_%d:" % (k + 1), repr(x))

    for beta in (0.5, 1.0, 10.0):
        worst = 0.0
        for p in np.linspace(-3 * beta, 3 * beta, 20):
            for q in np.linspace(-3 * beta, 3 * beta, 20):
                f, s, sig = conj_brute(p, q, beta)
                cf = 2 * p / beta - 3 if p > beta else -1.0
                cs = 1 + 2 * q / beta if q > -beta / 2 else 0.0
                worst = max(worst, abs((f + s - sig) - (cf + cs - sig)))
        print("conjugate brute-force gap beta=%g: %.3g" % (beta, worst))

    n = np.arange(1, 10**6 + 1, dtype=float)
    print("2*sum 1/n^2 to 1e6:", repr(2 * np.sum(1.0 / n[::-1] ** 2)))
    print("pi^2/3:", repr(np.pi**2 / 3))

    # h at (0.5, 0.5), lambda*beta = 0.5, g = 0
    x = np.array([0.5, 0.5])
    bx = saddle_op(*x)
    y = clamp(x - 0.5 * bx, 0.0, 1.0)
    print("h:", y - x + 0.5 * (bx - saddle_op(*y)))


if __name__ == "__main__":
    main()
