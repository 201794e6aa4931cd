#!/usr/bin/env python3
"""Search Z[theta] for small multiplicatively independent units.

Used to produce the `units` lists of the shipped platform fixtures. Candidates
are sparse polynomials in theta with small coefficients; a candidate is kept
when its norm is +-1 (checked exactly with a resultant) and it raises the rank
of the logarithmic embedding matrix. The search stops at the unit rank s+t-1.

    python3 tools/find_units.py "1,-1,0,1"   # coefficients, constant term first, monic implied
"""
import itertools
import sys

import mpmath
import numpy as np
import sympy

mpmath.mp.dps = 80


def roots_of(coeffs):
    # coeffs: c_0..c_{n-1}, monic
    poly = [1] + list(reversed(coeffs))
    return mpmath.polyroots(poly, maxsteps=400, extraprec=400)


def split_roots(roots):
    real, cplx = [], []
    for r in roots:
        if abs(mpmath.im(r)) < mpmath.mpf(10) ** -40:
            real.append(mpmath.re(r))
        elif mpmath.im(r) > 0:
            cplx.append(r)
    return real, cplx


def evaluate(vec, r):
    return sum(mpmath.mpf(c) * r ** i for i, c in enumerate(vec))


def log_vector(vec, real, cplx):
    out = [float(mpmath.log(abs(evaluate(vec, r)))) for r in real]
    out += [2.0 * float(mpmath.log(abs(evaluate(vec, r)))) for r in cplx]
    return out


def exact_norm(coeffs, vec):
    x = sympy.Symbol("x")
    f = x ** len(coeffs) + sum(c * x ** i for i, c in enumerate(coeffs))
    a = sum(c * x ** i for i, c in enumerate(vec))
    return sympy.resultant(f, a, x)


def candidates(n, max_terms, values):
    for terms in range(1, max_terms + 1):
        for pos in itertools.combinations(range(n), terms):
            for vals in itertools.product(values, repeat=terms):
                if vals[0] < 0:
                    continue
                vec = [0] * n
                for p, v in zip(pos, vals):
                    vec[p] = v
                yield vec


def search(coeffs, max_terms=4, values=(1, -1, 2, -2, 3, -3)):
    n = len(coeffs)
    roots = roots_of(coeffs)
    real, cplx = split_roots(roots)
    s, t = len(real), len(cplx)
    rank_target = s + t - 1
    chosen, logs = [], []
    fast_roots = np.array([complex(r) for r in roots])
    powers = np.vstack([fast_roots ** i for i in range(n)])
    for vec in candidates(n, max_terms, values):
        if len(chosen) == rank_target:
            break
        approx = np.sum(np.log(np.abs(np.array(vec, dtype=float) @ powers)))
        if abs(approx) > 1e-6:
            continue
        norm = mpmath.fprod(evaluate(vec, r) for r in roots)
        if abs(abs(norm) - 1) > mpmath.mpf(10) ** -20:
            continue
        lv = log_vector(vec, real, cplx)[:rank_target]
        trial = np.array(logs + [lv])
        if np.linalg.matrix_rank(trial, tol=1e-8) == len(chosen) + 1:
            if abs(exact_norm(coeffs, vec)) != 1:
                continue
            chosen.append(vec)
            logs.append(lv)
    return (s, t), chosen


def main():
    coeffs = [int(c) for c in sys.argv[1].split(",")]
    max_terms = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    (s, t), units = search(coeffs, max_terms)
    print(f"signature = [{s}, {t}]  unit rank = {s + t - 1}  found = {len(units)}")
    for u in units:
        print(u)


if __name__ == "__main__":
    main()
