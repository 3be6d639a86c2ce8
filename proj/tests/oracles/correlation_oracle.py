#!/usr/bin/env python3
"""Freezes correlation coefficients computed exactly from textbook formulas.

Run from the repository root:  python3 tests/oracles/correlation_oracle.py
Writes tests/golden/correlations.json.

Coefficients use exact rational arithmetic (Fraction) and a 60-digit
square root, so each stored value is the correctly rounded double:
  Pearson   sum(dx*dy) / sqrt(sum(dx^2) * sum(dy^2))
  Spearman  Pearson on mid-ranks
  tau-b     (C - D) / sqrt((n0 - n1) * (n0 - n2)) by O(n^2) pair counting
p-values come from scipy distributions applied to the same statistics.
"""
import json
import pathlib
import random
from fractions import Fraction

import mpmath
from scipy import stats

ROOT = pathlib.Path(__file__).resolve().parents[2]
mpmath.mp.dps = 60


def exact_ratio_sqrt(num, den_sq):
    """num / sqrt(den_sq) for Fractions, correctly rounded to double."""
    if den_sq == 0:
        return None
    v = mpmath.mpf(num.numerator) / mpmath.mpf(num.denominator)
    d = mpmath.sqrt(mpmath.mpf(den_sq.numerator) / mpmath.mpf(den_sq.denominator))
    return float(v / d)


def pearson(x, y):
    n = len(x)
    xs = [Fraction(v) for v in x]
    ys = [Fraction(v) for v in y]
    mx = sum(xs) / n
    my = sum(ys) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
    sxx = sum((a - mx) ** 2 for a in xs)
    syy = sum((b - my) ** 2 for b in ys)
    if sxx == 0 or syy == 0:
        return None
    return exact_ratio_sqrt(sxy, sxx * syy)


def mid_ranks(v):
    out = []
    for a in v:
        less = sum(1 for b in v if b < a)
        equal = sum(1 for b in v if b == a)
        out.append(Fraction(2 * less + equal + 1, 2))
    return out


def tau_b(x, y):
    n = len(x)
    c = d = tx = ty = 0
    for i in range(n):
        for j in range(i + 1, n):
            sx = (x[i] > x[j]) - (x[i] < x[j])
            sy = (y[i] > y[j]) - (y[i] < y[j])
            if sx == 0:
                tx += 1
            if sy == 0:
                ty += 1
            if sx * sy > 0:
                c += 1
            elif sx * sy < 0:
                d += 1
    n0 = n * (n - 1) // 2
    if n0 == tx or n0 == ty:
        return None
    return exact_ratio_sqrt(Fraction(c - d), Fraction((n0 - tx) * (n0 - ty)))


def tie_sums(v):
    groups = {}
    for a in v:
        groups[a] = groups.get(a, 0) + 1
    t = [g for g in groups.values()]
    return (
        sum(k * (k - 1) * (2 * k + 5) for k in t),
        sum(k * (k - 1) for k in t),
        sum(k * (k - 1) * (k - 2) for k in t),
    )


def floor_p(p):
    return min(max(p, 2.2250738585072014e-308), 1.0)


def p_values(x, y, r, rho, tau):
    n = len(x)
    out = {}
    if r is not None:
        if abs(r) >= 1:
            out["pearson"] = floor_p(0.0)
        else:
            t = r * ((n - 2) / ((1 - r) * (1 + r))) ** 0.5
            out["pearson"] = floor_p(2 * stats.t.sf(abs(t), n - 2))
    if rho is not None:
        out["spearman"] = floor_p(2 * stats.norm.sf(abs(rho * (n - 1) ** 0.5)))
    if tau is not None:
        vx, t1x, t2x = tie_sums(x)
        vy, t1y, t2y = tie_sums(y)
        var = (n * (n - 1) * (2 * n + 5) - vx - vy) / 18.0 + t2x * t2y / (9.0 * n * (n - 1) * (n - 2)) + t1x * t1y / (
            2.0 * n * (n - 1)
        )
        n0 = n * (n - 1) / 2
        s = tau * ((n0 - t1x / 2) * (n0 - t1y / 2)) ** 0.5
        out["kendall_tau_b"] = floor_p(2 * stats.norm.sf(abs(s / var**0.5)))
    return out


def sample(rng, k):
    n = rng.randint(3, 14)
    kind = k % 4
    if kind == 0:  # concept-set sizes against continuous scores
        x = [rng.randint(3, 5) for _ in range(n)]
        y = [rng.random() * 100 for _ in range(n)]
    elif kind == 1:  # heavy ties on both sides
        x = [rng.randint(3, 5) for _ in range(n)]
        y = [rng.randint(0, 4) * 25.0 for _ in range(n)]
    elif kind == 2:  # continuous both
        x = [rng.gauss(0, 1) for _ in range(n)]
        y = [rng.gauss(0, 1) for _ in range(n)]
    else:  # quarter-step grid
        x = [rng.randint(-8, 8) / 4 for _ in range(n)]
        y = [rng.randint(-8, 8) / 4 for _ in range(n)]
    return [float(v) for v in x], [float(v) for v in y]


def main():
    rng = random.Random(7)
    cases = []
    for k in range(500):
        x, y = sample(rng, k)
        r = pearson(x, y)
        rho = pearson(mid_ranks(x), mid_ranks(y))
        tau = tau_b(x, y)
        cases.append({"x": x, "y": y, "pearson": r, "spearman": rho, "kendall_tau_b": tau, "p": p_values(x, y, r, rho, tau)})
    cases.append({"x": [1.0, 2.0, 3.0], "y": [5.0, 5.0, 5.0], "pearson": None, "spearman": None, "kendall_tau_b": None, "p": {}})
    path = ROOT / "tests/golden/correlations.json"
    path.write_text(json.dumps(cases) + "\n")
    print(f"wrote {len(cases)} cases to {path}")


if __name__ == "__main__":
    main()
