"""Slow, loop-based reference implementations used as test oracles.

Nothing here shares code with the package: every quantity is evaluated from
its definition with explicit loops over windows.
"""

import math


def mean(xs):
    return math.fsum(xs) / len(xs)


def ap_brute(w, p):
    best = -math.inf
    for n in range(1, len(w) + 1):
        win = w[:n]
        q = mean(win) * mean([x ** (-1.0 / (p - 1.0)) for x in win]) ** (p - 1.0)
        best = max(best, q)
    return best


def ainf_brute(w):
    best = -math.inf
    for n in range(1, len(w) + 1):
        win = w[:n]
        best = max(best, mean(win) * math.exp(mean([-math.log(x) for x in win])))
    return best


def maximal_brute(f):
    N = len(f)
    return [max(mean(f[:m]) for m in range(n, N + 1)) for n in range(1, N + 1)]


def hardy_brute(f):
    return [mean(f[:n]) for n in range(1, len(f) + 1)]


def weighted_maximal_brute(f, w):
    N = len(f)
    out = []
    for n in range(1, N + 1):
        out.append(max(math.fsum(w[s] * f[s] for s in range(m)) / math.fsum(w[:m])
                       for m in range(n, N + 1)))
    return out


def a1_brute(w):
    Mw = maximal_brute(w)
    return max(m / x for m, x in zip(Mw, w))


def bp_brute(w, p):
    N = len(w)
    best = -math.inf
    for n in range(1, N + 1):
        tail = math.fsum(w[k - 1] / k ** p for k in range(n, N + 1))
        best = max(best, n ** p * tail / math.fsum(w[:n]))
    return best


def lp(f, w, p):
    return math.fsum(wk * abs(fk) ** p for fk, wk in zip(f, w)) ** (1.0 / p)


def maximal_norm_n2_grid(w, p, points=20001, rounds=6):
    """Norm of M on l_p(w) at N = 2 by 1-D grid refinement over the angle."""
    def ratio(t):
        f = [math.cos(t), math.sin(t)]
        return lp(maximal_brute(f), w, p) / lp(f, w, p)

    lo, hi = 0.0, math.pi / 2
    best_t = 0.0
    for _ in range(rounds):
        step = (hi - lo) / (points - 1)
        ts = [lo + i * step for i in range(points)]
        best_t = max(ts, key=ratio)
        lo, hi = max(0.0, best_t - 2 * step), min(math.pi / 2, best_t + 2 * step)
    return ratio(best_t)
