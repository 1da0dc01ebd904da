#!/usr/bin/env python3
"""Recompute the frozen Fibonacci recurrence goldens by direct scanning.

Kept independent of the C++ library: plain string slicing, dictionaries of
last positions, and explicit orbit following for the permutation trace.
Usage: derive_goldens.py <outdir>
"""
import sys
from fractions import Fraction
from itertools import permutations

WINDOW = 100_000
BASE_NMAX = 20
NMAX = 15
TAIL_FROM = 10
WORD = "1001"


def fibonacci(length):
    x = "0"
    while len(x) < length:
        x = "".join("01" if c == "0" else "0" for c in x)
    return x[:length]


def base_profile(x, nmax):
    rows = []
    for n in range(1, nmax + 1):
        last, gap = {}, 0
        for i in range(len(x) - n + 1):
            u = x[i:i + n]
            if u in last:
                gap = max(gap, i - last[u])
            last[u] = i
        rows.append((n, gap, Fraction(gap, n)))
    return rows


def speedup_profile(x, p, nmax):
    # Constant jump: the S-orbits are the residue classes mod p and a length-n
    # S-pattern is the sigma-word x[i, i+np) covered by n steps.
    rows = []
    for n in range(1, nmax + 1):
        span = n * p
        gap = 0
        for r in range(p):
            last = {}
            for t, i in enumerate(range(r, len(x) - span + 1, p)):
                u = x[i:i + span]
                if u in last:
                    gap = max(gap, t - last[u])
                last[u] = t
        rows.append((n, gap, Fraction(gap, n)))
    return rows


def compose(a, b):  # left to right: first a, then b
    return tuple(b[a[i]] for i in range(len(a)))


def l_star(x, p, w):
    starts = [i for i in range(len(x) - len(w) + 1) if x.startswith(w, i)]
    usable = [s for s in starts if s + p <= len(x)]
    # entry block [s, s+p): one slot per residue class, ordered by position
    def slots(s):
        return [s + j for j in range(p)]
    cum = [tuple(range(p))]
    for a, b in zip(usable, usable[1:]):
        here, there = slots(a), slots(b)
        images = tuple(next(k for k, q in enumerate(there) if q % p == here[j] % p) for j in range(p))
        cum.append(compose(cum[-1], images))
    best = Fraction(0)
    for g in set(permutations(range(p))):
        visits = [usable[k] for k, c in enumerate(cum) if c == g]
        gaps = [b - a for a, b in zip(visits, visits[1:])]
        if gaps:
            best = max(best, Fraction(max(gaps), len(w)))
    return best


def csv(rows):
    out = "n,max_gap,ratio_num,ratio_den\n"
    for n, gap, r in rows:
        out += f"{n},{gap},{r.numerator},{r.denominator}\n"
    return out


def ratio(f):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def main(outdir):
    x = fibonacci(WINDOW)
    base = base_profile(x, BASE_NMAX)
    with open(f"{outdir}/fib_base_profile.csv", "w") as f:
        f.write(csv(base))
    for p in (2, 3):
        sp = speedup_profile(x, p, NMAX)
        with open(f"{outdir}/fib_p{p}_speedup_profile.csv", "w") as f:
            f.write(csv(sp))
        with open(f"{outdir}/fib_p{p}_lrscan.txt", "w") as f:
            f.write(f"# fibonacci fixed point, constant jump {p}\n")
            f.write(f"window {WINDOW}\nnmax {NMAX}\nbase_nmax {BASE_NMAX}\ntail_from {TAIL_FROM}\nword {WORD}\n")
            f.write(f"base_max_ratio {ratio(max(r for _, _, r in base))}\n")
            f.write(f"speedup_max_ratio {ratio(max(r for _, _, r in sp))}\n")
            f.write(f"speedup_tail_max_ratio {ratio(max(r for n, _, r in sp if n >= TAIL_FROM))}\n")
            f.write(f"l_star {ratio(l_star(x, p, WORD))}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
