#!/usr/bin/env python3
"""Write a Turaev-Viro constant table as JSON.

Uses q0 = exp(i*pi/r), quantum integers [n] = sin(n*pi/r)/sin(pi/r),
edge weights (-1)^(2j) [2j+1], vertex weight 1 / sum_j [2j+1]^2 and the
tetrahedrally symmetric quantum 6j symbol (Racah formula).

    python3 tools/gen_tv_table.py 3 > crates/core/fixtures/tv_r3.json
"""

import cmath
import itertools
import json
import math
import sys


def qint(n, r):
    return math.sin(n * math.pi / r) / math.sin(math.pi / r)


def qfact(n, r):
    out = 1.0
    for k in range(1, n + 1):
        out *= qint(k, r)
    return out


def admissible(r, a, b, c):
    # arguments are numerators of half-integers
    return (a + b + c) % 2 == 0 and a <= b + c and b <= a + c and c <= a + b and a + b + c <= 2 * (r - 2)


def delta(r, a, b, c):
    # numerators; all combinations below are even
    return math.sqrt(
        qfact((a + b - c) // 2, r) * qfact((a - b + c) // 2, r) * qfact((-a + b + c) // 2, r)
        / qfact((a + b + c) // 2 + 1, r)
    )


def six_j(r, j1, j2, j3, j4, j5, j6):
    tri = [(j1, j2, j3), (j1, j5, j6), (j2, j4, j6), (j3, j4, j5)]
    a = [sum(t) // 2 for t in tri]
    b = [(j1 + j2 + j4 + j5) // 2, (j1 + j3 + j4 + j6) // 2, (j2 + j3 + j5 + j6) // 2]
    total = 0.0
    for z in range(max(a), min(b) + 1):
        den = 1.0
        for x in a:
            den *= qfact(z - x, r)
        for y in b:
            den *= qfact(y - z, r)
        total += (-1) ** z * qfact(z + 1, r) / den
    pref = 1.0
    for t in tri:
        pref *= delta(r, *t)
    phase = 1j ** (-(j1 + j2 + j3 + j4 + j5 + j6))
    return phase * pref * total


def half(n):
    return str(n // 2) if n % 2 == 0 else f"{n}/2"


def pair(z):
    z = complex(z)
    return [z.real, z.imag]


def main():
    r = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    colours = range(r - 1)
    beta = {half(j): pair((-1) ** j * qint(j + 1, r)) for j in colours}
    w2 = sum(qint(j + 1, r) ** 2 for j in colours)
    gamma = {}
    for s in itertools.product(colours, repeat=6):
        i, j, k, l, m, n = s
        faces = [(i, j, k), (k, l, m), (i, m, n), (j, l, n)]
        if all(admissible(r, *f) for f in faces):
            gamma[",".join(half(x) for x in s)] = pair(six_j(r, *s))
    table = {
        "r": r,
        "q0": pair(cmath.exp(1j * math.pi / r)),
        "alpha": pair(1 / w2),
        "beta": beta,
        "gamma": gamma,
    }
    json.dump(table, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
