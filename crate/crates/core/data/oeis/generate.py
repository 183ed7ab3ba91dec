#!/usr/bin/env python3
"""Regenerate the vendored b-file prefixes offline.

Each entry is produced from its defining formula (or, for A257995, by solving
the published minimal polynomial for its power series root with H(0) = 1).
Run `shrubs oeis-check --id <A-number>` with network access to refresh the
cache from oeis.org and diff against these files.
"""
from math import comb, factorial
from pathlib import Path
import sys

TERMS = 60
HERE = Path(__file__).resolve().parent


def a001764(n):
    return comb(3 * n, n) // (2 * n + 1)


def a002293(n):
    return comb(4 * n, n) // (3 * n + 1)


def a144097(n):
    s = sum(comb(3 * n + 1, n - v) * comb(3 * n + v, v) for v in range(n + 1))
    assert s % (3 * n + 1) == 0
    return s // (3 * n + 1)


def a060941(n):
    from fractions import Fraction
    s = sum(Fraction(comb(5 * n + 1, n - i) * comb(5 * n + 2 * i, i), 5 * n + i + 1) for i in range(n + 1))
    assert s.denominator == 1
    return s.numerator


def a210277(n):
    return factorial(3 * n) // 3 ** n


# coefficient lists (constant term first) of x^0.. for each even power of H
MINPOLY = {
    0: [1, 4, 4],
    2: [-1, 54, -8, 24, -1],
    4: [0, -54, -71, 24, 15],
    6: [0, 0, -360, 2, -215, 18],
    8: [0, 0, 729, 162, -213, -228, 3],
    10: [0, 0, 0, 0, 1053, 354, -138],
    12: [0, 0, 0, 0, 0, 486, 751, -36],
    14: [0, 0, 0, 0, 0, 0, 54, 420, -3],
    16: [0] * 8 + [123],
    18: [0] * 9 + [18],
    20: [0] * 10 + [1],
}


def mul(a, b, m):
    out = [0] * m
    for i, x in enumerate(a[:m]):
        if x:
            for j, y in enumerate(b[: m - i]):
                out[i + j] += x * y
    return out


def residual(h, m):
    h2 = mul(h, h, m)
    power = [1] + [0] * (m - 1)
    total = [0] * m
    for e in range(0, 21, 2):
        term = mul(MINPOLY[e], power, m)
        total = [t + u for t, u in zip(total, term)]
        power = mul(power, h2, m)
    return total


def a257995_terms(count):
    h = [1] + [0] * (count - 1)
    for n in range(1, count):
        r = residual(h, n + 1)[n]
        # d/dH at (x=0, H=1) is -2, so the order-n residual is r - 2 h_n
        assert r % 2 == 0
        h[n] = r // 2
    assert all(c == 0 for c in residual(h, count))
    return h


def write(name, offset, values, note):
    lines = [f"# {name}: vendored prefix, {note}"]
    lines += [f"{offset + i} {v}" for i, v in enumerate(values)]
    (HERE / f"{name}.txt").write_text("\n".join(lines) + "\n")


def main():
    write("A001764", 0, [a001764(n) for n in range(TERMS)], "a(n) = binomial(3n,n)/(2n+1)")
    write("A002293", 0, [a002293(n) for n in range(TERMS)], "a(n) = binomial(4n,n)/(3n+1)")
    write("A144097", 0, [a144097(n) for n in range(TERMS)],
          "a(n) = Sum_v binomial(3n+1,n-v) binomial(3n+v,v)/(3n+1)")
    write("A060941", 0, [a060941(n) for n in range(TERMS)], "Duchon's numbers")
    write("A210277", 0, [a210277(n) for n in range(TERMS)], "a(n) = (3n)!/3^n")
    write("A257995", 0, a257995_terms(TERMS), "power series root of the published minimal polynomial")


if __name__ == "__main__":
    sys.exit(main())
