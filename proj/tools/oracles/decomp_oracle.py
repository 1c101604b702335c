#!/usr/bin/env python3
"""Independent oracle for the bounded-integer decomposition constants.

Computes, straight from the defining formulas and without touching the C++
implementation:
  delta(B) = floor(log2(B)) + 1
  B_j      = floor((B + 2^(j-1)) / 2^j)   for j = 1..delta(B)
and checks sum(B_j) == B.  Also emits greedy ternary decompositions for a few
hand-picked values.  The printed values are frozen into the unit tests.
"""
import math
import sys


def delta(B: int) -> int:
    return int(math.floor(math.log2(B))) + 1


def weights(B: int):
    return [(B + 2 ** (j - 1)) // 2 ** j for j in range(1, delta(B) + 1)]


def decompose(v: int, B: int):
    # greedy on |v|, digits negated for negative v
    assert abs(v) <= B
    w = weights(B)
    rem = abs(v)
    digits = []
    for bj in w:
        if rem >= bj:
            digits.append(1)
            rem -= bj
        else:
            digits.append(0)
    assert rem == 0, (v, B, digits)
    if v < 0:
        digits = [-d for d in digits]
    assert sum(b * d for b, d in zip(w, digits)) == v
    return digits


def main():
    for B in (2, 3, 52, 2458):
        w = weights(B)
        ok = sum(w) == B
        print(f"B={B} delta={delta(B)} weights={w} sum={sum(w)} ok={ok}")
    # exhaustive round-trip sanity for small bounds
    for B in range(1, 65):
        for v in range(-B, B + 1):
            decompose(v, B)
    print("exhaustive round-trip for B in [1,64]: ok")
    print("decompose(2, B=2)  =", decompose(2, 2))
    print("decompose(0, B=2)  =", decompose(0, 2))
    print("decompose(-5, B=7) =", decompose(-5, 7))
    print("decompose(52, B=52)=", decompose(52, 52))
    return 0


if __name__ == "__main__":
    sys.exit(main())
