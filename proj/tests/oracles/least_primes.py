"""Least prime at which a set has no k-th power residue, by enumerating x^k mod p.

Independent of the C++ engine: plain Python integers, no Euler criterion.
Excluded primes: primes dividing k, primes in any element's numerator or
denominator, and 2. Output feeds tests/acceptance/frozen_values.hpp.
"""
from fractions import Fraction
from sympy import primerange, primefactors

INSTANCES = [
    (["2", "3", "12"], 3),
    (["2", "4", "8"], 9),
    (["4", "8"], 6),
    (["2", "3"], 2),
    (["2"], 3),
    (["2"], 2),
    (["3"], 2),
    (["5"], 3),
    (["2", "5"], 2),
    (["-1"], 2),
    (["2", "3", "5"], 2),
    (["7", "11"], 3),
    (["2", "3"], 4),
    (["-27", "8"], 6),
    (["3", "5", "15"], 3),
    (["4"], 4),
    (["2", "3", "6", "12"], 5),
    (["2"], 5),
    (["2", "3"], 8),
    (["3/2", "5/7"], 3),
]


def excluded(elems, k):
    out = {2} | set(primefactors(k))
    for x in elems:
        out |= set(primefactors(abs(x.numerator))) | set(primefactors(x.denominator))
    return out


def least_prime(elems, k, bound=10**4):
    ex = excluded(elems, k)
    for p in primerange(3, bound + 1):
        if p in ex:
            continue
        powers = {pow(x, k, p) for x in range(1, p)}
        residues = {(x.numerator * pow(x.denominator, -1, p)) % p for x in elems}
        if not (residues & powers):
            return p
    return None


if __name__ == "__main__":
    for texts, k in INSTANCES:
        elems = [Fraction(t) for t in texts]
        print(f"{{{', '.join(texts)}}} k={k} -> {least_prime(elems, k)}")
