"""Independent brute-force oracles used by the tests.

Nothing here calls into the algorithms under test beyond reading public data
(coordinates, terms); the arithmetic is redone from scratch.
"""

from __future__ import annotations

import cmath
import itertools
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple


# -- Z[rho] as polynomials modulo the p-th cyclotomic polynomial ---------------


def cyclo_reduce(poly: Sequence[int], p: int) -> Tuple[int, ...]:
    """Remainder of an integer polynomial (low degree first) by 1 + t + ... + t^(p-1)."""
    r = list(poly) + [0] * max(0, p - 1 - len(poly))
    for deg in range(len(r) - 1, p - 2, -1):
        c = r[deg]
        if c:
            # subtract c * t^(deg-p+1) * Phi_p
            for k in range(p):
                r[deg - p + 1 + k] -= c
    return tuple(r[: p - 1])


def poly_mul(f: Sequence[int], g: Sequence[int]) -> List[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def zeta(p: int, k: int = 1) -> complex:
    return cmath.exp(2j * cmath.pi * k / p)


def cyc_value(coords: Sequence[int], p: int, k: int = 1) -> complex:
    z = zeta(p, k)
    return sum(c * z ** i for i, c in enumerate(coords))


# -- the symbol algebra as p x p complex matrices ------------------------------
#
# x -> a * diag(z^-i), y -> b * (cyclic shift): then y x = z x y, x^p = a^p, y^p = b^p.


Matrix = List[List[complex]]


def mat_zero(n: int) -> Matrix:
    return [[0j] * n for _ in range(n)]


def mat_id(n: int) -> Matrix:
    m = mat_zero(n)
    for i in range(n):
        m[i][i] = 1 + 0j
    return m


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A: Matrix, c: complex) -> Matrix:
    return [[c * a for a in row] for row in A]


def mat_trace(A: Matrix) -> complex:
    return sum(A[i][i] for i in range(len(A)))


def gen_x(p: int, a: complex) -> Matrix:
    m = mat_zero(p)
    for i in range(p):
        m[i][i] = a * zeta(p, -i)
    return m


def gen_y(p: int, b: complex) -> Matrix:
    m = mat_zero(p)
    for i in range(p):
        m[(i + 1) % p][i] = b
    return m


def mat_pow(A: Matrix, n: int) -> Matrix:
    out = mat_id(len(A))
    for _ in range(n):
        out = mat_mul(out, A)
    return out


def element_matrix(e, a: complex, b: complex) -> Matrix:
    """Matrix image of an AlgElement with alpha = a^p, beta = b^p."""
    p = e.ctx.p
    X, Y = gen_x(p, a), gen_y(p, b)
    out = mat_zero(p)
    for (i, j), cp in e.terms.items():
        scalar = sum(cyc_value(c.coords, p) * (a ** p) ** s * (b ** p) ** t for (s, t), c in cp.terms.items())
        out = mat_add(out, mat_scale(mat_mul(mat_pow(X, i), mat_pow(Y, j)), scalar))
    return out


def mat_close(A: Matrix, B: Matrix, tol: float = 1e-6) -> bool:
    scale = 1.0 + max(abs(v) for row in A + B for v in row)
    return all(abs(x - y) <= tol * scale for ra, rb in zip(A, B) for x, y in zip(ra, rb))


def arrangements(mults: Sequence[int]) -> List[Tuple[int, ...]]:
    letters = [k for k, m in enumerate(mults) for _ in range(m)]
    return sorted(set(itertools.permutations(letters)))


def sym_product_matrix(mats: Sequence[Matrix], mults: Sequence[int]) -> Matrix:
    n = len(mats[0])
    out = mat_zero(n)
    for word in arrangements(mults):
        prod = mat_id(n)
        for k in word:
            prod = mat_mul(prod, mats[k])
        out = mat_add(out, prod)
    return out


# -- quantum plane words ------------------------------------------------------


def qp_word_product(letters: Sequence[Tuple[int, int]], p: int) -> Tuple[Tuple[int, int], int]:
    """Normal order a product of monomials X^a Y^b: returns ((i, j), e) meaning rho^e X^i Y^j.

    Each Y passing an X to its right picks up a factor rho (YX = rho XY).
    """
    e = 0
    i = j = 0
    for a, b in letters:
        e += j * a  # Y^j X^a = rho^(j a) X^a Y^j
        i += a
        j += b
    return (i, j), e % p


def monomial_sym_coeff_oracle(monos: Sequence[Tuple[int, int]], mults: Sequence[int], p: int) -> Tuple[int, ...]:
    """Coordinates of c with the sum of all arrangements = c * (ordered product)."""
    ordered = [monos[k] for k, m in enumerate(mults) for _ in range(m)]
    _, e0 = qp_word_product(ordered, p)
    cyc = [0] * p
    for word in arrangements(mults):
        _, e = qp_word_product([monos[k] for k in word], p)
        cyc[(e - e0) % p] += 1
    return cyclo_reduce(cyc, p)


def multinomial(mults: Sequence[int]) -> int:
    out = factorial(sum(mults))
    for m in mults:
        out //= factorial(m)
    return out


# -- zero sums ----------------------------------------------------------------


def brute_min_zero_sum(p: int, gens: Sequence[Tuple[int, int]]) -> Optional[Tuple[int, ...]]:
    """Lexicographically least multiplicity vector (over sorted gens) of minimal weight < p summing to 0."""
    gens = sorted(gens)
    n = len(gens)
    for w in range(1, p):
        best = None
        for mult in _compositions(w, n):
            a = sum(m * g[0] for m, g in zip(mult, gens)) % p
            b = sum(m * g[1] for m, g in zip(mult, gens)) % p
            if a == 0 and b == 0 and (best is None or mult < best):
                best = mult
        if best is not None:
            return best
    return None


def _compositions(w: int, n: int):
    if n == 0:
        if w == 0:
            yield ()
        return
    if n == 1:
        yield (w,)
        return
    for first in range(w + 1):
        for rest in _compositions(w - first, n - 1):
            yield (first,) + rest


def brute_is_kummer(p: int, gens: Sequence[Tuple[int, int]]) -> bool:
    return brute_min_zero_sum(p, gens) is None


def brute_maximal_kummer_sets(p: int) -> List[Tuple[Tuple[int, int], ...]]:
    """All inclusion-maximal Kummer sets, grown level by level from singletons."""
    vecs = sorted((a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0))
    level = {(v,) for v in vecs}
    maximal = []
    while level:
        nxt = set()
        for s in level:
            grown = False
            for v in vecs:
                if v in s:
                    continue
                t = tuple(sorted(s + (v,)))
                if t in nxt:
                    grown = True
                    continue
                if brute_is_kummer(p, t):
                    nxt.add(t)
                    grown = True
            if not grown:
                maximal.append(s)
        level = nxt
    return sorted(maximal)
