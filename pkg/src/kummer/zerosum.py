"""Congruence criteria for monomial Kummer spaces.

A monomial x^a y^b is recorded by its exponent vector (a, b) in (Z/p)^2.  A set
of such monomials spans a Kummer space of the generic algebra exactly when no
nonempty nonnegative combination of total weight < p sums to (0, 0): the
symmetric product of such a tuple is a nonzero multiple of a central monomial,
hence has nonzero trace, and every other symmetric product of weight < p is a
multiple of a non-central monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .cyclotomic import as_ctx

INF = float("inf")


class InvalidVectors(ValueError):
    def __init__(self, index: int, message: str) -> None:
        self.index = index
        super().__init__(message)


class Vec2p(NamedTuple):
    a: int
    b: int


def vec(ctx, a: int, b: int) -> Vec2p:
    p = as_ctx(ctx).p
    return Vec2p(a % p, b % p)


def res(ctx, n: int) -> int:
    return n % as_ctx(ctx).p


@dataclass(frozen=True)
class ZeroSumWitness:
    multiplicities: Tuple[Tuple[Vec2p, int], ...]

    @property
    def weight(self) -> int:
        return sum(m for _, m in self.multiplicities)

    def as_dict(self) -> dict:
        return dict(self.multiplicities)


@dataclass(frozen=True)
class MonomialVerdict:
    is_kummer: bool
    witness: Optional[ZeroSumWitness] = None

    def __bool__(self) -> bool:
        return self.is_kummer


def validate_vectors(ctx, vectors: Iterable[Sequence[int]]) -> List[Vec2p]:
    """Reduce mod p and reject zero or repeated vectors (reported by input index)."""
    p = as_ctx(ctx).p
    out: List[Vec2p] = []
    seen = {}
    for i, v in enumerate(vectors):
        w = Vec2p(v[0] % p, v[1] % p)
        if w == (0, 0):
            raise InvalidVectors(i, f"vector {i} is zero mod {p} (a central monomial)")
        if w in seen:
            raise InvalidVectors(i, f"vector {i} duplicates vector {seen[w]} mod {p}")
        seen[w] = i
        out.append(w)
    return out


def collinear(ctx, u: Sequence[int], v: Sequence[int]) -> bool:
    """u and v span the same line through the origin (assumes both nonzero)."""
    p = as_ctx(ctx).p
    return (u[0] * v[1] - u[1] * v[0]) % p == 0


def weight_table(p: int, gens: Sequence[Vec2p]) -> list:
    """Minimal weight (< p) of a nonnegative combination reaching each sum; INF if none."""
    table = [INF] * (p * p)
    table[0] = 0
    for g in gens:
        table = extend_table(p, table, g)
    return table


def extend_table(p: int, table: list, g: Sequence[int]) -> list:
    """Weight table after allowing any number of extra copies of ``g``."""
    ga, gb = g
    new = list(table)
    for idx, w in enumerate(table):
        if w >= p - 1:
            continue
        a, b = divmod(idx, p)
        for j in range(1, p - w):
            a = (a + ga) % p
            b = (b + gb) % p
            k = a * p + b
            if w + j < new[k]:
                new[k] = w + j
    return new


def addable(p: int, table: list, g: Sequence[int]) -> bool:
    """No zero sum of weight < p uses g, given the set behind ``table`` has none."""
    ga, gb = g
    for j in range(1, p):
        k = ((-j * ga) % p) * p + (-j * gb) % p
        if table[k] + j < p:
            return False
    return True


def min_zero_sum(ctx, vectors: Iterable[Sequence[int]]) -> Optional[ZeroSumWitness]:
    """Minimal-weight nonempty zero-sum combination of weight < p, if any.

    Among the minimal-weight witnesses the lexicographically least multiplicity
    vector (generators in sorted order) is returned.  Uses suffix tables of
    minimal weights over the p^2 sum states.
    """
    ctx = as_ctx(ctx)
    p = ctx.p
    gens = sorted(validate_vectors(ctx, vectors))
    n = len(gens)
    # suffix[j][s]: minimal weight of a possibly empty combination of gens[j:] summing to s
    suffix = [None] * (n + 1)
    suffix[n] = [INF] * (p * p)
    suffix[n][0] = 0
    for j in range(n - 1, -1, -1):
        suffix[j] = extend_table(p, suffix[j + 1], gens[j])
    # nonempty[j]: minimal weight of a nonempty zero sum from gens[j:]
    nonempty = [INF] * (n + 1)
    for j in range(n - 1, -1, -1):
        ga, gb = gens[j]
        here = min(m + suffix[j + 1][((-m * ga) % p) * p + (-m * gb) % p] for m in range(1, p))
        nonempty[j] = min(here, nonempty[j + 1])
    best = nonempty[0]
    if best >= p:
        return None

    # Least multiplicity vector of weight `best`, chosen coordinate by coordinate.
    mult = [0] * n
    a = b = 0
    remaining = best
    started = False
    for j, (ga, gb) in enumerate(gens):
        for m in range(remaining + 1):
            na, nb = (a + m * ga) % p, (b + m * gb) % p
            if started or m > 0:
                rest = suffix[j + 1][((-na) % p) * p + (-nb) % p]
            else:
                rest = nonempty[j + 1]
            if m + rest == remaining:
                break
        else:
            raise AssertionError("zero-sum reconstruction failed")  # pragma: no cover
        mult[j] = m
        a, b = na, nb
        remaining -= m
        started = started or m > 0
    if remaining or (a, b) != (0, 0):
        raise AssertionError("zero-sum reconstruction failed")  # pragma: no cover
    return ZeroSumWitness(tuple((g, m) for g, m in zip(gens, mult) if m))


def is_kummer_monomial(ctx, vectors: Iterable[Sequence[int]]) -> MonomialVerdict:
    w = min_zero_sum(ctx, vectors)
    return MonomialVerdict(w is None, w)


def dim3_residue_witness(ctx, a: int, b: int) -> Optional[int]:
    """Least invertible k with res(ka) + res(kb) + res(-k) < p.

    Such a k exists iff Fx + Fy + Fx^a y^b is not Kummer.
    """
    ctx = as_ctx(ctx)
    p = ctx.p
    a, b = a % p, b % p
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero mod p")
    for k in range(1, p):
        if (k * a) % p + (k * b) % p + (-k) % p < p:
            return k
    return None


def dim4_witness(ctx, v1: Sequence[int], v2: Sequence[int]) -> Optional[Tuple[int, int]]:
    """Least (m, l) in row-major order over [0, p)^2 with
    0 < res(am + cl) + res(bm + dl) + res(-m) + res(-l) < p,  where v1 = (a, b), v2 = (c, d).
    """
    ctx = as_ctx(ctx)
    p = ctx.p
    a, b = v1[0] % p, v1[1] % p
    c, d = v2[0] % p, v2[1] % p
    if (a, b) == (0, 0) or (c, d) == (0, 0):
        raise ValueError("vectors must be nonzero")
    for m in range(p):
        for l in range(p):
            s = (a * m + c * l) % p + (b * m + d * l) % p + (-m) % p + (-l) % p
            if 0 < s < p:
                return (m, l)
    return None


def index_witness(ctx, a: int, b: int, c: int) -> Optional[int]:
    """Least invertible k with res(ka) + res(kb) + res(kc) < p."""
    p = as_ctx(ctx).p
    for k in range(1, p):
        if (k * a) % p + (k * b) % p + (k * c) % p < p:
            return k
    return None


def admissible_triple(ctx, a: int, b: int, c: int) -> bool:
    """No zero entry, no two entries summing to zero, nonzero total."""
    p = as_ctx(ctx).p
    a, b, c = a % p, b % p, c % p
    if 0 in (a, b, c):
        return False
    if (a + b) % p == 0 or (b + c) % p == 0 or (a + c) % p == 0:
        return False
    return (a + b + c) % p != 0
