"""Standard monomial spaces, standardness certificates and exhaustive classification.

For monomials w = x^c y^d and z = x^u y^v we have w z = rho^e z w with
e = comm((c, d), (u, v)) = d u - c v (mod p).  The standard space V_k(z) has
monomial basis z together with every w satisfying comm(w, z) = k: an affine line
of p points, so p + 1 vectors, one on each line through the origin.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .cyclotomic import PrimeCtx, as_ctx
from .zerosum import (
    InvalidVectors,
    Vec2p,
    addable,
    collinear,
    extend_table,
    min_zero_sum,
    validate_vectors,
    weight_table,
)

# Largest p for which plain exhaustive enumeration is supported.
EXHAUSTIVE_MAX_PRIME = 7


class CollinearVectors(InvalidVectors):
    pass


class NotKummer(ValueError):
    pass


@dataclass(frozen=True)
class MonomialSpace:
    """A set of exponent vectors with no zero, no repeats and no collinear pair."""

    ctx: PrimeCtx
    vectors: Tuple[Vec2p, ...]

    @classmethod
    def of(cls, ctx, vectors: Iterable[Sequence[int]]) -> MonomialSpace:
        ctx = as_ctx(ctx)
        vs = validate_vectors(ctx, vectors)
        for i, j in itertools.combinations(range(len(vs)), 2):
            if collinear(ctx, vs[i], vs[j]):
                raise CollinearVectors(
                    j, f"vectors {i} and {j} are collinear; such monomials commute and cannot share a Kummer space"
                )
        return cls(ctx, tuple(sorted(vs)))

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[Vec2p]:
        return iter(self.vectors)

    def __contains__(self, v) -> bool:
        p = self.ctx.p
        return Vec2p(v[0] % p, v[1] % p) in self.vectors

    def issubset(self, other: MonomialSpace) -> bool:
        return set(self.vectors) <= set(other.vectors)

    def to_list(self) -> List[List[int]]:
        return [[a, b] for a, b in self.vectors]


@dataclass(frozen=True, order=True)
class StandardCertificate:
    """The set is contained in V_k(x^u_a y^u_b)."""

    u: Vec2p
    k: int

    def to_dict(self) -> dict:
        return {"u": [self.u.a, self.u.b], "k": self.k}


def comm(ctx, v: Sequence[int], u: Sequence[int]) -> int:
    """e with (x^c y^d)(x^ua y^ub) = rho^e (x^ua y^ub)(x^c y^d), where v = (c, d)."""
    p = as_ctx(ctx).p
    return (v[1] * u[0] - v[0] * u[1]) % p


def nonzero_vectors(ctx) -> List[Vec2p]:
    p = as_ctx(ctx).p
    return [Vec2p(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]


def lines(ctx) -> List[List[Vec2p]]:
    """The p + 1 lines through the origin, each minus the origin.

    Lines are ordered by their lexicographically least point, points within a
    line lexicographically: (0,1)-line first, then the lines of (1, m), m = 0..p-1.
    """
    p = as_ctx(ctx).p
    out = [[Vec2p(0, j) for j in range(1, p)]]
    for m in range(p):
        out.append(sorted(Vec2p(j, (j * m) % p) for j in range(1, p)))
    return out


def standard_space(ctx, u: Sequence[int], k: int) -> MonomialSpace:
    ctx = as_ctx(ctx)
    p = ctx.p
    u = Vec2p(u[0] % p, u[1] % p)
    k %= p
    if u == (0, 0):
        raise ValueError("u must be nonzero")
    if k == 0:
        raise ValueError("k must be nonzero mod p")
    vs = [u] + [v for v in nonzero_vectors(ctx) if comm(ctx, v, u) == k]
    return MonomialSpace(ctx, tuple(sorted(vs)))


def standardness_certificate(space: MonomialSpace) -> Optional[StandardCertificate]:
    """Least (u, k), u lexicographic then k ascending, with space inside V_k(u)."""
    ctx = space.ctx
    for u in nonzero_vectors(ctx):
        ks = {comm(ctx, v, u) for v in space.vectors if v != u}
        if not ks:
            return StandardCertificate(u, 1)
        if len(ks) == 1:
            (k,) = ks
            if k:
                return StandardCertificate(u, k)
    return None


def is_kummer_space(space: MonomialSpace) -> bool:
    return min_zero_sum(space.ctx, space.vectors) is None


def is_maximal(space: MonomialSpace) -> bool:
    """No further monomial can be added while staying Kummer."""
    ctx = space.ctx
    p = ctx.p
    if not is_kummer_space(space):
        raise NotKummer("the space is not Kummer")
    table = weight_table(p, space.vectors)
    members = set(space.vectors)
    return not any(addable(p, table, v) for v in nonzero_vectors(ctx) if v not in members)


# --------------------------------------------------------------------------
# Exhaustive enumeration
# --------------------------------------------------------------------------

# A node of the search: next line to decide, chosen vectors, indices of skipped lines.
Node = Tuple[int, Tuple[Vec2p, ...], Tuple[int, ...]]


def _search(p: int, all_lines: List[List[Vec2p]], node: Node) -> List[Tuple[Vec2p, ...]]:
    """All maximal Kummer sets extending ``node``; one vector at most per line."""
    start, chosen, skipped = node
    found: List[Tuple[Vec2p, ...]] = []
    nlines = len(all_lines)

    def rec(li: int, chosen: List[Vec2p], table: list, skipped: List[int]) -> None:
        if li == nlines:
            for s in skipped:
                if any(addable(p, table, v) for v in all_lines[s]):
                    return
            found.append(tuple(sorted(chosen)))
            return
        for v in all_lines[li]:
            if addable(p, table, v):
                chosen.append(v)
                rec(li + 1, chosen, extend_table(p, table, v), skipped)
                chosen.pop()
        skipped.append(li)
        rec(li + 1, chosen, table, skipped)
        skipped.pop()

    rec(start, list(chosen), weight_table(p, chosen), list(skipped))
    return found


def _split(p: int, all_lines: List[List[Vec2p]], node: Node, depth: int) -> List[Node]:
    """Expand the first ``depth`` undecided lines of ``node`` into independent work units."""
    frontier = [node]
    for _ in range(depth):
        nxt: List[Node] = []
        for li, chosen, skipped in frontier:
            if li >= len(all_lines):
                nxt.append((li, chosen, skipped))
                continue
            table = weight_table(p, chosen)
            for v in all_lines[li]:
                if addable(p, table, v):
                    nxt.append((li + 1, chosen + (v,), skipped))
            nxt.append((li + 1, chosen, skipped + (li,)))
        frontier = nxt
    return frontier


def _run_unit(args) -> List[Tuple[Vec2p, ...]]:
    p, node = args
    return _search(p, lines(p), node)


def _maximal_sets(ctx: PrimeCtx, root: Node, workers: int) -> List[Tuple[Vec2p, ...]]:
    p = ctx.p
    all_lines = lines(ctx)
    if workers <= 1:
        return _search(p, all_lines, root)
    units = _split(p, all_lines, root, depth=2)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = pool.map(_run_unit, [(p, u) for u in units], chunksize=max(1, len(units) // (4 * workers)))
        return [s for part in results for s in part]


def _gl2_generators(p: int) -> List[Tuple[int, int, int, int]]:
    g = next(r for r in range(2, p) if all(pow(r, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)))
    # transvections generate SL2; a diagonal primitive root reaches every determinant
    return [(1, 1, 0, 1), (1, 0, 1, 1), (g, 0, 0, 1)]


def _prime_factors(n: int) -> List[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _orbit(p: int, seeds: Iterable[Tuple[Vec2p, ...]]) -> List[Tuple[Vec2p, ...]]:
    gens = _gl2_generators(p)
    seen = set()
    stack = []
    for s in seeds:
        key = tuple(sorted(s))
        if key not in seen:
            seen.add(key)
            stack.append(key)
    while stack:
        s = stack.pop()
        for (m11, m12, m21, m22) in gens:
            img = tuple(sorted(Vec2p((m11 * a + m12 * b) % p, (m21 * a + m22 * b) % p) for a, b in s))
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return list(seen)


def enumerate_maximal(ctx, symmetry: bool = False, workers: int = 1) -> List[Tuple[MonomialSpace, StandardCertificate]]:
    """Every maximal monomial Kummer set, each with its standardness certificate.

    Backtracks over the p + 1 lines through the origin, picking at most one
    vector per line (collinear pairs always carry a zero sum of weight < p).
    With ``symmetry`` only sets containing (1, 0) and (0, 1) are searched and
    the rest are recovered as GL_2 images; this is the only mode for p > 7.

    Raises ValueError for unsupported p; a set without certificate is returned
    with ``None`` in place of the certificate.
    """
    ctx = as_ctx(ctx)
    p = ctx.p
    if not symmetry and p > EXHAUSTIVE_MAX_PRIME:
        raise ValueError(f"exhaustive enumeration supports p <= {EXHAUSTIVE_MAX_PRIME}; use symmetry mode")
    if symmetry:
        # lines(ctx)[0] is the (0,1)-line and lines(ctx)[1] the (1,0)-line
        root: Node = (2, (Vec2p(0, 1), Vec2p(1, 0)), ())
        sets = _orbit(p, _maximal_sets(ctx, root, workers))
    else:
        sets = _maximal_sets(ctx, (0, (), ()), workers)
    out = []
    for vs in sorted(set(sets)):
        space = MonomialSpace(ctx, vs)
        out.append((space, standardness_certificate(space)))
    return out


# --------------------------------------------------------------------------
# Three-dimensional spaces
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TripleVerdict:
    is_kummer: bool
    condition: Optional[str] = None

    def __bool__(self) -> bool:
        return self.is_kummer


def classify_triple(ctx, v1: Sequence[int], v2: Sequence[int], v3: Sequence[int]) -> TripleVerdict:
    """Kummer test for Fz1 + Fz2 + Fz3 from the subgroup conditions on exponent vectors.

    Kummer iff some difference v_i - v_j is a multiple of the third vector, or the
    three differences lie on one line.  Conditions are tried in a fixed order and
    the first match is reported as ``"diff(i,j)~k"`` or ``"diffs-one-line"``.
    """
    ctx = as_ctx(ctx)
    p = ctx.p
    vs = MonomialSpace.of(ctx, [v1, v2, v3])  # validation only
    del vs
    v = [Vec2p(w[0] % p, w[1] % p) for w in (v1, v2, v3)]

    def diff(i: int, j: int) -> Vec2p:
        return Vec2p((v[i][0] - v[j][0]) % p, (v[i][1] - v[j][1]) % p)

    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        if collinear(ctx, diff(i, j), v[k]):
            return TripleVerdict(True, f"diff({i + 1},{j + 1})~{k + 1}")
    d12, d23, d31 = diff(0, 1), diff(1, 2), diff(2, 0)
    if collinear(ctx, d12, d23) and collinear(ctx, d23, d31):
        return TripleVerdict(True, "diffs-one-line")
    return TripleVerdict(False, None)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("KUMMER_WORKERS", "1")))
    except ValueError:
        return 1
