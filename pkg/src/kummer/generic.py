"""Quantum plane T = F[X, Y : YX = rho XY] and degeneration of Kummer spaces of D.

D is the localisation of T at its centre F[alpha, beta], alpha = X^p, beta = Y^p.
An element of D in reduced form with integral coefficients embeds in T by
alpha^s beta^t x^a y^b -> X^(a + ps) Y^(b + pt).  T is graded by Z x Z, ordered
lexicographically, and top() picks the leading monomial; top is multiplicative.

Degeneration replaces a basis of a Kummer subspace V of D by the tops of a basis
of V with pairwise distinct top classes modulo pZ x pZ; the resulting monomial
space is again Kummer and has the same dimension.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclotomic import CycInt, PrimeCtx, as_ctx, check_same
from .symbol_algebra import (
    AlgElement,
    CenterPoly,
    DependentBasis,
    KummerVerdict,
    Monomial,
    ZeroElementError,
    is_kummer_space_trace,
)
from .zerosum import Vec2p, ZeroSumWitness, min_zero_sum

GradedDegree = Tuple[int, int]

# Fixed linear order on monomial classes used by normalize_basis: lexicographic
# on representatives in [0, p)^2, the leading class being the largest.
CLASS_ORDER = "lex"


class TElement:
    """Element of the quantum plane: (i, j) -> nonzero CycInt coefficient of X^i Y^j."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms: Optional[Dict[Tuple[int, int], object]] = None) -> None:
        self.ctx = as_ctx(ctx)
        acc = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError("exponents in T are nonnegative")
            if isinstance(c, int):
                c = CycInt.from_int(self.ctx, c)
            check_same(self.ctx, c.ctx)
            if c:
                acc[(i, j)] = c
        self.terms = acc

    @classmethod
    def monomial(cls, ctx, i: int, j: int, c=1) -> TElement:
        return cls(ctx, {(i, j): c})

    @classmethod
    def X(cls, ctx) -> TElement:
        return cls.monomial(ctx, 1, 0)

    @classmethod
    def Y(cls, ctx) -> TElement:
        return cls.monomial(ctx, 0, 1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other) -> TElement:
        if isinstance(other, TElement):
            check_same(self.ctx, other.ctx)
            return other
        if isinstance(other, (int, CycInt)):
            return TElement(self.ctx, {(0, 0): other})
        raise TypeError(f"cannot combine TElement with {type(other).__name__}")

    def __add__(self, other) -> TElement:
        o = self._coerce(other)
        acc = dict(self.terms)
        for k, c in o.terms.items():
            s = acc[k] + c if k in acc else c
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
        return TElement(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self) -> TElement:
        return TElement(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> TElement:
        return self + (-self._coerce(other))

    def __mul__(self, other) -> TElement:
        if isinstance(other, (int, CycInt)):
            return TElement(self.ctx, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, TElement):
            return NotImplemented
        return t_mul(self, other)

    def __rmul__(self, other) -> TElement:
        if isinstance(other, (int, CycInt)):
            return TElement(self.ctx, {k: c * other for k, c in self.terms.items()})
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, TElement):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"({c})X^{i}Y^{j}" for (i, j), c in sorted(self.terms.items(), reverse=True))
        return f"TElement(p={self.ctx.p}, {body or '0'})"


def t_mul(s: TElement, t: TElement) -> TElement:
    """X^i Y^j . X^k Y^l = rho^(jk) X^(i+k) Y^(j+l); no reduction of exponents."""
    check_same(s.ctx, t.ctx)
    p = s.ctx.p
    acc: dict = {}
    for (i, j), c1 in s.terms.items():
        for (k, l), c2 in t.terms.items():
            c = (c1 * c2).times_rho((j * k) % p)
            key = (i + k, j + l)
            cur = acc.get(key)
            acc[key] = c if cur is None else cur + c
    return TElement(s.ctx, acc)


def top(t: TElement) -> Tuple[GradedDegree, CycInt]:
    """Lexicographically largest exponent with nonzero coefficient, and that coefficient."""
    if not t.terms:
        raise ZeroElementError("top of the zero element is undefined")
    d = max(t.terms)
    return d, t.terms[d]


def reduce_to_D(t: TElement) -> AlgElement:
    p = t.ctx.p
    acc: Dict[Tuple[int, int], dict] = {}
    for (i, j), c in t.terms.items():
        acc.setdefault((i % p, j % p), {})[(i // p, j // p)] = c
    return AlgElement(t.ctx, {m: CenterPoly(t.ctx, d) for m, d in acc.items()})


def embed_in_T(e: AlgElement) -> TElement:
    p = e.ctx.p
    terms = {}
    for (a, b), cp in e.terms.items():
        for (s, t), c in cp.terms.items():
            terms[(a + p * s, b + p * t)] = c
    return TElement(e.ctx, terms)


# --------------------------------------------------------------------------
# Normalisation and degeneration
# --------------------------------------------------------------------------


def leading_class(e: AlgElement) -> Monomial:
    if not e.terms:
        raise ZeroElementError("zero element has no leading class")
    return max(e.terms)


def _primitive(e: AlgElement) -> AlgElement:
    """Divide out the integer content and the common alpha^s beta^t factor (units of K)."""
    g = 0
    ms = mt = None
    for cp in e.terms.values():
        g = gcd(g, cp.content())
        s, t = cp.monomial_content()
        ms = s if ms is None else min(ms, s)
        mt = t if mt is None else min(mt, t)
    if g in (0, 1) and not ms and not mt:
        return e
    out = {}
    for m, cp in e.terms.items():
        terms = {(s - ms, t - mt): CycInt(e.ctx, tuple(x // g for x in c.coords)) for (s, t), c in cp.terms.items()}
        out[m] = CenterPoly(e.ctx, terms)
    return AlgElement(e.ctx, out)


def _exact_div(e: AlgElement, c: CenterPoly) -> AlgElement:
    return AlgElement._raw(e.ctx, {m: cp.exact_div(c) for m, cp in e.terms.items()})


def normalize_basis(basis: Sequence[AlgElement]) -> List[AlgElement]:
    """Same K-span, pairwise distinct leading classes.

    Repeatedly take the largest leading class L among the unfinished elements and
    the first element v_r having it; every other unfinished v_s becomes
    c_r v_s - c_s v_r (c the coefficients at L), divided by the previous pivot
    coefficient as in Bareiss elimination, which keeps the division exact and
    the coefficients small.  Leading classes strictly drop, so this terminates;
    an element reaching zero means the input was dependent over K.
    """
    if not basis:
        return []
    ctx = basis[0].ctx
    vs = []
    for i, b in enumerate(basis):
        check_same(ctx, b.ctx)
        if b.is_zero():
            raise DependentBasis(i, f"element {i} is zero")
        vs.append(_primitive(b))
    active = list(range(len(vs)))
    prev = CenterPoly.const(ctx, 1)
    while active:
        lead = max(leading_class(vs[i]) for i in active)
        r = next(i for i in active if leading_class(vs[i]) == lead)
        c_r = vs[r].terms[lead]
        active.remove(r)
        for s in active:
            c_s = vs[s].terms.get(lead)
            new = vs[s].scale(c_r)
            if c_s is not None:
                new = new - vs[r].scale(c_s)
            if new.is_zero():
                raise DependentBasis(s)
            vs[s] = _exact_div(new, prev)
        prev = c_r
    return [_primitive(v) for v in vs]


def _class(p: int, d: GradedDegree) -> Vec2p:
    return Vec2p(d[0] % p, d[1] % p)


def _t_primitive(f: Dict[Tuple[int, int], CycInt], ctx: PrimeCtx) -> Dict[Tuple[int, int], CycInt]:
    """Scale f by a unit of K so that its top coefficient is a positive integer, content 1.

    Keeping top coefficients in Z means reductions only multiply by integers,
    which keeps the coefficient growth of the completion in check.
    """
    if not f:
        return f
    lf = max(f)
    lc = f[lf]
    if not lc.is_integer():
        cof, _ = lc.cofactor()
        f = {k: c * cof for k, c in f.items()}
    g = 0
    for c in f.values():
        g = gcd(g, c.content())
    if f[lf].coords[0] < 0:
        g = -g
    if g == 1:
        return f
    return {k: CycInt._make(ctx, tuple(x // g for x in c.coords)) for k, c in f.items()}


def _combine(ctx: PrimeCtx, f: dict, g: dict, shift: Tuple[int, int]) -> dict:
    """Cancel the top of f against X^shift[0] Y^shift[1] * g (shift central, same top)."""
    nf = f[max(f)].coords[0]
    ng = g[max(g)].coords[0]
    d = gcd(nf, ng)
    cf, cg = ng // d, nf // d
    acc = {k: c * cf for k, c in f.items()} if cf != 1 else dict(f)
    di, dj = shift
    for (i, j), c in g.items():
        key = (i + di, j + dj)
        v = acc.get(key, None)
        v = -(c * cg) if v is None else v - c * cg
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)
    return _t_primitive(acc, ctx)


def _top_reduce(ctx: PrimeCtx, f: dict, basis: List[dict]) -> dict:
    p = ctx.p
    while f:
        lf = max(f)
        for g in basis:
            lg = max(g)
            if (lg[0] - lf[0]) % p == 0 and (lg[1] - lf[1]) % p == 0 and lg[0] <= lf[0] and lg[1] <= lf[1]:
                f = _combine(ctx, f, g, (lf[0] - lg[0], lf[1] - lg[1]))
                break
        else:
            return f
    return f


def distinct_top_basis(elements: Sequence[AlgElement]) -> List[AlgElement]:
    """Elements of the K-span of ``elements`` whose T-tops lie in distinct classes mod p.

    Buchberger-style completion of the T_0-module generated by the embedded
    elements under the lexicographic term order on T; one element is kept per
    leading class.  For K-independent input the number of classes equals the
    number of elements.
    """
    if not elements:
        return []
    ctx = elements[0].ctx
    p = ctx.p
    gb: List[dict] = []
    pairs: List[Tuple[Tuple[int, int], int, int]] = []
    seen_classes: set = set()

    def add(f: dict) -> None:
        lf = max(f)
        cf = _class(p, lf)
        seen_classes.add(cf)
        for i, g in enumerate(gb):
            lg = max(g)
            if _class(p, lg) == cf:
                heapq.heappush(pairs, ((max(lf[0], lg[0]), max(lf[1], lg[1])), i, len(gb)))
        gb.append(f)

    for e in elements:
        f = _top_reduce(ctx, _t_primitive(dict(embed_in_T(e).terms), ctx), gb)
        if f:
            add(f)
    # K-independent elements with distinct classes already form a basis; stop there
    while pairs and len(seen_classes) < len(elements):
        lcm, i, j = heapq.heappop(pairs)
        f, g = gb[i], gb[j]
        lf, lg = max(f), max(g)
        # align both leads at lcm, cancel
        fs = {(a + lcm[0] - lf[0], b + lcm[1] - lf[1]): c for (a, b), c in f.items()}
        s = _combine(ctx, fs, g, (lcm[0] - lg[0], lcm[1] - lg[1]))
        s = _top_reduce(ctx, s, gb)
        if s:
            add(s)
    best: Dict[Vec2p, dict] = {}
    for f in gb:
        cf = _class(p, max(f))
        if cf not in best or max(f) < max(best[cf]):
            best[cf] = f
    if len(best) != len(elements):
        raise DependentBasis(len(best), f"only {len(best)} distinct top classes for {len(elements)} elements")
    ordered = sorted(best.values(), key=lambda f: max(f))
    return [reduce_to_D(TElement(ctx, f)) for f in ordered]


@dataclass
class Degeneration:
    normalized: List[AlgElement]
    basis: List[AlgElement]
    tops: List[Tuple[GradedDegree, CycInt]]
    classes: Tuple[Vec2p, ...]
    realigned: bool = False


def degenerate_full(basis: Sequence[AlgElement]) -> Degeneration:
    """normalize_basis, then T-tops; re-aligned when two tops share a class mod p."""
    normalized = normalize_basis(basis)
    p = normalized[0].ctx.p if normalized else 0
    tops = [top(embed_in_T(v)) for v in normalized]
    classes = [_class(p, d) for d, _ in tops]
    final, realigned = normalized, False
    if len(set(classes)) != len(classes):
        final, realigned = distinct_top_basis(normalized), True
        tops = [top(embed_in_T(v)) for v in final]
        classes = [_class(p, d) for d, _ in tops]
    return Degeneration(normalized, final, tops, tuple(sorted(classes)), realigned)


def degenerate(basis: Sequence[AlgElement]) -> Tuple[Vec2p, ...]:
    """Exponent classes of the monomial space spanned by the tops (sorted)."""
    return degenerate_full(basis).classes


@dataclass
class IngenReport:
    p: int
    dimension: int
    degeneration: Tuple[Vec2p, ...]
    degeneration_kummer: bool
    degeneration_witness: Optional[ZeroSumWitness]
    bound: int
    bound_ok: bool
    input_verdict: Optional[KummerVerdict] = None
    defects: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        w = self.degeneration_witness
        return {
            "p": self.p,
            "dimension": self.dimension,
            "degeneration": [[a, b] for a, b in self.degeneration],
            "degeneration_kummer": self.degeneration_kummer,
            "degeneration_witness": None if w is None else [[v.a, v.b, m] for v, m in w.multiplicities],
            "bound": self.bound,
            "bound_ok": self.bound_ok,
            "input_kummer": None if self.input_verdict is None else self.input_verdict.is_kummer,
            "input_witness": None if self.input_verdict is None or self.input_verdict.witness is None
            else list(self.input_verdict.witness),
            "defects": list(self.defects),
        }


def ingen_check(basis: Sequence[AlgElement], check_input: bool = True) -> IngenReport:
    """Degenerate, test the monomial result, and check dim <= p + 1.

    When the input itself passes the trace criterion, a non-Kummer degeneration
    or a dimension above p + 1 is recorded as a defect.
    """
    if not basis:
        raise ValueError("empty basis")
    p = basis[0].ctx.p
    deg = degenerate(basis)
    witness = min_zero_sum(p, deg)
    dim = len(deg)
    report = IngenReport(
        p=p,
        dimension=dim,
        degeneration=deg,
        degeneration_kummer=witness is None,
        degeneration_witness=witness,
        bound=p + 1,
        bound_ok=dim <= p + 1,
    )
    if check_input:
        verdict = is_kummer_space_trace(basis)
        report.input_verdict = verdict
        if verdict.is_kummer and witness is not None:
            report.defects.append("input is Kummer but its degeneration is not")
        if verdict.is_kummer and dim > p + 1:
            report.defects.append(f"Kummer space of dimension {dim} exceeds p + 1")
    return report
