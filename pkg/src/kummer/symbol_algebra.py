"""The generic symbol algebra D = K[x, y : x^p = alpha, y^p = beta, yx = rho xy].

Coefficients are kept integral: an element of D is a combination of the p^2
monomial classes x^a y^b (0 <= a, b < p) with coefficients in Z[rho][alpha, beta]
(``CenterPoly``).  Everything here is exact; verdicts are verdicts about the
generic algebra, not about a specialisation of alpha and beta.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .cyclotomic import CycInt, PrimeCtx, as_ctx, check_same

SymTuple = Tuple[int, ...]


class ZeroElementError(ValueError):
    pass


class DependentBasis(ValueError):
    """The given elements are linearly dependent over the centre K."""

    def __init__(self, index: int, message: Optional[str] = None) -> None:
        self.index = index
        super().__init__(message or f"element {index} is dependent on the preceding elements over K")


class Monomial(NamedTuple):
    a: int
    b: int


# --------------------------------------------------------------------------
# Central polynomials Z[rho][alpha, beta]
# --------------------------------------------------------------------------


def _add_into(acc: dict, key, value: CycInt) -> None:
    cur = acc.get(key)
    if cur is None:
        acc[key] = value
    else:
        s = cur + value
        if s:
            acc[key] = s
        else:
            del acc[key]


class CenterPoly:
    """A polynomial in alpha, beta with Z[rho] coefficients.

    ``terms`` maps (alpha exponent, beta exponent) to a nonzero CycInt.
    """

    __slots__ = ("ctx", "terms", "_key")

    def __init__(self, ctx, terms: Optional[Dict[Tuple[int, int], CycInt]] = None) -> None:
        self.ctx = as_ctx(ctx)
        clean = {}
        for (s, t), c in (terms or {}).items():
            if s < 0 or t < 0:
                raise ValueError("central exponents must be nonnegative")
            if isinstance(c, int):
                c = CycInt.from_int(self.ctx, c)
            check_same(self.ctx, c.ctx)
            if c:
                clean[(s, t)] = c
        self.terms = clean
        self._key = None

    @classmethod
    def _raw(cls, ctx: PrimeCtx, terms: dict) -> CenterPoly:
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        obj._key = None
        return obj

    @classmethod
    def const(cls, ctx, c=1) -> CenterPoly:
        return cls.monomial(ctx, 0, 0, c)

    @classmethod
    def monomial(cls, ctx, s: int, t: int, c=1) -> CenterPoly:
        return cls(ctx, {(s, t): c})

    @classmethod
    def alpha(cls, ctx) -> CenterPoly:
        return cls.monomial(ctx, 1, 0)

    @classmethod
    def beta(cls, ctx) -> CenterPoly:
        return cls.monomial(ctx, 0, 1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other) -> CenterPoly:
        if isinstance(other, CenterPoly):
            check_same(self.ctx, other.ctx)
            return other
        if isinstance(other, (int, CycInt)):
            return CenterPoly.const(self.ctx, other)
        raise TypeError(f"cannot combine CenterPoly with {type(other).__name__}")

    def __add__(self, other) -> CenterPoly:
        o = self._coerce(other)
        acc = dict(self.terms)
        for k, c in o.terms.items():
            _add_into(acc, k, c)
        return CenterPoly._raw(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self) -> CenterPoly:
        return CenterPoly._raw(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> CenterPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> CenterPoly:
        return (-self) + other

    def __mul__(self, other) -> CenterPoly:
        if isinstance(other, (int, CycInt)):
            return self.scale(other)
        o = self._coerce(other)
        if len(self.terms) * len(o.terms) >= _KRONECKER_MIN_PAIRS:
            return _kronecker_mul(self, o)
        acc: dict = {}
        for (s1, t1), c1 in self.terms.items():
            for (s2, t2), c2 in o.terms.items():
                _add_into(acc, (s1 + s2, t1 + t2), c1 * c2)
        return CenterPoly._raw(self.ctx, acc)

    __rmul__ = __mul__

    def scale(self, c) -> CenterPoly:
        if isinstance(c, int):
            if c == 0:
                return CenterPoly._raw(self.ctx, {})
            return CenterPoly._raw(self.ctx, {k: v * c for k, v in self.terms.items()})
        check_same(self.ctx, c.ctx)
        if not c:
            return CenterPoly._raw(self.ctx, {})
        return CenterPoly._raw(self.ctx, {k: v * c for k, v in self.terms.items()})

    def shift(self, ds: int, dt: int) -> CenterPoly:
        """Multiply by alpha^ds beta^dt."""
        if not ds and not dt:
            return self
        return CenterPoly._raw(self.ctx, {(s + ds, t + dt): c for (s, t), c in self.terms.items()})

    def times_rho(self, e: int) -> CenterPoly:
        if e % self.ctx.p == 0:
            return self
        return CenterPoly._raw(self.ctx, {k: c.times_rho(e) for k, c in self.terms.items()})

    def leading(self) -> Tuple[Tuple[int, int], CycInt]:
        """Lex-leading term (alpha before beta)."""
        if not self.terms:
            raise ZeroElementError("zero polynomial has no leading term")
        k = max(self.terms)
        return k, self.terms[k]

    def degree(self) -> int:
        return max((s + t for s, t in self.terms), default=-1)

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c.content())
        return g

    def monomial_content(self) -> Tuple[int, int]:
        """Largest alpha^s beta^t dividing every term."""
        if not self.terms:
            return (0, 0)
        return (min(s for s, _ in self.terms), min(t for _, t in self.terms))

    def exact_div(self, other) -> CenterPoly:
        """Quotient by ``other``; raises ArithmeticError when it does not divide."""
        g = self._coerce(other)
        if not g:
            raise ZeroDivisionError("division by the zero polynomial")
        (gs, gt), gc = g.leading()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            (rs, rt) = max(rem)
            rc = rem[(rs, rt)]
            if rs < gs or rt < gt:
                raise ArithmeticError("polynomial division is not exact")
            qc = rc.exact_div(gc)
            ds, dt = rs - gs, rt - gt
            quot[(ds, dt)] = qc
            for (s, t), c in g.terms.items():
                _add_into(rem, (s + ds, t + dt), -(c * qc))
        return CenterPoly._raw(self.ctx, quot)

    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted((k, c.coords) for k, c in self.terms.items()))
        return self._key

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, CycInt)):
            other = CenterPoly.const(self.ctx, other)
        if not isinstance(other, CenterPoly):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.sort_key()))

    def __repr__(self) -> str:
        return f"CenterPoly(p={self.ctx.p}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (s, t), c in sorted(self.terms.items(), reverse=True):
            mono = "".join(
                x for x in (
                    "" if s == 0 else ("α" if s == 1 else f"α^{s}"),
                    "" if t == 0 else ("β" if t == 1 else f"β^{t}"),
                )
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs}){mono}")
        return " + ".join(parts)


# Products with at least this many term pairs go through one big-integer product.
_KRONECKER_MIN_PAIRS = 12


def _pack(terms: dict, p: int, width: int, bits: int, half: int) -> int:
    # digit (t * width + s) * (2p - 2) + e holds coordinate e of the (s, t) term, biased by half
    stride = 2 * p - 2
    ndig = (max(t for _, t in terms) * width + max(s for s, _ in terms) + 1) * stride
    nbytes = bits // 8
    buf = bytearray(ndig * nbytes)
    # every digit, used or not, carries the bias; unused ones are subtracted out below
    biased_zero = half.to_bytes(nbytes, "little")
    buf[:] = biased_zero * ndig
    for (s, t), c in terms.items():
        base = (t * width + s) * stride
        for e, v in enumerate(c.coords):
            if v:
                pos = (base + e) * nbytes
                buf[pos:pos + nbytes] = (v + half).to_bytes(nbytes, "little")
    return int.from_bytes(buf, "little") - _bias(ndig, bits, half)


def _bias(ndig: int, bits: int, half: int) -> int:
    return ((1 << (bits * ndig)) - 1) // ((1 << bits) - 1) * half


def _kronecker_mul(f: CenterPoly, g: CenterPoly) -> CenterPoly:
    """Product by Kronecker substitution: pack both factors into integers and multiply once."""
    ctx = f.ctx
    p = ctx.p
    m1 = max(abs(v) for c in f.terms.values() for v in c.coords)
    m2 = max(abs(v) for c in g.terms.values() for v in c.coords)
    contrib = min(len(f.terms), len(g.terms)) * (p - 1)
    bits = -(-((m1 * m2 * contrib).bit_length() + 2) // 8) * 8
    half = 1 << (bits - 1)
    width = max(s for s, _ in f.terms) + max(s for s, _ in g.terms) + 1
    prod = _pack(f.terms, p, width, bits, half) * _pack(g.terms, p, width, bits, half)
    stride = 2 * p - 2
    ndig = (max(t for _, t in f.terms) + max(t for _, t in g.terms) + 1) * width * stride
    raw = (prod + _bias(ndig, bits, half)).to_bytes(ndig * bits // 8, "little")
    nbytes = bits // 8
    acc: dict = {}
    cell = stride * nbytes
    for idx in range(ndig // stride):
        chunk = raw[idx * cell:(idx + 1) * cell]
        cyc = [0] * p
        nonzero = False
        for e in range(stride - 1):
            v = int.from_bytes(chunk[e * nbytes:(e + 1) * nbytes], "little") - half
            if v:
                cyc[e % p] += v
                nonzero = True
        if not nonzero:
            continue
        last = cyc[p - 1]
        coords = tuple(c - last for c in cyc[:-1]) if last else tuple(cyc[:-1])
        if any(coords):
            t, s = divmod(idx, width)
            acc[(s, t)] = CycInt._make(ctx, coords)
    return CenterPoly._raw(ctx, acc)


# --------------------------------------------------------------------------
# Elements of D
# --------------------------------------------------------------------------


class AlgElement:
    """An element of D in reduced form: monomial class (a, b) -> CenterPoly."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms: Optional[Dict[Tuple[int, int], CenterPoly]] = None) -> None:
        self.ctx = as_ctx(ctx)
        p = self.ctx.p
        acc: dict = {}
        for (a, b), cp in (terms or {}).items():
            if not (0 <= a < p and 0 <= b < p):
                raise ValueError(f"monomial exponents ({a}, {b}) not reduced to [0, {p})")
            if isinstance(cp, (int, CycInt)):
                cp = CenterPoly.const(self.ctx, cp)
            check_same(self.ctx, cp.ctx)
            if cp:
                acc[Monomial(a, b)] = cp
        self.terms = acc

    @classmethod
    def _raw(cls, ctx: PrimeCtx, terms: dict) -> AlgElement:
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj.terms = terms
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx) -> AlgElement:
        return cls(ctx)

    @classmethod
    def monomial(cls, ctx, a: int, b: int, coeff=1) -> AlgElement:
        """x^a y^b for any a, b >= 0; full p-th powers are carried into alpha, beta."""
        ctx = as_ctx(ctx)
        if a < 0 or b < 0:
            raise ValueError("negative exponents are not supported; use a + p*k")
        p = ctx.p
        if not isinstance(coeff, CenterPoly):
            coeff = CenterPoly.const(ctx, coeff)
        return cls(ctx, {(a % p, b % p): coeff.shift(a // p, b // p)})

    @classmethod
    def one(cls, ctx) -> AlgElement:
        return cls.monomial(ctx, 0, 0)

    @classmethod
    def x(cls, ctx) -> AlgElement:
        return cls.monomial(ctx, 1, 0)

    @classmethod
    def y(cls, ctx) -> AlgElement:
        return cls.monomial(ctx, 0, 1)

    @classmethod
    def central(cls, cp: CenterPoly) -> AlgElement:
        return cls(cp.ctx, {(0, 0): cp})

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def support(self) -> List[Monomial]:
        return sorted(self.terms)

    def coeff(self, m: Tuple[int, int]) -> CenterPoly:
        return self.terms.get(Monomial(*m), CenterPoly._raw(self.ctx, {}))

    def is_central(self) -> bool:
        return all(m == (0, 0) for m in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> AlgElement:
        if isinstance(other, AlgElement):
            check_same(self.ctx, other.ctx)
            return other
        if isinstance(other, (int, CycInt, CenterPoly)):
            return AlgElement(self.ctx, {(0, 0): other})
        raise TypeError(f"cannot combine AlgElement with {type(other).__name__}")

    def __add__(self, other) -> AlgElement:
        o = self._coerce(other)
        acc = dict(self.terms)
        for m, cp in o.terms.items():
            cur = acc.get(m)
            if cur is None:
                acc[m] = cp
            else:
                s = cur + cp
                if s:
                    acc[m] = s
                else:
                    del acc[m]
        return AlgElement._raw(self.ctx, acc)

    __radd__ = __add__

    def __neg__(self) -> AlgElement:
        return AlgElement._raw(self.ctx, {m: -cp for m, cp in self.terms.items()})

    def __sub__(self, other) -> AlgElement:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> AlgElement:
        return (-self) + other

    def scale(self, c) -> AlgElement:
        """Multiply by a central scalar (int, CycInt or CenterPoly)."""
        if isinstance(c, CenterPoly):
            check_same(self.ctx, c.ctx)
            acc = {}
            for m, cp in self.terms.items():
                prod = cp * c
                if prod:
                    acc[m] = prod
            return AlgElement._raw(self.ctx, acc)
        if not c:
            return AlgElement._raw(self.ctx, {})
        return AlgElement._raw(self.ctx, {m: cp.scale(c) for m, cp in self.terms.items()})

    def __mul__(self, other) -> AlgElement:
        if isinstance(other, (int, CycInt, CenterPoly)):
            return self.scale(other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other) -> AlgElement:
        if isinstance(other, (int, CycInt, CenterPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> AlgElement:
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = AlgElement.one(self.ctx)
        for _ in range(n):
            result = mul(result, self)
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, CycInt, CenterPoly)):
            other = AlgElement(self.ctx, {(0, 0): other})
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx.p, tuple(sorted((m, cp.sort_key()) for m, cp in self.terms.items()))))

    def __repr__(self) -> str:
        return f"AlgElement(p={self.ctx.p}, {self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), cp in sorted(self.terms.items()):
            mono = "".join(
                s for s in (
                    "" if a == 0 else ("x" if a == 1 else f"x^{a}"),
                    "" if b == 0 else ("y" if b == 1 else f"y^{b}"),
                )
            )
            cs = str(cp)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs}){mono}")
        return " + ".join(parts)


def mul(e1: AlgElement, e2: AlgElement) -> AlgElement:
    """Product in D: (x^a1 y^b1)(x^a2 y^b2) = rho^(b1 a2) x^(a1+a2) y^(b1+b2)."""
    check_same(e1.ctx, e2.ctx)
    ctx = e1.ctx
    p = ctx.p
    acc: Dict[Monomial, dict] = {}
    for (a1, b1), c1 in e1.terms.items():
        for (a2, b2), c2 in e2.terms.items():
            a, b = a1 + a2, b1 + b2
            ca, cb = (1, a - p) if a >= p else (0, a)
            cbeta, bb = (1, b - p) if b >= p else (0, b)
            e = (b1 * a2) % p
            bucket = acc.setdefault(Monomial(cb, bb), {})
            for (s1, t1), k1 in c1.terms.items():
                for (s2, t2), k2 in c2.terms.items():
                    prod = k1 * k2
                    if e:
                        prod = prod.times_rho(e)
                    _add_into(bucket, (s1 + s2 + ca, t1 + t2 + cbeta), prod)
    return AlgElement._raw(ctx, {m: CenterPoly._raw(ctx, d) for m, d in acc.items() if d})


def trace(e: AlgElement) -> CenterPoly:
    """Reduced trace: p times the coefficient of the identity monomial."""
    return e.coeff((0, 0)).scale(e.ctx.p)


# --------------------------------------------------------------------------
# Symmetric products
# --------------------------------------------------------------------------


def _ensure_elements(elements: Sequence[AlgElement]) -> PrimeCtx:
    if not elements:
        raise ValueError("at least one element is required")
    ctx = elements[0].ctx
    for e in elements[1:]:
        check_same(ctx, e.ctx)
    return ctx


def sym_product(elements: Sequence[AlgElement], multiplicities: Sequence[int]) -> AlgElement:
    """Sum of all distinct arrangements of ``multiplicities[k]`` copies of ``elements[k]``.

    Uses S(i) = sum_{j: i_j > 0} S(i - e_j) * v_j with S(0) = 1, memoised over the
    prod(i_k + 1) sub-tuples.
    """
    ctx = _ensure_elements(elements)
    mult = tuple(multiplicities)
    if len(mult) != len(elements):
        raise ValueError("one multiplicity per element is required")
    if any(i < 0 for i in mult):
        raise ValueError("multiplicities must be nonnegative")
    memo: Dict[SymTuple, AlgElement] = {(0,) * len(mult): AlgElement.one(ctx)}
    for sub in itertools.product(*(range(i + 1) for i in mult)):
        if sub in memo:
            continue
        total = AlgElement._raw(ctx, {})
        for j, ij in enumerate(sub):
            if ij:
                prev = sub[:j] + (ij - 1,) + sub[j + 1:]
                total = total + mul(memo[prev], elements[j])
        memo[sub] = total
    return memo[mult]


def tuples_of_weight(t: int, w: int) -> Iterator[SymTuple]:
    """All t-tuples of nonnegative ints summing to w, in lexicographic order."""
    if t == 1:
        yield (w,)
        return
    for first in range(w + 1):
        for rest in tuples_of_weight(t - 1, w - first):
            yield (first,) + rest


def sym_product_levels(elements: Sequence[AlgElement], max_weight: int) -> Iterator[Tuple[int, Dict[SymTuple, AlgElement]]]:
    """Yield (w, {tuple: symmetric product}) for w = 1..max_weight.

    Only the previous level is kept alive.
    """
    ctx = _ensure_elements(elements)
    t = len(elements)
    level: Dict[SymTuple, AlgElement] = {(0,) * t: AlgElement.one(ctx)}
    for w in range(1, max_weight + 1):
        nxt: Dict[SymTuple, AlgElement] = {}
        for tup in tuples_of_weight(t, w):
            total = AlgElement._raw(ctx, {})
            for j, ij in enumerate(tup):
                if ij:
                    prev = tup[:j] + (ij - 1,) + tup[j + 1:]
                    total = total + mul(level[prev], elements[j])
            nxt[tup] = total
        level = nxt
        yield w, level


def commutation_exponent(m1: Tuple[int, int], m2: Tuple[int, int], p: int) -> int:
    """e with m1 m2 = rho^e m2 m1 for monomials m1 = x^a1 y^b1, m2 = x^a2 y^b2."""
    return (m1[1] * m2[0] - m2[1] * m1[0]) % p


def monomial_sym_coeff(ctx, monomials: Sequence[Tuple[int, int]], multiplicities: Sequence[int]) -> CycInt:
    """The c in Z[rho] with  m_1^{i_1} * ... * m_t^{i_t} = c * m_1^{i_1} ... m_t^{i_t}."""
    ctx = as_ctx(ctx)
    p = ctx.p
    mult = tuple(multiplicities)
    if len(mult) != len(monomials):
        raise ValueError("one multiplicity per monomial is required")
    if any(i < 0 for i in mult):
        raise ValueError("multiplicities must be nonnegative")
    if sum(mult) > p:
        raise ValueError(f"weight {sum(mult)} exceeds p = {p}")
    t = len(mult)
    e = [[commutation_exponent(monomials[k], monomials[j], p) for j in range(t)] for k in range(t)]
    memo: Dict[SymTuple, CycInt] = {(0,) * t: CycInt.one(ctx)}
    for sub in itertools.product(*(range(i + 1) for i in mult)):
        if sub in memo:
            continue
        total = CycInt.zero(ctx)
        for j, ij in enumerate(sub):
            if ij:
                # moving the last letter v_j left past the v_k, k > j
                shift = sum(sub[k] * e[k][j] for k in range(j + 1, t))
                prev = sub[:j] + (ij - 1,) + sub[j + 1:]
                total = total + memo[prev].times_rho(shift)
        memo[sub] = total
    return memo[mult]


# --------------------------------------------------------------------------
# Kummer criteria
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KummerVerdict:
    is_kummer: bool
    witness: Optional[SymTuple] = None
    criterion: str = ""

    def __bool__(self) -> bool:
        return self.is_kummer


def is_kummer_element(v: AlgElement) -> bool:
    """v is Kummer in D iff Tr(v^i) = 0 for 1 <= i <= p - 1."""
    if v.is_zero():
        raise ZeroElementError("the zero element is not a candidate Kummer element")
    power = v
    for i in range(1, v.ctx.p):
        if i > 1:
            power = mul(power, v)
        if trace(power):
            return False
    return True


def _check_basis(basis: Sequence[AlgElement]) -> PrimeCtx:
    ctx = _ensure_elements(basis)
    for i, b in enumerate(basis):
        if b.is_zero():
            raise ZeroElementError(f"basis element {i} is zero")
    idx = first_dependent_index(basis)
    if idx is not None:
        raise DependentBasis(idx)
    return ctx


def is_kummer_space_trace(basis: Sequence[AlgElement]) -> KummerVerdict:
    """Kummer iff Tr(b_1^{i_1} * ... * b_t^{i_t}) = 0 whenever 0 < sum i_k < p.

    On failure the witness is the lexicographically least violating tuple of
    minimal weight.
    """
    ctx = _check_basis(basis)
    for _, level in sym_product_levels(basis, ctx.p - 1):
        bad = [tup for tup, s in level.items() if (0, 0) in s.terms]
        if bad:
            return KummerVerdict(False, min(bad), "trace")
    return KummerVerdict(True, None, "trace")


def is_kummer_space_power(basis: Sequence[AlgElement]) -> KummerVerdict:
    """Kummer iff every symmetric product of total weight exactly p is central."""
    ctx = _check_basis(basis)
    level: Dict[SymTuple, AlgElement] = {}
    for w, level in sym_product_levels(basis, ctx.p):
        pass
    bad = [tup for tup, s in level.items() if not s.is_central()]
    if bad:
        return KummerVerdict(False, min(bad), "power")
    return KummerVerdict(True, None, "power")


# --------------------------------------------------------------------------
# Linear algebra over the centre
# --------------------------------------------------------------------------


def coefficient_matrix(rows: Sequence[AlgElement]) -> Tuple[List[Monomial], List[List[CenterPoly]]]:
    ctx = _ensure_elements(rows)
    cols = sorted({m for r in rows for m in r.terms})
    zero = CenterPoly._raw(ctx, {})
    return cols, [[r.terms.get(m, zero) for m in cols] for r in rows]


def bareiss_rank(matrix: List[List[CenterPoly]], ctx: PrimeCtx) -> int:
    """Rank over the fraction field by fraction-free (Bareiss) elimination.

    Every intermediate entry is a minor of the input, so each division by the
    previous pivot is exact in Z[rho][alpha, beta].
    """
    m = [list(row) for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = CenterPoly.const(ctx, 1)
    r = 0
    while r < nrows and r < ncols:
        pivot = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                if m[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        m[r], m[pi] = m[pi], m[r]
        if pj != r:
            for row in m:
                row[r], row[pj] = row[pj], row[r]
        piv = m[r][r]
        for i in range(r + 1, nrows):
            lead = m[i][r]
            for j in range(r + 1, ncols):
                num = piv * m[i][j] - lead * m[r][j]
                m[i][j] = num.exact_div(prev) if num else num
            m[i][r] = CenterPoly._raw(ctx, {})
        prev = piv
        r += 1
    return r


def rank_over_K(rows: Sequence[AlgElement]) -> int:
    if not rows:
        return 0
    ctx = _ensure_elements(rows)
    _, matrix = coefficient_matrix(rows)
    if not matrix[0]:
        return 0
    return bareiss_rank(matrix, ctx)


def first_dependent_index(rows: Sequence[AlgElement]) -> Optional[int]:
    """Index of the first element lying in the K-span of its predecessors, if any."""
    if rank_over_K(rows) == len(rows):
        return None
    for k in range(1, len(rows) + 1):
        if rank_over_K(rows[:k]) < k:
            return k - 1
    return None  # pragma: no cover


def monomial_spanning_set(basis: Sequence[AlgElement]) -> Optional[List[Monomial]]:
    """Monomials spanning the K-span of ``basis``, when that span is monomial.

    The span is monomial (conjugation invariant) exactly when the union of the
    supports has as many classes as the rank.
    """
    _check_basis(basis)
    support = sorted({m for b in basis for m in b.terms})
    if len(support) == len(basis):
        return support
    return None
