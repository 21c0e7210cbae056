"""Exact arithmetic in the cyclotomic integers Z[rho], rho a primitive p-th root of unity.

Elements are stored on the free Z-basis 1, rho, ..., rho^(p-2), so two elements
are equal exactly when their coordinate tuples are equal.  Products are formed
in Z[t]/(t^p - 1) and folded back using 1 + rho + ... + rho^(p-1) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Sequence, Union

MIN_PRIME = 3
MAX_PRIME = 31


class ContextMismatch(ValueError):
    """Raised when objects built over different primes are combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeCtx:
    """The prime degree p shared by every object of one computation.

    p = 3 is accepted, but the classification results for monomial Kummer
    spaces are only claimed for p >= 5.
    """

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"p must be an int, got {self.p!r}")
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if not MIN_PRIME <= self.p <= MAX_PRIME:
            raise ValueError(f"p = {self.p} outside supported range [{MIN_PRIME}, {MAX_PRIME}]")

    def res(self, n: int) -> int:
        """Representative of n modulo p in [0, p)."""
        return n % self.p

    def inverse(self, n: int) -> int:
        n %= self.p
        if n == 0:
            raise ZeroDivisionError("0 is not invertible modulo p")
        return pow(n, -1, self.p)


@lru_cache(maxsize=None)
def prime_ctx(p: int) -> PrimeCtx:
    return PrimeCtx(p)


def as_ctx(p: Union[int, PrimeCtx]) -> PrimeCtx:
    return p if isinstance(p, PrimeCtx) else prime_ctx(p)


def check_same(a: PrimeCtx, b: PrimeCtx) -> None:
    if a.p != b.p:
        raise ContextMismatch(f"cannot combine objects over p={a.p} and p={b.p}")


def _fold(ctx: PrimeCtx, cyclic: Sequence[int]) -> "CycInt":
    # cyclic has length p: coefficients of rho^0..rho^(p-1); drop rho^(p-1) via the
    # relation rho^(p-1) = -(1 + rho + ... + rho^(p-2)).
    last = cyclic[-1]
    if last:
        return CycInt._make(ctx, tuple(c - last for c in cyclic[:-1]))
    return CycInt._make(ctx, tuple(cyclic[:-1]))


class CycInt:
    """An element c_0 + c_1 rho + ... + c_{p-2} rho^{p-2} of Z[rho]."""

    __slots__ = ("ctx", "coords", "_hash", "_cof")

    def __init__(self, ctx: Union[int, PrimeCtx], coords: Iterable[int]) -> None:
        ctx = as_ctx(ctx)
        coords = tuple(coords)
        if len(coords) != ctx.p - 1:
            raise ValueError(f"expected {ctx.p - 1} coordinates, got {len(coords)}")
        for c in coords:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"coordinates must be ints, got {c!r}")
        self.ctx = ctx
        self.coords = coords
        self._hash = None
        self._cof = None

    @classmethod
    def _make(cls, ctx: PrimeCtx, coords: tuple) -> CycInt:
        obj = object.__new__(cls)
        obj.ctx = ctx
        obj.coords = coords
        obj._hash = None
        obj._cof = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ctx) -> CycInt:
        ctx = as_ctx(ctx)
        return cls(ctx, (0,) * (ctx.p - 1))

    @classmethod
    def from_int(cls, ctx, n: int) -> CycInt:
        ctx = as_ctx(ctx)
        return cls(ctx, (n,) + (0,) * (ctx.p - 2))

    @classmethod
    def one(cls, ctx) -> CycInt:
        return cls.from_int(ctx, 1)

    @classmethod
    def rho_power(cls, ctx, e: int) -> CycInt:
        ctx = as_ctx(ctx)
        return _rho_power(ctx.p, e % ctx.p)

    @classmethod
    def from_cyclic(cls, ctx, cyclic: Sequence[int]) -> CycInt:
        """Build from coefficients on rho^0, ..., rho^(p-1) (a non-unique representation)."""
        ctx = as_ctx(ctx)
        if len(cyclic) != ctx.p:
            raise ValueError(f"expected {ctx.p} cyclic coefficients, got {len(cyclic)}")
        return _fold(ctx, list(cyclic))

    # -- helpers --------------------------------------------------------------

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            check_same(self.ctx, other.ctx)
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return CycInt.from_int(self.ctx, other)
        raise TypeError(f"cannot combine CycInt with {type(other).__name__}")

    def cyclic(self) -> list[int]:
        return list(self.coords) + [0]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return any(self.coords)

    def is_integer(self) -> bool:
        return not any(self.coords[1:])

    # -- ring operations ------------------------------------------------------

    def __add__(self, other) -> CycInt:
        if type(other) is CycInt and other.ctx.p == self.ctx.p:
            o = other
        else:
            try:
                o = self._coerce(other)
            except TypeError:
                return NotImplemented
        return CycInt._make(self.ctx, tuple([a + b for a, b in zip(self.coords, o.coords)]))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt._make(self.ctx, tuple([-a for a in self.coords]))

    def __sub__(self, other) -> CycInt:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CycInt._make(self.ctx, tuple([a - b for a, b in zip(self.coords, o.coords)]))

    def __rsub__(self, other) -> CycInt:
        return (-self) + other

    def __mul__(self, other) -> CycInt:
        if type(other) is CycInt and other.ctx.p == self.ctx.p:
            o = other
        elif isinstance(other, int) and not isinstance(other, bool):
            return CycInt._make(self.ctx, tuple([a * other for a in self.coords]))
        else:
            try:
                o = self._coerce(other)
            except TypeError:
                return NotImplemented
        p = self.ctx.p
        out = [0] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        out[(i + j) % p] += a * b
        return _fold(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycInt:
        if n < 0:
            raise ValueError("negative powers are not defined in Z[rho]")
        result = CycInt.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def times_rho(self, e: int) -> CycInt:
        """Multiply by rho^e (a cyclic shift of the length-p representation)."""
        p = self.ctx.p
        e %= p
        if e == 0:
            return self
        out = [0] * p
        for i, a in enumerate(self.coords):
            out[(i + e) % p] = a
        return _fold(self.ctx, out)

    def galois(self, k: int) -> CycInt:
        """Image under the automorphism rho -> rho^k, k invertible mod p."""
        p = self.ctx.p
        k %= p
        if k == 0:
            raise ValueError("rho -> 1 is not an automorphism")
        out = [0] * p
        for i, a in enumerate(self.coords):
            out[(i * k) % p] += a
        return _fold(self.ctx, out)

    def norm(self) -> int:
        """Field norm to Z: the product of all Galois conjugates."""
        n = reduce(lambda acc, k: acc * self.galois(k), range(2, self.ctx.p), self)
        if not n.is_integer():
            raise ArithmeticError("norm did not land in Z")  # pragma: no cover
        return n.coords[0]

    def cofactor(self) -> tuple:
        """(c, n) with self * c = n in Z: c is the product of the nontrivial conjugates."""
        if self._cof is None:
            if self.is_zero():
                raise ZeroDivisionError("zero has no norm cofactor")
            c = reduce(lambda acc, k: acc * self.galois(k), range(3, self.ctx.p), self.galois(2))
            self._cof = (c, (self * c).coords[0])
        return self._cof

    def exact_div(self, other) -> CycInt:
        """Quotient self / other, which must lie in Z[rho]."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero in Z[rho]")
        if o.is_integer():
            d = o.coords[0]
            if any(c % d for c in self.coords):
                raise ArithmeticError("division is not exact in Z[rho]")
            return CycInt(self.ctx, tuple(c // d for c in self.coords))
        cofactor, n = o.cofactor()
        num = self * cofactor
        if any(c % n for c in num.coords):
            raise ArithmeticError("division is not exact in Z[rho]")
        return CycInt(self.ctx, tuple(c // n for c in num.coords))

    def content(self) -> int:
        """gcd of the coordinates (0 for the zero element)."""
        return reduce(gcd, self.coords, 0)

    def residue(self) -> int:
        """Image in Z[rho]/(1 - rho) = Z/p, i.e. rho -> 1."""
        return sum(self.coords) % self.ctx.p

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CycInt):
            return self.ctx.p == other.ctx.p and self.coords == other.coords
        if isinstance(other, int) and not isinstance(other, bool):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ctx.p, self.coords))
        return self._hash

    def __repr__(self) -> str:
        return f"CycInt(p={self.ctx.p}, {list(self.coords)})"

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if i == 0 else ("ρ" if i == 1 else f"ρ^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def _rho_power(p: int, e: int) -> CycInt:
    ctx = prime_ctx(p)
    if e == p - 1:
        return CycInt(ctx, (-1,) * (p - 1))
    coords = [0] * (p - 1)
    coords[e] = 1
    return CycInt(ctx, coords)


def rho_power(ctx, e: int) -> CycInt:
    return CycInt.rho_power(ctx, e)


def residue(a: CycInt) -> int:
    return a.residue()
