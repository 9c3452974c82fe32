"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are residues modulo the N-th cyclotomic polynomial with rational
coefficients (gmpy2 ``mpq``). Signs of real elements are certified with
mpmath interval arithmetic under the embedding zeta_N -> exp(2*pi*i/N).
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import gcd
from typing import Sequence

import mpmath
from gmpy2 import mpq

__all__ = [
    "CycloError",
    "CycloContext",
    "CycloElem",
    "context",
    "cyclotomic_polynomial",
    "sign_of_real",
    "galois_conjugate",
    "kernel",
    "rank",
    "echelon_basis",
]


class CycloError(ValueError):
    pass


_TERM = re.compile(
    r"(?P<sign>[+-]?)(?P<coef>\d+(?:/\d+)?)?(?P<star>\*)?(?:(?P<var>[a-zA-Z]+)(?:\^(?P<exp>\d+))?)?"
)


def _poly_divmod_int(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (low degree first) by a monic b."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1]
        if c:
            q[k] = c
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return q, a[: len(b) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


class CycloContext:
    """The field Q(zeta_N); obtain instances through :func:`context`."""

    def __init__(self, n: int) -> None:
        if n < 1:
            raise CycloError("conductor must be positive")
        self.n = n
        self.phi = tuple(cyclotomic_polynomial(n))
        self.degree = len(self.phi) - 1
        deg = self.degree
        # powers[k] = zeta^k reduced, for 0 <= k < max(n, 2*deg)
        powers = []
        cur = [0] * deg
        cur[0] = 1
        for _ in range(max(n, 2 * deg)):
            powers.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [c - top * p for c, p in zip(cur, self.phi[:-1])]
        self.powers = tuple(powers)
        self._zero = CycloElem(self, (mpq(0),) * deg)
        self._one = CycloElem(self, (mpq(1),) + (mpq(0),) * (deg - 1))
        self._cos_cache: dict[int, list] = {}

    def __repr__(self) -> str:
        return f"Q(zeta_{self.n})"

    def zero(self) -> "CycloElem":
        return self._zero

    def one(self) -> "CycloElem":
        return self._one

    def rational(self, q) -> "CycloElem":
        if not q:
            return self._zero
        return CycloElem(self, (mpq(q),) + (mpq(0),) * (self.degree - 1))

    def zeta(self, k: int = 1) -> "CycloElem":
        return CycloElem(self, tuple(mpq(c) for c in self.powers[k % self.n]))

    def from_coeffs(self, coeffs: Sequence) -> "CycloElem":
        """Element sum_k coeffs[k] * zeta^k for any length of ``coeffs``."""
        acc = [mpq(0)] * self.degree
        for k, c in enumerate(coeffs):
            if c:
                c = mpq(c)
                for j, p in enumerate(self.powers[k % self.n]):
                    if p:
                        acc[j] += c * p
        return CycloElem(self, tuple(acc))

    def parse(self, text: str, var: str = "z") -> "CycloElem":
        """Read a polynomial in ``var`` (meaning zeta_N) such as ``1/2*z^2-z+3``."""
        body = text.replace(" ", "")
        if not body:
            raise CycloError("empty cyclotomic literal")
        coeffs: dict[int, mpq] = {}
        pos = 0
        for m in _TERM.finditer(body):
            if m.start() != pos or not m.group(0) or (m.group("coef") is None and m.group("var") is None):
                raise CycloError(f"cannot parse {text!r}")
            if m.group("var") is not None and m.group("var") != var:
                raise CycloError(f"unknown variable in {text!r}")
            if m.group("coef") is None and m.group("star"):
                raise CycloError(f"cannot parse {text!r}")
            c = mpq(m.group("coef")) if m.group("coef") is not None else mpq(1)
            if m.group("sign") == "-":
                c = -c
            k = 0 if m.group("var") is None else int(m.group("exp") or 1)
            coeffs[k] = coeffs.get(k, mpq(0)) + c
            pos = m.end()
            if pos == len(body):
                break
        if pos != len(body):
            raise CycloError(f"cannot parse {text!r}")
        top = max(coeffs)
        return self.from_coeffs([coeffs.get(k, 0) for k in range(top + 1)])

    def coerce(self, x) -> "CycloElem":
        if isinstance(x, CycloElem):
            if x.ctx is not self:
                raise CycloError("context mismatch")
            return x
        return self.rational(x)

    def _reduce(self, c: list) -> "CycloElem":
        deg = self.degree
        out = c[:deg] + [mpq(0)] * (deg - len(c[:deg]))
        for k in range(deg, len(c)):
            ck = c[k]
            if ck:
                for j, p in enumerate(self.powers[k]):
                    if p:
                        out[j] += ck * p
        return CycloElem(self, tuple(out))

    def cos_intervals(self, prec: int) -> list:
        """Intervals for cos(2*pi*k/N), k < N, at ``prec`` bits."""
        got = self._cos_cache.get(prec)
        if got is None:
            iv = mpmath.iv
            with mpmath.workprec(prec):
                old = iv.prec
                iv.prec = prec
                try:
                    got = [iv.cos(2 * iv.pi * k / self.n) for k in range(self.n)]
                finally:
                    iv.prec = old
            self._cos_cache[prec] = got
        return got


@lru_cache(maxsize=None)
def context(n: int) -> CycloContext:
    return CycloContext(n)


class CycloElem:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: CycloContext, coeffs: tuple) -> None:
        self.ctx = ctx
        self.c = coeffs

    # -- comparisons ----------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycloElem):
            return other.ctx is self.ctx and other.c == self.c
        if isinstance(other, (int, mpq)) or hasattr(other, "denominator"):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"CycloElem({self.to_string()} in {self.ctx})"

    def to_string(self, var: str = "z") -> str:
        terms = []
        for k, c in enumerate(self.c):
            if not c:
                continue
            coeff = str(c)
            if k == 0:
                terms.append(coeff)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{coeff}*{mono}")
        return "+".join(terms).replace("+-", "-") or "0"

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_value(self) -> mpq:
        if not self.is_rational():
            raise CycloError("element is not rational")
        return self.c[0]

    # -- arithmetic -----------------------------------------------------

    def _other(self, other) -> "CycloElem":
        return self.ctx.coerce(other)

    def __add__(self, other) -> "CycloElem":
        o = self._other(other)
        return CycloElem(self.ctx, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __sub__(self, other) -> "CycloElem":
        o = self._other(other)
        return CycloElem(self.ctx, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other) -> "CycloElem":
        return self._other(other) - self

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.ctx, tuple(-a for a in self.c))

    def __mul__(self, other) -> "CycloElem":
        if not isinstance(other, CycloElem):
            q = mpq(other)
            return CycloElem(self.ctx, tuple(a * q for a in self.c))
        if other.ctx is not self.ctx:
            raise CycloError("context mismatch")
        a, b = self.c, other.c
        if not any(a[1:]):
            return other * a[0]
        if not any(b[1:]):
            return self * b[0]
        out = [mpq(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self.ctx._reduce(out)

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return self.ctx.rational(1 / self.c[0])
        # Extended Euclid in Q[x] with Phi_N.
        ctx = self.ctx
        r0 = [mpq(c) for c in ctx.phi]
        r1 = _trim(list(self.c))
        s0: list = [mpq(0)]
        s1: list = [mpq(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is a nonzero constant; r0 * ... : s1 * self = r1 mod Phi
        inv = [c / r1[0] for c in s1]
        return ctx._reduce(inv)

    def __truediv__(self, other) -> "CycloElem":
        if not isinstance(other, CycloElem):
            if not other:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return self * (1 / mpq(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> "CycloElem":
        return self._other(other) * self.inverse()

    def __pow__(self, k: int) -> "CycloElem":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ctx.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- automorphisms --------------------------------------------------

    def conj(self) -> "CycloElem":
        return galois_conjugate(self, -1)

    def is_real(self) -> bool:
        return self.conj() == self

    def to_complex(self, dps: int = 30) -> mpmath.mpc:
        with mpmath.workdps(dps):
            z = mpmath.expjpi(mpmath.mpf(2) / self.ctx.n)
            return sum((mpmath.mpf(int(c.numerator)) / int(c.denominator) * z**k for k, c in enumerate(self.c)), mpmath.mpc(0))


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _trim(list(b))
    lead = b[-1]
    if len(a) < len(b):
        return [mpq(0)], _trim(a)
    q = [mpq(0)] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    rem = _trim(a[: len(b) - 1] or [mpq(0)])
    return q, rem


def _poly_mul(a: list, b: list) -> list:
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [mpq(0)] * (n - len(a))
    b = b + [mpq(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def galois_conjugate(x: CycloElem, k: int) -> CycloElem:
    """Apply zeta -> zeta^k."""
    n = x.ctx.n
    if gcd(k, n) != 1:
        raise CycloError(f"{k} is not coprime to {n}")
    coeffs = [mpq(0)] * n
    for j, c in enumerate(x.c):
        if c:
            coeffs[(j * k) % n] += c
    return x.ctx.from_coeffs(coeffs)


def sign_of_real(x: CycloElem) -> int:
    """Certified sign of a real element under zeta -> exp(2 pi i / N)."""
    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x.c[0] > 0 else -1
    if not x.is_real():
        raise CycloError("sign_of_real needs a conjugation-fixed element")
    iv = mpmath.iv
    prec = 64
    while True:
        cos = x.ctx.cos_intervals(prec)
        old = iv.prec
        iv.prec = prec
        try:
            total = iv.mpf(0)
            for k, c in enumerate(x.c):
                if c:
                    total += iv.mpf(int(c.numerator)) / int(c.denominator) * cos[k]
        finally:
            iv.prec = old
        if total.a > 0:
            return 1
        if total.b < 0:
            return -1
        prec *= 2


# ---------------------------------------------------------------------------
# Linear algebra


def _rref(ctx: CycloContext, rows: list[list[CycloElem]]) -> tuple[list[list[CycloElem]], list[int]]:
    """Reduced row echelon form; pivots chosen at the first nonzero column."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][col].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel(ctx: CycloContext, matrix: Sequence[Sequence]) -> list[tuple[CycloElem, ...]]:
    """Basis of {v : M v = 0}, one vector per free column."""
    rows = [[ctx.coerce(x) for x in row] for row in matrix]
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = _rref(ctx, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.zero()] * ncols
        v[f] = ctx.one()
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def rank(ctx: CycloContext, matrix: Sequence[Sequence]) -> int:
    rows = [[ctx.coerce(x) for x in row] for row in matrix]
    return len(_rref(ctx, rows)[1])


def echelon_basis(ctx: CycloContext, vectors: Sequence[Sequence]) -> list[tuple[CycloElem, ...]]:
    """Independent subset of ``vectors`` spanning the same space (greedy, in order)."""
    chosen: list[tuple[CycloElem, ...]] = []
    red: list[list[CycloElem]] = []
    pivots: list[int] = []
    for v in vectors:
        v = [ctx.coerce(x) for x in v]
        w = list(v)
        for row, p in zip(red, pivots):
            if not w[p].is_zero():
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        col = next((i for i, x in enumerate(w) if not x.is_zero()), None)
        if col is None:
            continue
        inv = w[col].inverse()
        w = [x * inv for x in w]
        for k, row in enumerate(red):
            if not row[col].is_zero():
                f = row[col]
                red[k] = [a - f * b for a, b in zip(row, w)]
        red.append(w)
        pivots.append(col)
        chosen.append(tuple(v))
    return chosen
