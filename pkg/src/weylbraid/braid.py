"""Twisted positive braid monoid B+(W) x| <delta> with Garside normal forms.

A braid is a left-greedy sequence of simple factors (elements of W, never
the identity) followed by a twist exponent. Simple factors are Weyl group
elements; greedy steps only consult descent sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .rootsys import CoxeterDatum, TwistedWeylElement, element_from_word

__all__ = [
    "BraidError",
    "Braid",
    "from_word",
    "lift",
    "multiply",
    "power",
    "equals",
    "right_dg_form",
    "normal_form",
    "braid_to_json",
]


class BraidError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Braid:
    datum: CoxeterDatum
    factors: tuple[TwistedWeylElement, ...]
    twist: int = 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Braid) and equals(self, other)

    def __hash__(self) -> int:
        return hash((tuple(f.perm for f in self.factors), self.twist))

    def __mul__(self, other: "Braid") -> "Braid":
        return multiply(self, other)

    def __pow__(self, k: int) -> "Braid":
        return power(self, k)

    def __repr__(self) -> str:
        body = "".join("[" + "".join(map(str, f.word())) + "]" for f in self.factors) or "1"
        return f"<braid {body}" + (f" d^{self.twist}>" if self.twist else ">")

    @property
    def length(self) -> int:
        return sum(f.length for f in self.factors)

    def projection(self) -> TwistedWeylElement:
        out = self.datum.identity()
        for f in self.factors:
            out = out * f
        return out * self.datum.identity(self.twist)

    def word(self) -> list[int]:
        return [i for f in self.factors for i in f.word()]


def _check(a: TwistedWeylElement, b: TwistedWeylElement) -> bool:
    """Is the pair (a, b) left-weighted?"""
    return a.right_descents() >= b.left_descents()


def _weight(a: TwistedWeylElement, b: TwistedWeylElement) -> tuple[TwistedWeylElement, TwistedWeylElement]:
    """Move left divisors of b into a until the pair is left-weighted."""
    datum = a.datum
    n = datum.n_pos
    while True:
        binv = b.inverse().perm
        move = None
        for j in range(datum.rank):
            if binv[j] >= n and a.perm[j] < n:
                move = j + 1
                break
        if move is None:
            return a, b
        s = datum.reflection(move)
        a, b = a * s, s * b


def normal_form(factors: Sequence[TwistedWeylElement]) -> list[TwistedWeylElement]:
    """Left-greedy normal form of a product of simple elements."""
    out: list[TwistedWeylElement] = []
    for s in factors:
        if s.is_identity:
            continue
        out.append(s)
        i = len(out) - 1
        while i > 0:
            a, b = _weight(out[i - 1], out[i])
            if a == out[i - 1]:
                break
            out[i - 1], out[i] = a, b
            i -= 1
        while out and out[-1].is_identity:
            out.pop()
        # An emptied middle factor forces another sweep; rare, so done plainly.
        if any(f.is_identity for f in out):
            out = [f for f in out if not f.is_identity]
            out = _sweep(out)
    return out


def _sweep(out: list[TwistedWeylElement]) -> list[TwistedWeylElement]:
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            if not _check(out[i], out[i + 1]):
                out[i], out[i + 1] = _weight(out[i], out[i + 1])
                changed = True
        out = [f for f in out if not f.is_identity]
    return out


def _twist_factor(datum: CoxeterDatum, k: int, f: TwistedWeylElement) -> TwistedWeylElement:
    if k % datum.twist_order == 0:
        return f
    return f.conj(datum.identity(k))


def _make(datum: CoxeterDatum, factors: Iterable[TwistedWeylElement], twist: int) -> Braid:
    return Braid(datum, tuple(normal_form(list(factors))), twist % datum.twist_order)


def from_word(datum: CoxeterDatum, word: Iterable[int], twist_exp: int = 0) -> Braid:
    return _make(datum, (datum.reflection(i) for i in word), twist_exp)


def lift(w: TwistedWeylElement) -> Braid:
    u = w.untwisted()
    factors = () if u.is_identity else (u,)
    return Braid(w.datum, factors, w.twist)


def identity_braid(datum: CoxeterDatum, twist: int = 0) -> Braid:
    return Braid(datum, (), twist % datum.twist_order)


def multiply(a: Braid, b: Braid) -> Braid:
    if a.datum is not b.datum:
        raise BraidError("braids over different data")
    if not b.factors:
        return Braid(a.datum, a.factors, (a.twist + b.twist) % a.datum.twist_order)
    moved = [_twist_factor(a.datum, a.twist, f) for f in b.factors]
    out = list(a.factors)
    combined = normal_form(out + moved) if out else normal_form(moved)
    return Braid(a.datum, tuple(combined), (a.twist + b.twist) % a.datum.twist_order)


def power(a: Braid, k: int) -> Braid:
    if k < 0:
        raise BraidError("negative powers do not exist in the positive monoid")
    out = identity_braid(a.datum)
    base = a
    while k:
        if k & 1:
            out = multiply(out, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return out


def equals(a: Braid, b: Braid) -> bool:
    return (
        a.datum is b.datum
        and a.twist == b.twist
        and len(a.factors) == len(b.factors)
        and all(x == y for x, y in zip(a.factors, b.factors))
    )


def right_dg_form(a: Braid) -> list[TwistedWeylElement]:
    """Right-greedy factors, listed left to right (twist omitted)."""
    rev = normal_form([f.inverse() for f in reversed(a.factors)])
    return [f.inverse() for f in reversed(rev)]


def braid_to_json(b: Braid) -> dict:
    return {"factors": [list(f.word()) for f in b.factors], "twist": b.twist}


def braid_from_json(datum: CoxeterDatum, obj: dict) -> Braid:
    factors = [element_from_word(datum, w) for w in obj["factors"]]
    return _make(datum, factors, int(obj.get("twist", 0)))
