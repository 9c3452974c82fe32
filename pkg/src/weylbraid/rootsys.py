"""Root systems and (twisted) finite Weyl groups.

A datum carries the finite root set in simple-root coordinates. Group
elements are stored as permutations of that root set together with a twist
exponent: the permutation is the full action of ``w * delta**k`` on roots,
so composition, inversion, length and descent sets are cheap tuple
operations. The integer action matrix on the simple-root basis is derived
on demand.

Generator indices are 1-based in every public signature (words, parabolic
subsets); root indices and permutations are 0-based internally.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "DatumError",
    "CoxeterDatum",
    "TwistedWeylElement",
    "TypeA",
    "TwistedA",
    "BCD",
    "Exceptional",
    "ClassParam",
    "build_datum",
    "parse_type",
    "element_from_word",
    "class_representative",
    "enumerate_classes",
    "identify_class",
    "coset_minimum",
    "longest_element",
    "partitions",
    "bipartitions",
    "conjugacy_orbits",
    "random_conjugate",
    "class_to_json",
    "class_from_json",
    "format_class",
]


class DatumError(ValueError):
    """Invalid type label, rank, twist request or class parameter."""


# ---------------------------------------------------------------------------
# Class parameters


@dataclass(frozen=True, order=True)
class TypeA:
    """Conjugacy class of S_{n+1} given by its cycle type."""

    partition: tuple[int, ...]


@dataclass(frozen=True, order=True)
class TwistedA:
    """Class in W*delta for type 2A_n, keyed by the cycle type of w*w0."""

    partition: tuple[int, ...]


@dataclass(frozen=True, order=True)
class BCD:
    """Signed cycle type: ``lam`` are negative cycles, ``mu`` positive ones.

    ``marker`` is ``"I"`` or ``"II"`` for the two halves of a split class of
    W(D_n) and ``None`` otherwise.
    """

    lam: tuple[int, ...]
    mu: tuple[int, ...]
    marker: str | None = None


@dataclass(frozen=True, order=True)
class Exceptional:
    """Class of an exceptional group, named by a canonical representative.

    The representative is the minimal-length element whose reduced word is
    lexicographically smallest; ``twist`` is the delta exponent.
    """

    word: tuple[int, ...]
    twist: int = 0


ClassParam = Union[TypeA, TwistedA, BCD, Exceptional]


def class_to_json(cp: ClassParam) -> dict:
    if isinstance(cp, TypeA):
        return {"type": "A", "partition": list(cp.partition)}
    if isinstance(cp, TwistedA):
        return {"type": "2A", "partition": list(cp.partition)}
    if isinstance(cp, BCD):
        return {"type": "BCD", "lambda": list(cp.lam), "mu": list(cp.mu), "marker": cp.marker}
    return {"type": "EXC", "word": list(cp.word), "twist": cp.twist}


def class_from_json(obj: dict) -> ClassParam:
    kind = obj.get("type")
    if kind == "A":
        return TypeA(tuple(obj["partition"]))
    if kind == "2A":
        return TwistedA(tuple(obj["partition"]))
    if kind == "BCD":
        return BCD(tuple(obj["lambda"]), tuple(obj["mu"]), obj.get("marker"))
    if kind == "EXC":
        return Exceptional(tuple(obj["word"]), int(obj.get("twist", 0)))
    raise DatumError(f"unknown class parameter kind {kind!r}")


def format_class(cp: ClassParam) -> str:
    """Short human-readable name, e.g. ``(2,1)`` or ``(1|2)``."""

    def part(p: Sequence[int]) -> str:
        return ",".join(map(str, p)) if p else "-"

    if isinstance(cp, (TypeA, TwistedA)):
        return f"({part(cp.partition)})"
    if isinstance(cp, BCD):
        tag = f"{cp.marker}" if cp.marker else ""
        return f"({part(cp.lam)}|{part(cp.mu)}){tag}"
    word = "".join(map(str, cp.word)) or "e"
    return f"[{word}]" + ("d" * cp.twist)


# ---------------------------------------------------------------------------
# Partitions


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` as weakly decreasing tuples, in reverse lex order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def bipartitions(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    for a in range(n + 1):
        for lam in partitions(a):
            for mu in partitions(n - a):
                yield lam, mu


# ---------------------------------------------------------------------------
# Datum


_EXCEPTIONAL_GRAM = {
    ("G", 2): [[2, -3], [-3, 6]],
    ("F", 4): [
        [2, -1, 0, 0],
        [-1, 2, -1, 0],
        [0, -1, 1, Fraction(-1, 2)],
        [0, 0, Fraction(-1, 2), 1],
    ],
}


def _e6_gram() -> list[list[int]]:
    g = [[2 if i == j else 0 for j in range(6)] for i in range(6)]
    for a, b in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]:
        g[a - 1][b - 1] = g[b - 1][a - 1] = -1
    return g


def _unit(n: int, i: int, c: int = 1) -> list[int]:
    v = [0] * n
    v[i] = c
    return v


def _classical_simple_roots(label: str, rank: int) -> list[list[int]]:
    """Simple roots in e-coordinates, 0-based index i is generator i+1."""
    n = rank
    if label == "A":
        return [[1 if k == i else -1 if k == i + 1 else 0 for k in range(n + 1)] for i in range(n)]
    chain = [[1 if k == i else -1 if k == i - 1 else 0 for k in range(n)] for i in range(1, n)]
    if label == "B":
        return [_unit(n, 0)] + chain
    if label == "C":
        return [_unit(n, 0, 2)] + chain
    if label == "D":
        first = [1 if k < 2 else 0 for k in range(n)]
        second = [-1 if k == 0 else 1 if k == 1 else 0 for k in range(n)]
        return [first, second] + chain[1:]
    raise DatumError(label)


class CoxeterDatum:
    """A finite root system with an optional diagram twist.

    Instances are cached by ``build_datum`` and compared by identity.
    Treat every attribute as read-only.
    """

    def __init__(
        self,
        label: str,
        rank: int,
        twisted: bool,
        gram: Sequence[Sequence[Fraction]],
        twist: Sequence[int],
        twist_order: int,
        euclid: list[list[int]] | None = None,
    ) -> None:
        self.label = label
        self.rank = rank
        self.twisted = twisted
        self.gram = tuple(tuple(Fraction(x) for x in row) for row in gram)
        r = rank
        self.cartan = tuple(
            tuple(int(2 * self.gram[i][j] / self.gram[i][i]) for j in range(r)) for i in range(r)
        )
        self.twist = tuple(twist)
        self.twist_order = twist_order
        self.euclid = euclid
        self._check()
        self._build_roots()

    # -- construction ----------------------------------------------------

    def _check(self) -> None:
        r = self.rank
        for i in range(r):
            for j in range(r):
                if 2 * self.gram[i][j] != self.cartan[i][j] * self.gram[i][i]:
                    raise DatumError("non-crystallographic Gram matrix")
                if self.cartan[self.twist[i]][self.twist[j]] != self.cartan[i][j]:
                    raise DatumError("twist does not preserve the Cartan matrix")

    def _build_roots(self) -> None:
        r = self.rank
        simple = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
        found = {s: None for s in simple}
        queue = deque(simple)
        while queue:
            beta = queue.popleft()
            for i in range(r):
                gamma = self._reflect(i, beta)
                if gamma not in found and all(c >= 0 for c in gamma):
                    found[gamma] = None
                    queue.append(gamma)
        # Simple roots first, then by height, then lexicographically.
        pos = sorted(found, key=lambda v: (sum(v), tuple(-c for c in v)))
        pos = simple + [v for v in pos if v not in set(simple)]
        self.n_pos = len(pos)
        self.roots: tuple[tuple[int, ...], ...] = tuple(pos) + tuple(tuple(-c for c in v) for v in pos)
        self.root_index = {v: k for k, v in enumerate(self.roots)}
        self.simple_perm = tuple(
            tuple(self.root_index[self._reflect(i, beta)] for beta in self.roots) for i in range(r)
        )
        self.delta_perm = tuple(
            self.root_index[self._twist_vector(beta)] for beta in self.roots
        )
        if self.euclid is not None:
            self.root_e = tuple(
                tuple(sum(c * self.euclid[j][k] for j, c in enumerate(beta)) for k in range(len(self.euclid[0])))
                for beta in self.roots
            )
            self.root_by_e = {v: k for k, v in enumerate(self.root_e)}

    def _reflect(self, i: int, beta: Sequence[int]) -> tuple[int, ...]:
        pairing = sum(self.cartan[i][j] * beta[j] for j in range(self.rank))
        out = list(beta)
        out[i] -= pairing
        return tuple(out)

    def _twist_vector(self, beta: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.rank
        for j, c in enumerate(beta):
            out[self.twist[j]] += c
        return tuple(out)

    # -- basic queries ---------------------------------------------------

    def __repr__(self) -> str:
        return f"CoxeterDatum({self.name})"

    @property
    def name(self) -> str:
        return ("2" if self.twisted else "") + f"{self.label}{self.rank}"

    @property
    def n_roots(self) -> int:
        return 2 * self.n_pos

    def is_positive(self, idx: int) -> bool:
        return idx < self.n_pos

    def neg(self, idx: int) -> int:
        return idx + self.n_pos if idx < self.n_pos else idx - self.n_pos

    def inner(self, u: Sequence, v: Sequence):
        """(u, v) for vectors in simple-root coordinates."""
        g = self.gram
        r = self.rank
        return sum(u[i] * g[i][j] * v[j] for i in range(r) for j in range(r) if u[i] and v[j])

    @cached_property
    def gram_roots(self) -> tuple[tuple[Fraction, ...], ...]:
        """Row ``k`` is the covector v -> (roots[k], v)."""
        r = self.rank
        return tuple(
            tuple(sum(beta[i] * self.gram[i][j] for i in range(r)) for j in range(r))
            for beta in self.roots
        )

    def support(self, idx: int) -> frozenset[int]:
        """1-based generators appearing in the root."""
        return frozenset(i + 1 for i, c in enumerate(self.roots[idx]) if c)

    def parabolic_roots(self, J: Iterable[int]) -> frozenset[int]:
        """Positive root indices of the standard parabolic W_J."""
        J = frozenset(J)
        return frozenset(k for k in range(self.n_pos) if self.support(k) <= J)

    @cached_property
    def order(self) -> int:
        """|W| (without the twist)."""
        return sum(1 for _ in self.elements())

    # -- elements --------------------------------------------------------

    def identity(self, twist: int = 0) -> "TwistedWeylElement":
        perm = self._delta_power(twist)
        return TwistedWeylElement(self, perm, twist % self.twist_order)

    def reflection(self, i: int) -> "TwistedWeylElement":
        """Simple reflection s_i, 1-based."""
        if not 1 <= i <= self.rank:
            raise DatumError(f"generator index {i} out of range 1..{self.rank}")
        return TwistedWeylElement(self, self.simple_perm[i - 1], 0)

    def delta(self) -> "TwistedWeylElement":
        return self.identity(1 % self.twist_order if self.twist_order > 1 else 0)

    @lru_cache(maxsize=None)
    def _delta_power(self, k: int) -> tuple[int, ...]:
        k %= self.twist_order
        perm = tuple(range(self.n_roots))
        for _ in range(k):
            perm = tuple(self.delta_perm[x] for x in perm)
        return perm

    def elements(self, twist: int = 0) -> Iterator["TwistedWeylElement"]:
        """All elements of the coset W*delta^twist (breadth-first)."""
        start = self.identity(twist)
        seen = {start.perm}
        queue = deque([start.perm])
        yield start
        gens = self.simple_perm
        while queue:
            p = queue.popleft()
            for s in gens:
                q = tuple(s[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
                    yield TwistedWeylElement(self, q, start.twist)

    def longest(self) -> "TwistedWeylElement":
        return longest_element(self, range(1, self.rank + 1))


@dataclass(frozen=True, eq=False)
class TwistedWeylElement:
    """w * delta**twist, stored as its permutation of the root set."""

    datum: CoxeterDatum
    perm: tuple[int, ...]
    twist: int = 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TwistedWeylElement)
            and other.datum is self.datum
            and other.perm == self.perm
            and other.twist == self.twist
        )

    def __hash__(self) -> int:
        return hash((self.perm, self.twist))

    def __repr__(self) -> str:
        w = "".join(f"s{i}" for i in self.word()) or "e"
        return f"<{self.datum.name} {w}" + (f" d^{self.twist}>" if self.twist else ">")

    def __mul__(self, other: "TwistedWeylElement") -> "TwistedWeylElement":
        p = self.perm
        return TwistedWeylElement(
            self.datum,
            tuple(p[x] for x in other.perm),
            (self.twist + other.twist) % self.datum.twist_order,
        )

    def __pow__(self, k: int) -> "TwistedWeylElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = self.datum.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "TwistedWeylElement":
        inv = [0] * len(self.perm)
        for x, y in enumerate(self.perm):
            inv[y] = x
        return TwistedWeylElement(self.datum, tuple(inv), (-self.twist) % self.datum.twist_order)

    def conj(self, x: "TwistedWeylElement") -> "TwistedWeylElement":
        """x * self * x^-1."""
        return x * self * x.inverse()

    # -- numerical invariants -------------------------------------------

    @cached_property
    def length(self) -> int:
        n = self.datum.n_pos
        return sum(1 for x in self.perm[:n] if x >= n)

    def inversions(self) -> frozenset[int]:
        """Positive roots sent to negative roots."""
        n = self.datum.n_pos
        return frozenset(k for k in range(n) if self.perm[k] >= n)

    def right_descents(self) -> frozenset[int]:
        n = self.datum.n_pos
        return frozenset(i + 1 for i in range(self.datum.rank) if self.perm[i] >= n)

    def left_descents(self) -> frozenset[int]:
        return self.inverse().right_descents()

    @property
    def is_identity(self) -> bool:
        return self.twist == 0 and self.perm == tuple(range(len(self.perm)))

    @cached_property
    def order(self) -> int:
        """Order in W * <delta>, twist included."""
        d = 1
        x = self
        while not x.is_identity:
            x = x * self
            d += 1
        return d

    def untwisted(self) -> "TwistedWeylElement":
        """The W-part w of w * delta**k."""
        return self * self.datum.identity(-self.twist)

    def in_parabolic(self, J: Iterable[int]) -> bool:
        J = frozenset(J)
        return self.twist == 0 and all(self.datum.support(k) <= J for k in self.inversions())

    # -- linear action ---------------------------------------------------

    @cached_property
    def action(self) -> tuple[tuple[int, ...], ...]:
        """Integer matrix: column j holds the image of simple root j."""
        r = self.datum.rank
        cols = [self.datum.roots[self.perm[j]] for j in range(r)]
        return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))

    def apply(self, v: Sequence):
        m = self.action
        r = self.datum.rank
        return tuple(sum(m[i][j] * v[j] for j in range(r) if v[j]) for i in range(r))

    def apply_root(self, idx: int) -> int:
        return self.perm[idx]

    # -- words ----------------------------------------------------------

    def word(self) -> tuple[int, ...]:
        """Lexicographically smallest reduced word of the W-part (1-based)."""
        w = self.untwisted()
        n = self.datum.n_pos
        inv = list(w.inverse().perm)
        gens = self.datum.simple_perm
        out: list[int] = []
        while True:
            for i in range(self.datum.rank):
                if inv[i] >= n:
                    out.append(i + 1)
                    s = gens[i]
                    inv = [inv[s[x]] for x in range(len(inv))]
                    break
            else:
                return tuple(out)


# ---------------------------------------------------------------------------
# Building data


def parse_type(text: str) -> tuple[str, int, bool]:
    """Parse ``"A3"``, ``"2A3"`` or ``"^2D4"`` into (label, rank, twisted)."""
    t = text.strip().lstrip("^")
    twisted = False
    if t.startswith("2") and len(t) > 1 and t[1].isalpha():
        twisted = True
        t = t[1:]
    label, digits = t[:1].upper(), t[1:]
    if not digits.isdigit() or label not in "ABCDEFG":
        raise DatumError(f"cannot parse type {text!r}")
    return label, int(digits), twisted


@lru_cache(maxsize=None)
def build_datum(label: str, rank: int, twisted: bool = False) -> CoxeterDatum:
    label = label.upper()
    if rank < 1:
        raise DatumError("rank must be positive")
    identity = list(range(rank))
    if label in "ABCD":
        if label in "BC" and rank < 2:
            raise DatumError(f"{label}{rank} needs rank >= 2")
        if label == "D" and rank < 2:
            raise DatumError("D_n needs rank >= 2")
        euclid = _classical_simple_roots(label, rank)
        dim = len(euclid[0])
        gram = [[sum(a[k] * b[k] for k in range(dim)) for b in euclid] for a in euclid]
        twist, order = identity, 1
        if twisted:
            if label == "A":
                twist, order = [rank - 1 - i for i in range(rank)], 2
            elif label == "D":
                twist, order = [1, 0] + identity[2:], 2
            else:
                raise DatumError(f"type {label} has no diagram automorphism")
        return CoxeterDatum(label, rank, twisted, gram, twist, order, euclid)
    if label == "E":
        if rank in (7, 8):
            raise DatumError("E7 and E8 are not supported (group too large)")
        if rank != 6:
            raise DatumError(f"unknown type E{rank}")
        twist, order = identity, 1
        if twisted:
            twist, order = [5, 1, 4, 3, 2, 0], 2
        return CoxeterDatum("E", 6, twisted, _e6_gram(), twist, order)
    if (label, rank) in _EXCEPTIONAL_GRAM:
        if twisted:
            raise DatumError(f"type {label}{rank} has no diagram automorphism")
        return CoxeterDatum(label, rank, False, _EXCEPTIONAL_GRAM[label, rank], identity, 1)
    raise DatumError(f"unknown type {label}{rank}")


def element_from_word(datum: CoxeterDatum, word: Iterable[int], twist_exp: int = 0) -> TwistedWeylElement:
    out = datum.identity()
    for i in word:
        out = out * datum.reflection(i)
    return out * datum.identity(twist_exp)


def coset_minimum(
    datum: CoxeterDatum, J: Iterable[int], w: TwistedWeylElement, side: str = "left"
) -> TwistedWeylElement:
    """Minimal-length element of W_J*w, w*W_J or W_J*w*W_J."""
    J = sorted(set(J))
    n = datum.n_pos
    if side not in ("left", "right", "double"):
        raise DatumError(f"bad side {side!r}")
    changed = True
    while changed:
        changed = False
        if side in ("left", "double"):
            inv = w.inverse().perm
            for j in J:
                if inv[j - 1] >= n:
                    w = datum.reflection(j) * w
                    inv = w.inverse().perm
                    changed = True
        if side in ("right", "double"):
            for j in J:
                if w.perm[j - 1] >= n:
                    w = w * datum.reflection(j)
                    changed = True
    return w


@lru_cache(maxsize=None)
def _longest(datum: CoxeterDatum, J: frozenset[int]) -> TwistedWeylElement:
    w = datum.identity()
    n = datum.n_pos
    grown = True
    while grown:
        grown = False
        for j in sorted(J):
            if w.perm[j - 1] < n:
                w = w * datum.reflection(j)
                grown = True
    return w


def longest_element(datum: CoxeterDatum, J: Iterable[int]) -> TwistedWeylElement:
    return _longest(datum, frozenset(J))


# ---------------------------------------------------------------------------
# Signed permutations (classical types)


def _from_signed_permutation(datum: CoxeterDatum, sp: Sequence[int], twist: int = 0) -> TwistedWeylElement:
    """Element acting on e-coordinates by e_j -> sign * e_|sp[j]|.

    ``sp`` is 1-based and signed. The resulting permutation is the full
    action; ``twist`` records the coset it is meant to live in.
    """
    dim = len(datum.euclid[0])
    perm = []
    for v in datum.root_e:
        img = [0] * dim
        for j, c in enumerate(v):
            if c:
                t = sp[j]
                img[abs(t) - 1] += c if t > 0 else -c
        key = tuple(img)
        if key not in datum.root_by_e:
            raise DatumError("signed permutation does not preserve the root system")
        perm.append(datum.root_by_e[key])
    return TwistedWeylElement(datum, tuple(perm), twist % datum.twist_order)


def _signed_cycles_rep(lam: Sequence[int], mu: Sequence[int], n: int) -> list[int]:
    sp = [0] * n
    start = 0
    for length, sign in [(p, -1) for p in lam] + [(p, 1) for p in mu]:
        for k in range(length):
            src = start + k
            dst = start + (k + 1) % length
            s = sign if k == length - 1 else 1
            sp[src] = s * (dst + 1)
        start += length
    if start != n:
        raise DatumError("bipartition size does not match the rank")
    return sp


def _cycle_perm(partition: Sequence[int], n: int) -> list[int]:
    return _signed_cycles_rep((), partition, n)


def _e_images(datum: CoxeterDatum, w: TwistedWeylElement) -> list[list[Fraction]]:
    """Images of e_1..e_n (types B, C, D) in e-coordinates."""
    n = datum.rank
    rb = datum.root_by_e
    re = datum.root_e

    def img(v: tuple[int, ...]) -> tuple[int, ...]:
        return re[w.perm[rb[v]]]

    out = []
    for i in range(n):
        if datum.label == "B":
            out.append([Fraction(c) for c in img(tuple(_unit(n, i)))])
        elif datum.label == "C":
            out.append([Fraction(c, 2) for c in img(tuple(_unit(n, i, 2)))])
        else:
            j = 1 if i == 0 else 0
            plus = [1 if k in (i, j) else 0 for k in range(n)]
            minus = [1 if k == i else -1 if k == j else 0 for k in range(n)]
            a, b = img(tuple(plus)), img(tuple(minus))
            out.append([Fraction(x + y, 2) for x, y in zip(a, b)])
    return out


def signed_permutation(w: TwistedWeylElement) -> list[int]:
    """Signed permutation (1-based) of a B/C/D element's full action."""
    datum = w.datum
    if datum.label not in "BCD" or datum.euclid is None:
        raise DatumError("signed permutations exist only for types B, C, D")
    out = []
    for v in _e_images(datum, w):
        (k,) = [k for k, c in enumerate(v) if c]
        out.append((k + 1) if v[k] > 0 else -(k + 1))
    return out


def permutation_A(w: TwistedWeylElement) -> list[int]:
    """Permutation (1-based) of the W-part of a type A element."""
    datum = w.datum
    u = w.untwisted()
    n = datum.rank + 1
    out = []
    for i in range(n):
        j = 1 if i == 0 else 0
        v = [1 if k == i else -1 if k == j else 0 for k in range(n)]
        img = datum.root_e[u.perm[datum.root_by_e[tuple(v)]]]
        out.append(img.index(1) + 1)
    return out


def _cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = set()
    out = []
    for s in range(1, len(perm) + 1):
        if s in seen:
            continue
        c = 0
        x = s
        while x not in seen:
            seen.add(x)
            x = perm[x - 1]
            c += 1
        out.append(c)
    return tuple(sorted(out, reverse=True))


def _signed_cycle_type(sp: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...], list[list[tuple[int, int]]]]:
    """(negative cycle lengths, positive cycle lengths, cycles with signs)."""
    seen = set()
    lam, mu, cycles = [], [], []
    for s in range(1, len(sp) + 1):
        if s in seen:
            continue
        x, sign, cyc = s, 1, []
        while x not in seen:
            seen.add(x)
            t = sp[x - 1]
            cyc.append((x, 1 if t > 0 else -1))
            sign *= 1 if t > 0 else -1
            x = abs(t)
        (lam if sign < 0 else mu).append(len(cyc))
        cycles.append(cyc)
    return tuple(sorted(lam, reverse=True)), tuple(sorted(mu, reverse=True)), cycles


def _is_split(datum: CoxeterDatum, lam: Sequence[int], mu: Sequence[int]) -> bool:
    return datum.label == "D" and not datum.twisted and not lam and all(m % 2 == 0 for m in mu)


def _split_marker(sp: Sequence[int]) -> str:
    """I if sp is W(D)-conjugate to the all-positive block representative."""
    _, _, cycles = _signed_cycle_type(sp)
    flips = 0
    for cyc in cycles:
        running = 1
        for _, s in cyc:
            if running < 0:
                flips += 1
            running *= s
    return "I" if flips % 2 == 0 else "II"


# ---------------------------------------------------------------------------
# Classes


def class_representative(datum: CoxeterDatum, cp: ClassParam) -> TwistedWeylElement:
    label, n = datum.label, datum.rank
    if isinstance(cp, TypeA):
        if label != "A" or datum.twisted or sum(cp.partition) != n + 1:
            raise DatumError(f"{cp} is not a class of {datum.name}")
        return _from_signed_permutation(datum, _cycle_perm(_canon(cp.partition), n + 1))
    if isinstance(cp, TwistedA):
        if label != "A" or not datum.twisted or sum(cp.partition) != n + 1:
            raise DatumError(f"{cp} is not a class of {datum.name}")
        x = _from_signed_permutation(datum, _cycle_perm(_canon(cp.partition), n + 1))
        w0 = datum.longest()
        return (x * w0) * datum.delta()
    if isinstance(cp, BCD):
        if label not in "BCD" or sum(cp.lam) + sum(cp.mu) != n:
            raise DatumError(f"{cp} is not a class of {datum.name}")
        lam, mu = _canon(cp.lam), _canon(cp.mu)
        twist = 0
        if label == "D":
            want = 1 if datum.twisted else 0
            if len(lam) % 2 != want:
                raise DatumError(f"{cp}: wrong parity of negative cycles for {datum.name}")
            twist = want
        split = _is_split(datum, lam, mu)
        if split != (cp.marker is not None) or cp.marker not in (None, "I", "II"):
            raise DatumError(f"{cp}: split marker mismatch")
        x = _from_signed_permutation(datum, _signed_cycles_rep(lam, mu, n), twist)
        if cp.marker == "II":
            flip = _from_signed_permutation(datum, [-1] + list(range(2, n + 1)))
            x = flip * x * flip
        return x
    if isinstance(cp, Exceptional):
        return element_from_word(datum, cp.word, cp.twist)
    raise DatumError(f"unknown class parameter {cp!r}")


def _canon(p: Sequence[int]) -> tuple[int, ...]:
    if any(x <= 0 for x in p):
        raise DatumError("partition parts must be positive")
    return tuple(sorted(p, reverse=True))


def enumerate_classes(datum: CoxeterDatum) -> list[ClassParam]:
    """Classes of W (untwisted data) or of the coset W*delta (twisted data)."""
    label, n = datum.label, datum.rank
    if label == "A":
        kind = TwistedA if datum.twisted else TypeA
        return [kind(p) for p in sorted(partitions(n + 1))]
    if label in "BCD":
        out: list[ClassParam] = []
        for lam, mu in sorted(bipartitions(n)):
            if label == "D" and len(lam) % 2 != (1 if datum.twisted else 0):
                continue
            if _is_split(datum, lam, mu):
                out += [BCD(lam, mu, "I"), BCD(lam, mu, "II")]
            else:
                out.append(BCD(lam, mu))
        return out
    return sorted(_exceptional_classes(datum))


def conjugacy_orbits(datum: CoxeterDatum, twist: int = 0) -> list[list[TwistedWeylElement]]:
    """Brute-force partition of W*delta^twist into conjugacy orbits under W."""
    elems = {e.perm: e for e in datum.elements(twist)}
    gens = [datum.reflection(i) for i in range(1, datum.rank + 1)]
    seen: set[tuple[int, ...]] = set()
    orbits = []
    for perm, e in elems.items():
        if perm in seen:
            continue
        seen.add(perm)
        orbit = [e]
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = s * x * s
                if y.perm not in seen:
                    seen.add(y.perm)
                    orbit.append(y)
                    queue.append(y)
        orbits.append(orbit)
    return orbits


@lru_cache(maxsize=None)
def _exceptional_table(datum: CoxeterDatum) -> dict[tuple[int, ...], Exceptional]:
    twist = 1 if datum.twisted else 0
    table: dict[tuple[int, ...], Exceptional] = {}
    for orbit in conjugacy_orbits(datum, twist):
        m = min(e.length for e in orbit)
        word = min(e.word() for e in orbit if e.length == m)
        cp = Exceptional(word, twist)
        for e in orbit:
            table[e.perm] = cp
    return table


def _exceptional_classes(datum: CoxeterDatum) -> set[Exceptional]:
    return set(_exceptional_table(datum).values())


def identify_class(w: TwistedWeylElement) -> ClassParam:
    """The class parameter of the class containing ``w``."""
    datum = w.datum
    label = datum.label
    if label == "A":
        if datum.twisted:
            if w.twist != 1:
                raise DatumError("element is not in the coset W*delta")
            x = w.untwisted() * datum.longest()
            return TwistedA(_cycle_type(permutation_A(x)))
        return TypeA(_cycle_type(permutation_A(w)))
    if label in "BCD":
        sp = signed_permutation(w)
        lam, mu, _ = _signed_cycle_type(sp)
        marker = _split_marker(sp) if _is_split(datum, lam, mu) else None
        return BCD(lam, mu, marker)
    try:
        return _exceptional_table(datum)[w.perm]
    except KeyError:
        raise DatumError("element is not in the enumerated coset") from None


def random_conjugate(w: TwistedWeylElement, rng, steps: int = 20) -> TwistedWeylElement:
    """Conjugate by a random word of simple reflections."""
    datum = w.datum
    for _ in range(steps):
        s = datum.reflection(rng.randrange(1, datum.rank + 1))
        w = s * w * s
    return w


def all_words(rank: int, max_len: int) -> Iterator[tuple[int, ...]]:
    for k in range(max_len + 1):
        yield from itertools.product(range(1, rank + 1), repeat=k)
