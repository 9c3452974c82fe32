"""Eigen-structure of twisted Weyl elements on the reflection representation.

Angles are exact rationals ``t = theta / (2 pi)``. Real eigenspaces are
presented over Q(zeta_d), d the element order, by conjugation-fixed
coordinate vectors in the simple-root basis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .cyclo import CycloContext, CycloElem, context, echelon_basis, kernel, sign_of_real
from .rootsys import (
    ClassParam,
    CoxeterDatum,
    TwistedWeylElement,
    class_representative,
)

__all__ = [
    "EigenError",
    "Subspace",
    "EigenFiltration",
    "eigen_angles",
    "complex_eigenspace",
    "real_eigenspace",
    "build_filtration",
    "filtration_from_spaces",
    "complete_sequence",
    "good_position_test",
    "find_good_position_element",
    "l_good",
    "l_good_of",
    "dim_fixed_space",
    "indecomposable_plane",
    "fold",
    "strictly_feasible",
]


class EigenError(RuntimeError):
    """An internal contradiction (a claimed identity failed)."""


def fold(t: Fraction) -> Fraction:
    """Representative of +-theta mod 2 pi in [0, 1/2]."""
    f = Fraction(t) % 1
    return min(f, 1 - f)


@dataclass(frozen=True)
class Subspace:
    ctx: CycloContext
    basis: tuple[tuple[CycloElem, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        ctx = _common(self.ctx, other.ctx)
        vecs = [_lift(v, ctx) for v in self.basis + other.basis]
        return Subspace(ctx, tuple(echelon_basis(ctx, vecs)))

    def orthogonal_to_root(self, datum: CoxeterDatum, idx: int) -> bool:
        g = datum.gram_roots[idx]
        return all(_dot(g, v).is_zero() for v in self.basis)

    def transform(self, w: TwistedWeylElement) -> "Subspace":
        m = w.action
        r = len(m)
        zero = self.ctx.zero()
        out = []
        for v in self.basis:
            out.append(tuple(sum((v[j] * m[i][j] for j in range(r) if m[i][j]), zero) for i in range(r)))
        return Subspace(self.ctx, tuple(out))


def _common(a: CycloContext, b: CycloContext) -> CycloContext:
    if a is b:
        return a
    from math import lcm

    return context(lcm(a.n, b.n))


def _lift(v: Sequence[CycloElem], ctx: CycloContext) -> tuple[CycloElem, ...]:
    """Embed a vector over a subfield Q(zeta_m) into Q(zeta_N), m | N."""
    out = []
    for x in v:
        if x.ctx is ctx:
            out.append(x)
            continue
        step = ctx.n // x.ctx.n
        coeffs = [0] * ctx.n
        for k, c in enumerate(x.c):
            coeffs[k * step] = c
        out.append(ctx.from_coeffs(coeffs))
    return tuple(out)


def _dot(g: Sequence, v: Sequence[CycloElem]) -> CycloElem:
    acc = None
    for a, x in zip(g, v):
        if a and not x.is_zero():
            term = x * a
            acc = term if acc is None else acc + term
    return acc if acc is not None else v[0].ctx.zero()


# ---------------------------------------------------------------------------
# Eigenspaces


def _ctx_for(w: TwistedWeylElement) -> CycloContext:
    return context(w.order)


@lru_cache(maxsize=4096)
def complex_eigenspace(w: TwistedWeylElement, t: Fraction) -> tuple[tuple[CycloElem, ...], ...]:
    """Kernel of M - exp(2 pi i t) over Q(zeta_d)."""
    d = w.order
    ctx = _ctx_for(w)
    k = Fraction(t) * d
    if k.denominator != 1:
        return ()
    lam = ctx.zeta(int(k))
    m = w.action
    r = len(m)
    rows = [[ctx.rational(m[i][j]) - (lam if i == j else 0) for j in range(r)] for i in range(r)]
    return tuple(kernel(ctx, rows))


def eigen_angles(w: TwistedWeylElement) -> list[Fraction]:
    """Distinct t in [0, 1/2] with exp(2 pi i t) an eigenvalue."""
    d = w.order
    out = []
    seen = set()
    for k in range(d // 2 + 1):
        t = Fraction(k, d)
        if t in seen:
            continue
        seen.add(t)
        if complex_eigenspace(w, t):
            out.append(t)
    return out


@lru_cache(maxsize=4096)
def real_eigenspace(w: TwistedWeylElement, t: Fraction) -> Subspace:
    t = fold(t)
    ctx = _ctx_for(w)
    cplx = complex_eigenspace(w, t)
    if t in (0, Fraction(1, 2)):
        return Subspace(ctx, tuple(echelon_basis(ctx, cplx)))
    d = w.order
    zeta = ctx.zeta(int(t * d))
    rescue = zeta - zeta.inverse()
    vecs = []
    for v in cplx:
        x = tuple(a + a.conj() for a in v)
        if all(a.is_zero() for a in x):
            v = tuple(a * rescue for a in v)
            x = tuple(a + a.conj() for a in v)
        vecs.append(x)
        vecs.append(tuple(w.apply(x)))
    return Subspace(ctx, tuple(echelon_basis(ctx, vecs)))


def dim_fixed_space(w: TwistedWeylElement) -> int:
    m = w.action
    r = len(m)
    ctx = context(1)
    rows = [[m[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    return len(kernel(ctx, rows))


def complete_sequence(w: TwistedWeylElement, n: int = 1) -> list[Fraction]:
    """Increasing complete sequence in (0, 1/2] with n appended if 1 is an eigenvalue."""
    angles = eigen_angles(w)
    out = [t for t in angles if t > 0]
    if angles and angles[0] == 0:
        out.append(Fraction(n))
    return out


def indecomposable_plane(w: TwistedWeylElement, v: Sequence[CycloElem]) -> Subspace:
    if all(x.is_zero() for x in v):
        raise EigenError("zero vector has no indecomposable plane")
    ctx = v[0].ctx
    wv = tuple(w.apply(v))
    wwv = tuple(w.apply(wv))
    # v must satisfy w(v) + w^-1(v) = c v, i.e. w^2 v - c w v + v = 0 for some c.
    span = echelon_basis(ctx, [v, wv])
    if len(span) == 2:
        # coordinates of w^2 v in terms of (v, wv) must match a real eigenvector relation
        rows = [[v[i], wv[i], wwv[i]] for i in range(len(v))]
        ker = kernel(ctx, rows)
        if len(ker) != 1 or ker[0][2].is_zero() or not (ker[0][0] - ker[0][2]).is_zero():
            raise EigenError("vector is not in a single real eigenspace")
    return Subspace(ctx, tuple(span))


# ---------------------------------------------------------------------------
# Filtrations


@dataclass
class EigenFiltration:
    element: TwistedWeylElement
    angles: tuple[Fraction, ...]
    steps: tuple[Subspace, ...]
    hyperplanes: tuple[frozenset[int], ...]  # H_{F_i}, i = 1..m (positive root indices)
    irredundant: tuple[int, ...]  # 0-based positions where H strictly drops

    @property
    def datum(self) -> CoxeterDatum:
        return self.element.datum

    @cached_property
    def spaces(self) -> tuple[Subspace, ...]:
        out = []
        cur: Subspace | None = None
        for s in self.steps:
            cur = s if cur is None else cur + s
            out.append(cur)
        return tuple(out)

    @property
    def parabolic_supports(self) -> tuple[frozenset[int], ...]:
        return tuple(_support(self.datum, h) for h in self.hyperplanes)

    def hyperplanes_before(self, i: int) -> frozenset[int]:
        return self.hyperplanes[i - 1] if i > 0 else frozenset(range(self.datum.n_pos))

    def restricted(self, positions: Sequence[int]) -> "EigenFiltration":
        """The filtration of a subsequence of the angles."""
        steps = [self.steps[i] for i in positions]
        angles = [self.angles[i] for i in positions]
        return filtration_from_spaces(self.element, angles, steps)

    @property
    def irredundant_angles(self) -> list[Fraction]:
        return [self.angles[i] for i in self.irredundant]

    def drops(self) -> list[frozenset[int]]:
        """Positive roots dropped at each irredundant step."""
        return [self.hyperplanes_before(i) - self.hyperplanes[i] for i in self.irredundant]

    def transport(self, u: TwistedWeylElement) -> "EigenFiltration":
        """Filtration of u w u^-1, obtained by moving every space by u."""
        datum = self.datum
        new = self.element.conj(u)
        hyper = []
        for h in self.hyperplanes:
            img = set()
            for k in h:
                j = u.perm[k]
                img.add(j if j < datum.n_pos else datum.neg(j))
            hyper.append(frozenset(img))
        return EigenFiltration(new, self.angles, tuple(s.transform(u) for s in self.steps), tuple(hyper), self.irredundant)


def _support(datum: CoxeterDatum, h: frozenset[int]) -> frozenset[int]:
    return frozenset(i + 1 for i in range(datum.rank) if i in h)


def _irredundant(datum: CoxeterDatum, hyper: Sequence[frozenset[int]]) -> tuple[int, ...]:
    prev = frozenset(range(datum.n_pos))
    out = []
    for i, h in enumerate(hyper):
        if h != prev:
            out.append(i)
        prev = h
    return tuple(out)


def build_filtration(w: TwistedWeylElement, angles: Sequence[Fraction]) -> EigenFiltration:
    datum = w.datum
    angles = tuple(Fraction(t) for t in angles)
    hyper = []
    cur = frozenset(range(datum.n_pos))
    steps = []
    for t in angles:
        f = fold(t)
        cplx = complex_eigenspace(w, f)
        cur = frozenset(k for k in cur if all(_dot(datum.gram_roots[k], v).is_zero() for v in cplx))
        hyper.append(cur)
        steps.append(real_eigenspace(w, f))
    return EigenFiltration(w, angles, tuple(steps), tuple(hyper), _irredundant(datum, hyper))


def filtration_from_spaces(w: TwistedWeylElement, angles: Sequence[Fraction], steps: Sequence[Subspace]) -> EigenFiltration:
    datum = w.datum
    hyper = []
    cur = frozenset(range(datum.n_pos))
    for s in steps:
        cur = frozenset(k for k in cur if s.orthogonal_to_root(datum, k))
        hyper.append(cur)
    return EigenFiltration(w, tuple(Fraction(t) for t in angles), tuple(steps), tuple(hyper), _irredundant(datum, hyper))


# ---------------------------------------------------------------------------
# Good position


def strictly_feasible(rows: Sequence[Sequence[CycloElem]]) -> bool:
    """Is {c : a . c > 0 for every row a} nonempty? Exact Fourier-Motzkin."""
    cons = [tuple(r) for r in rows]
    if not cons:
        return True
    nvars = len(cons[0])
    for x in range(nvars):
        cons = _normalize(cons)
        if cons is None:
            return False
        pos, neg, rest = [], [], []
        for a in cons:
            s = sign_of_real(a[x])
            (pos if s > 0 else neg if s < 0 else rest).append(a)
        if pos and neg:
            for p in pos:
                for q in neg:
                    # p[x] = 1, q[x] = -1 after normalization unless the pivot differs
                    cp, cq = -q[x], p[x]
                    rest.append(tuple(cp * a + cq * b for a, b in zip(p, q)))
        cons = rest
        if not cons:
            return True
    cons = _normalize(cons)
    return cons is not None and not cons


def _normalize(cons: list) -> list | None:
    """Scale rows to leading coefficient +-1 and drop duplicates; None if 0 > 0 appears."""
    out = {}
    for a in cons:
        lead = next((v for v in a if not v.is_zero()), None)
        if lead is None:
            return None
        s = sign_of_real(lead)
        scale = lead.inverse() * s
        b = tuple(v * scale for v in a)
        out[tuple(v.c for v in b)] = b
    return list(out.values())


def _prefix_good(datum: CoxeterDatum, space: Subspace, hyper: frozenset[int]) -> bool:
    """C0-bar meets the regular part of the space.

    Equivalent to: some z in the space is strictly positive on every simple
    root not orthogonal to it.
    """
    if space.dim == datum.rank and not hyper:
        return True
    rows = []
    for j in range(datum.rank):
        if j in hyper:
            continue
        g = datum.gram_roots[j]
        rows.append(tuple(_dot(g, v) for v in space.basis))
    return strictly_feasible(rows)


def good_position_test(filt: EigenFiltration) -> bool:
    datum = filt.datum
    seen = set()
    for space, h in zip(filt.spaces, filt.hyperplanes):
        key = (space.dim, h)
        if key in seen:
            continue
        seen.add(key)
        if not _prefix_good(datum, space, h):
            return False
    return True


def _generic_vector(datum: CoxeterDatum, space: Subspace) -> tuple[CycloElem, ...]:
    """A vector of the space not orthogonal to any root that is not orthogonal to the space."""
    targets = [k for k in range(datum.n_pos) if not space.orthogonal_to_root(datum, k)]
    ctx = space.ctx
    for m in range(1, 10 * datum.n_pos + 10):
        v = [ctx.zero()] * datum.rank
        for l, b in enumerate(space.basis):
            coeff = m**l
            v = [a + x * coeff for a, x in zip(v, b)]
        if all(not _dot(datum.gram_roots[k], v).is_zero() for k in targets):
            return tuple(v)
    raise EigenError("no generic vector found")


def _chamber_element(filt: EigenFiltration) -> TwistedWeylElement:
    """u such that u w u^-1 is in good position (lexicographic chamber choice)."""
    datum = filt.datum
    sign = [0] * datum.n_roots
    undecided = set(range(datum.n_pos))
    for space in filt.steps:
        if not undecided:
            break
        v = _generic_vector(datum, space)
        for k in list(undecided):
            s = sign_of_real(_dot(datum.gram_roots[k], v))
            if s:
                sign[k] = s
                sign[datum.neg(k)] = -s
                undecided.discard(k)
    if undecided:
        raise EigenError("sequence is not admissible")
    u = datum.identity()
    while True:
        bad = next((i for i in range(datum.rank) if sign[i] < 0), None)
        if bad is None:
            return u
        s = datum.simple_perm[bad]
        sign = [sign[s[x]] for x in range(datum.n_roots)]
        u = datum.reflection(bad + 1) * u


def good_position_filtration(filt: EigenFiltration) -> EigenFiltration:
    """A conjugate of the filtration's element in good position."""
    if good_position_test(filt):
        return filt
    u = _chamber_element(filt)
    cand = filt.transport(u)
    if good_position_test(cand):
        return cand
    return _bfs_good(filt)


def _bfs_good(filt: EigenFiltration) -> EigenFiltration:
    datum = filt.datum
    start = filt.element
    seen = {start}
    queue = deque([(start, datum.identity())])
    while queue:
        x, u = queue.popleft()
        cand = filt.transport(u)
        if good_position_test(cand):
            return cand
        for i in range(1, datum.rank + 1):
            s = datum.reflection(i)
            y = s * x * s
            if y not in seen:
                seen.add(y)
                queue.append((y, s * u))
    raise EigenError("no good position element in the class")


def find_good_position_element(
    datum: CoxeterDatum, cp: ClassParam, n: int = 1
) -> tuple[TwistedWeylElement, EigenFiltration]:
    rep = class_representative(datum, cp)
    filt = good_position_filtration(build_filtration(rep, complete_sequence(rep, n)))
    return filt.element, filt


# ---------------------------------------------------------------------------
# Lengths


def l_good_of(filt: EigenFiltration) -> int:
    total = Fraction(0)
    for i, drop in zip(filt.irredundant, filt.drops()):
        total += 2 * filt.angles[i] * len(drop)
    if total.denominator != 1:
        raise EigenError(f"non-integral length formula {total}")
    return int(total)


def l_good(datum: CoxeterDatum, cp: ClassParam) -> int:
    rep = class_representative(datum, cp)
    return l_good_of(build_filtration(rep, complete_sequence(rep)))
