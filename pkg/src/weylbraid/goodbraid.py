"""Good-position braid representatives and their combinatorial slice data.

The recursion on the irredundant angles is unrolled. Level ``j`` works in
the parabolic W_{J_{j-1}} with the twist given by conjugation by the coset
representative of the previous level; all arithmetic happens in the
ambient group, so no sub-datum is ever built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .braid import Braid, identity_braid, lift, multiply, power, right_dg_form, braid_to_json
from .eigen import (
    EigenError,
    EigenFiltration,
    Subspace,
    filtration_from_spaces,
    find_good_position_element,
    good_position_filtration,
    good_position_test,
    l_good_of,
)
from .rootsys import (
    ClassParam,
    CoxeterDatum,
    TwistedWeylElement,
    class_to_json,
    coset_minimum,
    longest_element,
)

__all__ = [
    "ConstructionError",
    "GoodRep",
    "SliceCombinatorics",
    "construct",
    "construct_indecomposable",
    "good_rep",
    "verify_good_power",
    "slice_combinatorics",
    "convexity_check",
    "fixed_roots",
    "rep_to_json",
]


class ConstructionError(EigenError):
    pass


@dataclass
class GoodRep:
    braid: Braid
    element: TwistedWeylElement
    filtration: EigenFiltration
    d: int
    # (J_{j-1}, exponent of lift(w_{J_{j-1}})) in b^d, one per irredundant angle
    power_factors: list[tuple[frozenset[int], int]] = field(default_factory=list)


def _normalizes(u: TwistedWeylElement, J: frozenset[int]) -> bool:
    images = {u.perm[j - 1] for j in J}
    return images == {j - 1 for j in J}


def _parabolic_levels(filt: EigenFiltration) -> list[frozenset[int]]:
    datum = filt.datum
    levels = [frozenset(range(1, datum.rank + 1))]
    for i in filt.irredundant:
        J = filt.parabolic_supports[i]
        if datum.parabolic_roots(J) != filt.hyperplanes[i]:
            raise ConstructionError("stabilizer of a filtration step is not a standard parabolic")
        levels.append(J)
    return levels


def construct(filt: EigenFiltration) -> GoodRep:
    """b(w, Theta) for a good position pair given as a filtration."""
    w = filt.element
    datum = w.datum
    if filt.hyperplanes and filt.hyperplanes[-1]:
        raise ConstructionError("angle sequence is not admissible")
    if not filt.hyperplanes and datum.n_pos:
        raise ConstructionError("empty angle sequence is not admissible")
    if not good_position_test(filt):
        raise ConstructionError("not a good position pair")
    levels = _parabolic_levels(filt)
    sigma = datum.identity(w.twist)
    prev = sigma
    pieces: list[Braid] = []
    for j, i in enumerate(filt.irredundant):
        J, Jprev = levels[j + 1], levels[j]
        u = coset_minimum(datum, J, w, "left")
        if not _normalizes(u, J):
            raise ConstructionError("coset representative does not normalize the parabolic")
        v = u * prev.inverse()
        if not v.in_parabolic(Jprev) or u.length != v.length + prev.length:
            raise ConstructionError("coset representatives are not nested")
        t = filt.angles[i]
        k = math.floor(t)
        frac = t - k
        top, low = longest_element(datum, Jprev), longest_element(datum, J)
        piece = power(multiply(lift(low * top), lift(top * low)), k)
        if frac == 0:
            if not v.is_identity:
                raise ConstructionError("integral angle with a nontrivial coset step")
        else:
            p, q = frac.numerator, frac.denominator
            tb = pow(p, -1, q)
            if u**q != prev**q:
                raise ConstructionError("u^q differs from the twist power")
            y = u**tb * prev ** (-tb)
            for m in range(p):
                c = prev ** (m * tb)
                piece = multiply(piece, lift(y.conj(c)))
        pieces.append(piece)
        prev = u
    if prev != w:
        raise ConstructionError("recursion did not reach the element")
    b = identity_braid(datum)
    for piece in reversed(pieces):
        b = multiply(b, piece)
    b = multiply(b, lift(sigma))
    if b.projection() != w:
        raise ConstructionError("braid does not project to the element")
    if b.length != l_good_of(filt):
        raise ConstructionError(f"length {b.length} differs from the formula {l_good_of(filt)}")
    return GoodRep(b, w, filt, w.order, _power_factors(filt, levels, w.order))


def _power_factors(filt: EigenFiltration, levels: list[frozenset[int]], d: int) -> list[tuple[frozenset[int], int]]:
    out = []
    last = Fraction(0)
    for j, i in enumerate(filt.irredundant):
        t = filt.angles[i]
        e = 2 * d * (t - last)
        if e.denominator != 1:
            raise ConstructionError("d * theta / pi is not integral")
        out.append((levels[j], int(e)))
        last = t
    return out


def construct_indecomposable(
    w: TwistedWeylElement, spaces: Sequence[Subspace], angles: Sequence[Fraction]
) -> GoodRep:
    """b(w, V, Theta_V) for a good position triple."""
    for s in spaces:
        moved = s.transform(w)
        if (moved + s).dim != s.dim:
            raise ConstructionError("subspace is not stable under the element")
        if s.dim > 2:
            raise ConstructionError("subspace is not indecomposable")
    return construct(filtration_from_spaces(w, angles, spaces))


def good_rep(datum: CoxeterDatum, cp: ClassParam, n: int = 1) -> GoodRep:
    _, filt = find_good_position_element(datum, cp, n)
    return construct(filt)


def _rhs(rep: GoodRep, half: bool) -> Braid:
    """Product of longest-element powers times sigma^d (or sigma^(d/2)).

    For the half power the twist is written on the left: when sigma^(d/2)
    does not stabilize the parabolics the twist-on-the-right form already
    fails to project to the element.
    """
    datum = rep.element.datum
    k = rep.d // 2 if half else rep.d
    sigma = lift(datum.identity(rep.element.twist * k))
    out = sigma if half else identity_braid(datum)
    for J, e in rep.power_factors:
        out = multiply(out, power(lift(longest_element(datum, J)), e // 2 if half else e))
    return out if half else multiply(out, sigma)


def verify_good_power(rep: GoodRep) -> tuple[bool, dict | None]:
    """Check b^d against the product of longest-element powers (and d/2 if even)."""
    checks = [(rep.d, False)]
    if rep.d % 2 == 0:
        if any(e % 2 for _, e in rep.power_factors):
            return False, {"reason": "odd exponent in the half identity"}
        checks.append((rep.d // 2, True))
    for k, half in checks:
        lhs = power(rep.braid, k)
        rhs = _rhs(rep, half)
        if lhs != rhs:
            return False, {"power": k, "lhs": braid_to_json(lhs), "rhs": braid_to_json(rhs)}
    return True, None


# ---------------------------------------------------------------------------
# Slice combinatorics


def fixed_roots(w: TwistedWeylElement) -> frozenset[int]:
    return frozenset(k for k in range(w.datum.n_roots) if w.perm[k] == k)


@dataclass
class SliceCombinatorics:
    fixed_roots: frozenset[int]
    inv: frozenset[int]
    w_prime: TwistedWeylElement
    n: int
    w: TwistedWeylElement
    r_sets: list[frozenset[int]]  # R_m, ..., R_1


def slice_combinatorics(rep: GoodRep, n: int) -> SliceCombinatorics:
    datum = rep.element.datum
    wt = rep.element
    w = wt.untwisted()
    fixed = fixed_roots(wt)
    inv = w.inverse().inversions()
    pos_fixed = frozenset(k for k in fixed if k < datum.n_pos)
    J = frozenset(i + 1 for i in range(datum.rank) if i in pos_fixed)
    if datum.parabolic_roots(J) != pos_fixed:
        raise ConstructionError("fixed roots do not form a standard parabolic")
    wp = longest_element(datum, J)
    if (wp * w).length != wp.length + w.length:
        raise ConstructionError("l(w'w) != l(w') + l(w)")
    expected = [wp] * (2 * n - 1) + [wp * w]
    expected = [f for f in expected if not f.is_identity]
    got = right_dg_form(rep.braid)
    if got != expected:
        raise ConstructionError(f"right normal form {got} does not have shape (w')^(2n-1)(w'w)")
    r_sets = []
    acc = datum.identity()
    for f in got:  # b_m first
        inv_f = f.inverse().inversions()
        r_sets.append(frozenset(acc.perm[k] for k in inv_f))
        acc = acc * f
    return SliceCombinatorics(fixed, inv, wp, n, w, r_sets)


def _convex(datum: CoxeterDatum, S: frozenset[int]) -> bool:
    roots = datum.roots
    idx = datum.root_index
    for a in S:
        for b in S:
            if a == b:
                continue
            for m in range(1, 4):
                for k in range(1, 4):
                    v = tuple(m * x + k * y for x, y in zip(roots[a], roots[b]))
                    j = idx.get(v)
                    if j is not None and j not in S:
                        return False
    return True


def convexity_check(w: TwistedWeylElement) -> bool:
    datum = w.datum
    fixed = fixed_roots(w)
    inv = w.untwisted().inverse().inversions()
    plus = frozenset(k for k in fixed if k < datum.n_pos) | inv
    minus = frozenset(k for k in fixed if k >= datum.n_pos) | inv
    return _convex(datum, plus) and _convex(datum, minus)


def rep_to_json(rep: GoodRep, cp: ClassParam | None = None, verified: bool | None = None) -> dict:
    out = {
        "element": {"word": list(rep.element.word()), "twist": rep.element.twist},
        "braid": braid_to_json(rep.braid),
        "braid_word": [i for f in right_dg_form(rep.braid) for i in f.word()],
        "right_normal_form": [list(f.word()) for f in right_dg_form(rep.braid)],
        "length": rep.braid.length,
        "d": rep.d,
        "angles": [str(t) for t in rep.filtration.angles],
        "irredundant_angles": [str(t) for t in rep.filtration.irredundant_angles],
        "power_factors": [{"J": sorted(J), "exponent": e} for J, e in rep.power_factors],
    }
    if cp is not None:
        out["class"] = class_to_json(cp)
    if verified is not None:
        out["good_power_identity"] = verified
    return out
