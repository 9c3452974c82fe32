"""Dimension arithmetic for affine Springer fibers.

A loop-torus element gamma of type C is recorded formally by its
eigencomponents: gamma = sum_k varpi^(k/d) gamma_k with gamma_k in the
zeta_d^k-eigenspace of w. Vectors are given in the simple-coroot basis.
Everything below depends only on which roots vanish on which components.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .cyclo import CycloElem, context
from .eigen import (
    EigenError,
    Subspace,
    build_filtration,
    complete_sequence,
    complex_eigenspace,
    dim_fixed_space,
    filtration_from_spaces,
    find_good_position_element,
    good_position_filtration,
    indecomposable_plane,
    l_good,
)
from .goodbraid import GoodRep, construct_indecomposable
from .rootsys import (
    ClassParam,
    CoxeterDatum,
    TwistedWeylElement,
    class_from_json,
    class_representative,
    class_to_json,
    element_from_word,
)

__all__ = [
    "SpringerError",
    "GammaDatum",
    "delta_C",
    "valuation_profile",
    "root_valuations",
    "dim_from_gamma",
    "shallow_gamma",
    "random_gamma",
    "deepen",
    "gamma_to_indecomposable",
    "gamma_to_json",
    "gamma_from_json",
    "galois_vanishing_symmetric",
    "irredundant_angles_unit",
]


class SpringerError(ValueError):
    """Malformed or non-regular gamma datum."""


@dataclass(frozen=True)
class GammaDatum:
    datum: CoxeterDatum
    w: TwistedWeylElement
    components: tuple[tuple[int, tuple[CycloElem, ...]], ...]  # (k, coroot coordinates)

    @property
    def d(self) -> int:
        return self.w.order

    def __post_init__(self) -> None:
        if self.w.twist:
            raise SpringerError("affine Springer data are untwisted")
        ctx = context(self.d)
        seen = set()
        for k, vec in self.components:
            if k < 1:
                raise SpringerError("component exponents must be positive (gamma is topologically nilpotent)")
            if k in seen:
                raise SpringerError(f"component k={k} given twice")
            seen.add(k)
            if len(vec) != self.datum.rank or any(x.ctx is not ctx for x in vec):
                raise SpringerError(f"component k={k} is not a rank-{self.datum.rank} vector over Q(zeta_{self.d})")
            v = _to_root_basis(self.datum, vec)
            if list(self.w.apply(v)) != [x * ctx.zeta(k) for x in v]:
                raise SpringerError(f"component k={k} is not in the zeta^{k}-eigenspace")

    def root_vectors(self) -> list[tuple[int, tuple[CycloElem, ...]]]:
        return [(k, _to_root_basis(self.datum, v)) for k, v in sorted(self.components, key=lambda c: c[0])]


def _half_norms(datum: CoxeterDatum) -> list[Fraction]:
    return [Fraction(datum.gram[j][j]) / 2 for j in range(datum.rank)]


def _to_root_basis(datum: CoxeterDatum, vec: Sequence[CycloElem]) -> tuple[CycloElem, ...]:
    """alpha_j^vee = 2 alpha_j / (alpha_j, alpha_j)."""
    return tuple(x * (1 / h) for x, h in zip(vec, _half_norms(datum)))


def _to_coroot_basis(datum: CoxeterDatum, vec: Sequence[CycloElem]) -> tuple[CycloElem, ...]:
    return tuple(x * h for x, h in zip(vec, _half_norms(datum)))


def _pair(datum: CoxeterDatum, root: int, v: Sequence[CycloElem]) -> CycloElem:
    g = datum.gram_roots[root]
    acc = v[0].ctx.zero()
    for a, x in zip(g, v):
        if a:
            acc = acc + x * a
    return acc


# ---------------------------------------------------------------------------
# Shallow elements


def delta_C(datum: CoxeterDatum, cp: ClassParam) -> int:
    """Dimension of the affine Springer fiber of a shallow element of type C."""
    w = class_representative(datum, cp)
    if w.twist:
        raise SpringerError("affine Springer data are untwisted")
    num = l_good(datum, cp) - (datum.rank - dim_fixed_space(w))
    if num < 0 or num % 2:
        raise EigenError(f"l_good - (r - r_C) = {num} is not a nonnegative even integer")
    return num // 2


def valuation_profile(datum: CoxeterDatum, cp: ClassParam) -> list[Fraction]:
    """val(alpha(gamma)) over all roots for shallow gamma, ascending."""
    w = class_representative(datum, cp)
    if w.twist:
        raise SpringerError("affine Springer data are untwisted")
    filt = build_filtration(w, complete_sequence(w))
    out = []
    for t, drop in zip(filt.irredundant_angles, filt.drops()):
        if t.numerator != 1:
            raise EigenError(f"irredundant angle {t} is not of the form 1/n")
        out += [t] * (2 * len(drop))
    if len(out) != datum.n_roots:
        raise EigenError("some root is never dropped by the complete sequence")
    if sum(out) != l_good(datum, cp):
        raise EigenError("valuation sum differs from l_good")
    return sorted(out)


def shallow_gamma(datum: CoxeterDatum, cp: ClassParam) -> GammaDatum:
    """One generic component per complete-sequence angle at minimal valuation."""
    w = class_representative(datum, cp)
    d = w.order
    comps = []
    for t in complete_sequence(w):
        k = t * d
        basis = complex_eigenspace(w, t % 1)
        targets = [r for r in range(datum.n_pos) if any(not _pair(datum, r, b).is_zero() for b in basis)]
        comps.append((int(k), _generic_combination(datum, basis, targets)))
    return GammaDatum(datum, w, tuple((k, _to_coroot_basis(datum, v)) for k, v in comps))


def _generic_combination(datum, basis, targets) -> tuple[CycloElem, ...]:
    for m in range(1, 10 * datum.n_pos + 10):
        v = list(basis[0])
        for l, b in enumerate(basis[1:], start=1):
            v = [a + x * (m**l) for a, x in zip(v, b)]
        if all(not _pair(datum, r, v).is_zero() for r in targets):
            return tuple(v)
    raise EigenError("no generic combination found")


# ---------------------------------------------------------------------------
# General gamma


def root_valuations(g: GammaDatum) -> list[int]:
    """n_alpha for every root index: the first k with alpha(gamma_k) != 0."""
    comps = g.root_vectors()
    out = []
    for r in range(g.datum.n_roots):
        n = next((k for k, v in comps if not _pair(g.datum, r, v).is_zero()), None)
        if n is None:
            raise SpringerError("gamma is not regular semisimple: a root vanishes on every component")
        out.append(n)
    return out


def dim_from_gamma(g: GammaDatum) -> Fraction:
    """(val Delta(gamma) - (r - r_C)) / 2."""
    val = Fraction(sum(root_valuations(g)), g.d)
    out = (val - (g.datum.rank - dim_fixed_space(g.w))) / 2
    if out < 0 or out.denominator != 1:
        raise EigenError(f"dimension {out} is not a nonnegative integer")
    return out


def gamma_to_indecomposable(g: GammaDatum) -> tuple[list[Subspace], list[Fraction], GoodRep]:
    """Planes V_k built from the jump components, their angles n_k/d, and the braid."""
    datum = g.datum
    n_alpha = root_valuations(g)
    jumps = sorted(set(n_alpha))
    comps = dict(g.root_vectors())
    spaces, angles = [], []
    ctx = context(g.d)
    for n in jumps:
        v = comps[n]
        real = tuple(x + x.conj() for x in v)
        if all(x.is_zero() for x in real):
            z = ctx.zeta(n)
            rescue = z - z.inverse()
            real = tuple(x * rescue + (x * rescue).conj() for x in v)
        spaces.append(indecomposable_plane(g.w, real))
        angles.append(Fraction(n, g.d))
    filt = good_position_filtration(filtration_from_spaces(g.w, angles, spaces))
    rep = construct_indecomposable(filt.element, filt.steps, filt.angles)
    if rep.braid.length * g.d != sum(n_alpha):
        raise EigenError("braid length differs from the root valuation sum")
    return list(filt.steps), angles, rep


def random_gamma(datum: CoxeterDatum, cp: ClassParam, rng) -> GammaDatum:
    """A regular gamma of type cp with random exponents and sparse components.

    Each present eigenvalue zeta^j gets at most one component at an exponent
    k = j + m d; coefficients are small random integers on the eigenspace
    basis, so some roots may vanish early. A final generic component makes
    gamma regular when needed.
    """
    w = class_representative(datum, cp)
    d = w.order
    present = [j for j in range(d) if complex_eigenspace(w, Fraction(j, d))]
    comps: dict[int, tuple[CycloElem, ...]] = {}
    for j in present:
        if rng.random() < 0.3:
            continue
        basis = complex_eigenspace(w, Fraction(j, d))
        coeffs = [rng.choice((0, 0, 1, 1, -1, 2)) for _ in basis]
        if not any(coeffs):
            coeffs[rng.randrange(len(coeffs))] = 1
        v = [basis[0][0].ctx.zero()] * datum.rank
        for c, b in zip(coeffs, basis):
            v = [a + x * c for a, x in zip(v, b)]
        k = (j or d) + d * rng.randrange(3)
        comps[k] = tuple(v)
    covered = {r for r in range(datum.n_roots) for v in comps.values() if not _pair(datum, r, v).is_zero()}
    if len(covered) < datum.n_roots:
        # complete with generic components past every chosen exponent
        top = max(comps, default=0)
        for j in present:
            basis = complex_eigenspace(w, Fraction(j, d))
            targets = [r for r in range(datum.n_pos) if any(not _pair(datum, r, b).is_zero() for b in basis)]
            k = top + 1 + (j - top - 1) % d
            if k in comps:
                k += d
            comps[k] = _generic_combination(datum, basis, targets)
    return GammaDatum(datum, w, tuple((k, _to_coroot_basis(datum, v)) for k, v in sorted(comps.items())))


def deepen(g: GammaDatum, k: int) -> GammaDatum:
    """Move the component at exponent k to k + d (same eigenvalue, deeper)."""
    comps = dict(g.components)
    if k not in comps or k + g.d in comps:
        raise SpringerError(f"cannot move component {k}")
    comps[k + g.d] = comps.pop(k)
    return GammaDatum(g.datum, g.w, tuple(sorted(comps.items())))


# ---------------------------------------------------------------------------
# Galois symmetry of vanishing (used as property checks)


def galois_vanishing_symmetric(w: TwistedWeylElement) -> bool:
    """A root orthogonal to V^(a/n) is orthogonal to V^(b/n) for all b prime to n."""
    datum = w.datum
    d = w.order
    present = {Fraction(k, d) for k in range(d) if complex_eigenspace(w, Fraction(k, d))}
    by_den: dict[int, list[Fraction]] = {}
    for t in present:
        by_den.setdefault(t.denominator, []).append(t)
    for n, ts in by_den.items():
        prim = [Fraction(a, n) for a in range(n) if gcd(a, n) == 1]
        if n > 1 and sorted(ts) != prim:
            return False
        for r in range(datum.n_pos):
            zero = [all(_pair(datum, r, v).is_zero() for v in complex_eigenspace(w, t)) for t in ts]
            if any(zero) and not all(zero):
                return False
    return True


def irredundant_angles_unit(datum: CoxeterDatum, cp: ClassParam) -> bool:
    """Irredundant angles of a good position element are of the form 2 pi / n."""
    _, filt = find_good_position_element(datum, cp)
    return all(t.numerator == 1 for t in filt.irredundant_angles)


# ---------------------------------------------------------------------------
# Serialization


def gamma_to_json(g: GammaDatum, cp: ClassParam | None = None) -> dict:
    out = {
        "type": g.datum.label,
        "rank": g.datum.rank,
        "element": list(g.w.word()),
        "components": [{"k": k, "vector": [x.to_string("z") for x in v]} for k, v in sorted(g.components, key=lambda c: c[0])],
    }
    if cp is not None:
        out["class"] = class_to_json(cp)
    return out


def gamma_from_json(obj: dict, datum: CoxeterDatum) -> GammaDatum:
    """Read a gamma file; the element is given by ``element`` (a word) or ``class``."""
    try:
        if "element" in obj:
            w = element_from_word(datum, obj["element"])
        elif "class" in obj:
            w = class_representative(datum, class_from_json(obj["class"]))
        else:
            raise SpringerError("gamma file needs an element word or a class")
        ctx = context(w.order)
        comps = []
        for c in obj["components"]:
            comps.append((int(c["k"]), tuple(ctx.parse(str(x)) for x in c["vector"])))
    except (KeyError, TypeError, AttributeError) as e:
        raise SpringerError(f"malformed gamma file: {e}") from e
    return GammaDatum(datum, w, tuple(comps))
