"""Unipotent orbits of classical groups, the Lusztig map and its section.

Orbits are partitions (Jordan types), decorated in characteristic 2 by a
0/1 marking on part sizes. All functions take an :class:`OrbitSetting`
naming the type, rank, characteristic (0 stands for any char != 2) and
component of the possibly disconnected group.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .eigen import dim_fixed_space
from .rootsys import (
    BCD,
    ClassParam,
    CoxeterDatum,
    DatumError,
    TwistedA,
    TypeA,
    build_datum,
    class_representative,
    enumerate_classes,
    partitions,
)

__all__ = [
    "OrbitError",
    "PsiError",
    "OrbitParam",
    "OrbitSetting",
    "multiplicity",
    "dual_partition",
    "enumerate_orbits",
    "lusztig_phi",
    "lusztig_psi",
    "psi_twisted_a_direct",
    "codim",
    "codim_standard",
    "chi",
    "group_dimension",
    "orbit_to_json",
    "orbit_from_json",
    "validate_orbit",
    "format_orbit",
]


class OrbitError(ValueError):
    """Unsupported type/characteristic/component or an invalid orbit."""


class PsiError(RuntimeError):
    """Empty or ambiguous preimage under the Lusztig map."""


@dataclass(frozen=True, order=True)
class OrbitParam:
    """Jordan type ``nu`` (descending), marking ``eps`` as sorted (size, bit)
    pairs, and ``marker`` I/II for the halves of a split orbit of SO_2n."""

    nu: tuple[int, ...]
    eps: tuple[tuple[int, int], ...] = ()
    marker: str | None = None

    def eps_of(self, k: int) -> int:
        return dict(self.eps)[k]


@dataclass(frozen=True)
class OrbitSetting:
    label: str  # A, B, C or D
    rank: int
    char: int = 0  # 0 or 2
    component: str = "G"  # G or D (the non-identity component)

    def __post_init__(self) -> None:
        if self.label not in ("A", "B", "C", "D"):
            raise OrbitError(f"no partition model for type {self.label}")
        if self.char not in (0, 2):
            raise OrbitError("characteristic must be 0 (meaning != 2) or 2")
        if self.component not in ("G", "D"):
            raise OrbitError("component must be G or D")
        if self.component == "D":
            if self.label not in ("A", "D"):
                raise OrbitError(f"type {self.label} has no outer component")
            if self.char != 2:
                raise OrbitError("the outer component has no unipotent elements in char != 2")
        minimum = {"A": 1, "B": 2, "C": 2, "D": 2}[self.label]
        if self.rank < minimum:
            raise OrbitError(f"rank {self.rank} too small for type {self.label}")

    @property
    def twisted(self) -> bool:
        return self.component == "D"

    @property
    def name(self) -> str:
        return ("2" if self.twisted else "") + f"{self.label}{self.rank}"

    def datum(self) -> CoxeterDatum:
        return build_datum(self.label, self.rank, self.twisted)


# ---------------------------------------------------------------------------
# Partition helpers


def multiplicity(p: Sequence[int], k: int) -> int:
    return sum(1 for x in p if x == k)


def dual_partition(p: Sequence[int]) -> tuple[int, ...]:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= i) for i in range(1, max(p) + 1))


def _desc(parts) -> tuple[int, ...]:
    return tuple(sorted(parts, reverse=True))


def _in_p(p: Sequence[int], eps_sign: int) -> bool:
    """Membership in P_eps: m(k) even whenever (-1)^k == eps_sign."""
    c = Counter(p)
    return all(m % 2 == 0 for k, m in c.items() if (-1) ** k == eps_sign)


def _decorations(nu: Sequence[int], parity: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """All markings on the sizes of the given parity present in nu; odd
    multiplicity forces the bit to 1."""
    sizes = sorted(k for k in set(nu) if k % 2 == parity)
    choices = [(1,) if multiplicity(nu, k) % 2 else (0, 1) for k in sizes]
    for bits in product(*choices):
        yield tuple(zip(sizes, bits))


def _very_even_char2(o: OrbitParam) -> bool:
    c = Counter(o.nu)
    return all(k % 2 == 0 and m % 2 == 0 for k, m in c.items()) and all(b == 0 for _, b in o.eps)


def _very_even_char0(nu: Sequence[int]) -> bool:
    return bool(nu) and all(k % 2 == 0 for k in nu)


# ---------------------------------------------------------------------------
# Enumeration


def _split_orbits(base: list[OrbitParam], is_split) -> list[OrbitParam]:
    out = []
    for o in base:
        if is_split(o):
            out += [OrbitParam(o.nu, o.eps, "I"), OrbitParam(o.nu, o.eps, "II")]
        else:
            out.append(o)
    return out


def enumerate_orbits(s: OrbitSetting) -> list[OrbitParam]:
    n = s.rank
    if s.label == "A":
        if s.component == "G":
            return [OrbitParam(p) for p in sorted(partitions(n + 1))]
        out = []
        for p in sorted(partitions(n + 1)):
            if _in_p(p, 1):
                out += [OrbitParam(p, e) for e in _decorations(p, 1)]
        return out
    if s.char == 2:
        out = []
        for p in sorted(partitions(2 * n)):
            if not _in_p(p, -1):
                continue
            if s.label == "D" and len(p) % 2 != (1 if s.twisted else 0):
                continue
            out += [OrbitParam(p, e) for e in _decorations(p, 0)]
        if s.label == "D" and not s.twisted:
            out = _split_orbits(out, _very_even_char2)
        return out
    if s.label == "B":
        return [OrbitParam(p) for p in sorted(partitions(2 * n + 1)) if _in_p(p, 1)]
    if s.label == "C":
        return [OrbitParam(p) for p in sorted(partitions(2 * n)) if _in_p(p, -1)]
    base = [OrbitParam(p) for p in sorted(partitions(2 * n)) if _in_p(p, 1)]
    return _split_orbits(base, lambda o: _very_even_char0(o.nu))


def validate_orbit(s: OrbitSetting, o: OrbitParam) -> None:
    if o not in set(enumerate_orbits(s)):
        raise OrbitError(f"{format_orbit(o)} is not a unipotent orbit of {s.name} in char {s.char}")


# ---------------------------------------------------------------------------
# The Lusztig map


def _psi_sign(lam: Sequence[int]) -> list[int]:
    """The +1/0/-1 correction attached to each part of lam."""
    a = len(lam)
    ext = [0] + list(lam) + [0]
    out = []
    for i in range(1, a + 1):
        if i % 2 == 1 and ext[i - 1] != ext[i]:
            out.append(1)
        elif i % 2 == 0 and ext[i + 1] != ext[i]:
            out.append(-1)
        else:
            out.append(0)
    return out


def _doubled(mu: Sequence[int]) -> list[int]:
    return [x for m in mu for x in (m, m)]


def _phi_c_char2(lam: Sequence[int], mu: Sequence[int]) -> OrbitParam:
    nu = _desc([2 * x for x in lam] + _doubled(mu))
    sizes = sorted(k for k in set(nu) if k % 2 == 0)
    eps = tuple((k, 1 if multiplicity(lam, k // 2) else 0) for k in sizes)
    return OrbitParam(nu, eps)


def _phi_twisted_a(lam: Sequence[int]) -> OrbitParam:
    c = Counter(lam)
    top = max(lam)
    mult = {}
    for k in range(1, top + 1):
        m = c[k] + 2 * c[2 * k] if k % 2 else 2 * c[2 * k]
        if m:
            mult[k] = m
    nu = _desc(k for k, m in mult.items() for _ in range(m))
    eps = tuple((k, 1 if c[k] else 0) for k in sorted(mult) if k % 2)
    return OrbitParam(nu, eps)


def lusztig_phi(s: OrbitSetting, cp: ClassParam) -> OrbitParam:
    n = s.rank
    if s.label == "A":
        if s.component == "G":
            if not isinstance(cp, TypeA) or sum(cp.partition) != n + 1:
                raise OrbitError(f"{cp} is not a class of A{n}")
            return OrbitParam(_desc(cp.partition))
        if not isinstance(cp, TwistedA) or sum(cp.partition) != n + 1:
            raise OrbitError(f"{cp} is not a class of the outer coset of 2A{n}")
        return _phi_twisted_a(cp.partition)
    if not isinstance(cp, BCD) or sum(cp.lam) + sum(cp.mu) != n:
        raise OrbitError(f"{cp} is not a class of {s.label}{n}")
    lam, mu = _desc(cp.lam), _desc(cp.mu)
    if s.label == "D" and len(lam) % 2 != (1 if s.twisted else 0):
        raise OrbitError(f"{cp} does not lie in the requested component of D{n}")
    if s.char == 2 or s.label == "C":
        o = _phi_c_char2(lam, mu)
        if s.char != 2:
            o = OrbitParam(o.nu)
        return OrbitParam(o.nu, o.eps, cp.marker)
    corr = [2 * x + e for x, e in zip(lam, _psi_sign(lam))]
    if s.label == "B" and len(lam) % 2 == 0:
        corr.append(1)
    return OrbitParam(_desc(corr + _doubled(mu)), (), cp.marker)


# ---------------------------------------------------------------------------
# The section Psi


@lru_cache(maxsize=None)
def _phi_table(s: OrbitSetting) -> tuple[tuple[ClassParam, OrbitParam, int], ...]:
    datum = s.datum()
    rows = []
    for cp in enumerate_classes(datum):
        rows.append((cp, lusztig_phi(s, cp), dim_fixed_space(class_representative(datum, cp))))
    return tuple(rows)


def lusztig_psi(s: OrbitSetting, o: OrbitParam) -> ClassParam:
    """The class in the preimage of o with strictly smallest fixed space."""
    pre = [(dt, cp) for cp, img, dt in _phi_table(s) if img == o]
    if not pre:
        raise PsiError(f"{format_orbit(o)} has empty preimage in {s.name}")
    pre.sort(key=lambda x: x[0])
    if len(pre) > 1 and pre[0][0] == pre[1][0]:
        raise PsiError(f"{format_orbit(o)}: two preimages share the minimal fixed-space dimension")
    cp = pre[0][1]
    if s.label == "A" and s.twisted and psi_twisted_a_direct(o) != cp:
        raise PsiError(f"{format_orbit(o)}: minimizer disagrees with the closed-form rule")
    return cp


def psi_twisted_a_direct(o: OrbitParam) -> TwistedA:
    """Most elliptic preimage for the outer coset of type A, read off nu."""
    c = Counter(o.nu)
    eps = dict(o.eps)
    lam: Counter = Counter()
    for k, m in c.items():
        if k % 2 == 0 or eps[k] == 0:
            if m % 2:
                raise OrbitError(f"{format_orbit(o)}: odd multiplicity needs the marking 1")
            lam[2 * k] += m // 2
        else:
            lam[k] += m
    return TwistedA(_desc(k for k, m in lam.items() for _ in range(m)))


# ---------------------------------------------------------------------------
# Codimension


def group_dimension(label: str, rank: int) -> int:
    n = rank
    return {"A": n * n + 2 * n, "B": 2 * n * n + n, "C": 2 * n * n + n, "D": 2 * n * n - n}[label]


def chi(s: int, n: int, label: str, has_v_block: bool) -> int:
    """Correction term for the characteristic-2 codimension step.

    ``n`` is the rank; the comparison inside runs against the dimension 2n
    of the natural module.
    """
    if label in ("B", "C"):
        t = s // 2 if has_v_block else (s - 1) // 2
    elif label == "D":
        t = (s + 2) // 2 if has_v_block else (s + 1) // 2
    else:
        raise OrbitError("chi is defined for types B, C, D")
    return max(0, min(2 * n - s + t, t))


def _codim_a(nu: Sequence[int]) -> int:
    c = Counter(nu)
    total, before = 0, 0
    for r in sorted(c, reverse=True):
        m = c[r]
        total += m * r * (m + 2 * before)
        before += m
    return total - 1


def _codim_twisted_a(o: OrbitParam, n: int) -> int:
    nu, eps = list(o.nu), dict(o.eps)
    total = Fraction(0)
    while nu:
        top = nu[0]
        m1 = multiplicity(nu, top)
        step = m1 * n - Fraction(m1 * m1 * top, 2)
        if top % 2 == 0:
            step += m1
        elif eps[top] == 1:
            step += Fraction(m1, 2)
        else:
            step += Fraction(m1, 2) + m1
        total += step
        nu = nu[m1:]
        n -= m1 * top
    if total.denominator != 1:
        raise OrbitError(f"non-integral codimension for {format_orbit(o)}")
    return int(total)


def _codim_bcd_char2(o: OrbitParam, n: int, label: str) -> int:
    nu, eps = list(o.nu), dict(o.eps)
    total = 0
    while nu:
        top = nu[0]
        m1 = multiplicity(nu, top)
        rest = sum(nu[m1:])
        v_block = top % 2 == 0 and eps[top] == 1
        total += top * m1 * (m1 + 1) // 2 + m1 * rest - m1 * chi(top, n, label, v_block)
        nu = nu[m1:]
        n -= m1 * top // 2
    return total


def codim_standard(label: str, nu: Sequence[int]) -> int:
    """Centralizer dimension in char != 2 from the dual partition."""
    sq = sum(x * x for x in dual_partition(nu))
    odd = sum(1 for x in nu if x % 2)
    if label == "A":
        return sq - 1
    if label == "C":
        return (sq + odd) // 2
    if label in ("B", "D"):
        return (sq - odd) // 2
    raise OrbitError(f"no partition model for type {label}")


def codim(s: OrbitSetting, o: OrbitParam) -> int:
    """dim G - dim O."""
    validate_orbit(s, o)
    if s.label == "A":
        return _codim_twisted_a(o, s.rank) if s.twisted else _codim_a(o.nu)
    if s.char == 2:
        return _codim_bcd_char2(o, s.rank, s.label)
    return codim_standard(s.label, o.nu)


# ---------------------------------------------------------------------------
# Serialization


def format_orbit(o: OrbitParam) -> str:
    body = ",".join(map(str, o.nu)) or "-"
    eps = "".join(f" e{k}={b}" for k, b in o.eps)
    return f"({body}){eps}" + (o.marker or "")


def orbit_to_json(o: OrbitParam) -> dict:
    return {"nu": list(o.nu), "eps": {str(k): b for k, b in o.eps}, "marker": o.marker}


def orbit_from_json(obj: dict) -> OrbitParam:
    eps = tuple(sorted((int(k), int(b)) for k, b in obj.get("eps", {}).items()))
    return OrbitParam(_desc(obj["nu"]), eps, obj.get("marker"))

