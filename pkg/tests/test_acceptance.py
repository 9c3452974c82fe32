"""Acceptance criteria 1-9, one PASS/FAIL line each, all at zero tolerance.

Runs under pytest (the lines are echoed in the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from weylbraid.braid import from_word, multiply, right_dg_form
from weylbraid.cyclo import context
from weylbraid.eigen import build_filtration, complete_sequence, dim_fixed_space, l_good, l_good_of
from weylbraid.goodbraid import convexity_check, fixed_roots, good_rep, slice_combinatorics, verify_good_power
from weylbraid.orbits import OrbitParam, OrbitSetting, codim, enumerate_orbits, lusztig_psi
from weylbraid.rootsys import (
    BCD,
    TypeA,
    build_datum,
    class_representative,
    element_from_word,
    enumerate_classes,
    identify_class,
    random_conjugate,
)
from weylbraid.springer import (
    GammaDatum,
    delta_C,
    dim_from_gamma,
    galois_vanishing_symmetric,
    gamma_to_indecomposable,
    irredundant_angles_unit,
    random_gamma,
    root_valuations,
    shallow_gamma,
    valuation_profile,
)

from conftest import ACCEPTANCE
from oracles import rewriting_classes, type_a_l_good

SEED = 20240601


def _report(failures: list, checked: int, extra: str = "") -> tuple[bool, str]:
    detail = f"{checked} checks, {len(failures)} failures" + (f", {extra}" if extra else "")
    if failures:
        detail += "; first: " + "; ".join(map(str, failures[:3]))
    return not failures, detail


def _classes(label, rank, twisted=False):
    d = build_datum(label, rank, twisted)
    return d, enumerate_classes(d)


def criterion_1():
    settings = [OrbitSetting("A", n, 0) for n in range(1, 8)]
    settings += [OrbitSetting("A", n, 2, "D") for n in range(1, 7)]
    settings += [OrbitSetting(l, n, 2) for l in "BC" for n in range(2, 7)]
    settings += [OrbitSetting("D", n, 2, c) for n in range(4, 7) for c in "GD"]
    start = time.perf_counter()
    failures, checked = [], 0
    for s in settings:
        d = s.datum()
        for o in enumerate_orbits(s):
            cp = lusztig_psi(s, o)
            lhs = codim(s, o)
            rhs = l_good(d, cp) + dim_fixed_space(class_representative(d, cp))
            checked += 1
            if lhs != rhs:
                failures.append((s.name, s.char, o, lhs, rhs))
    return _report(failures, checked, f"{time.perf_counter() - start:.1f}s")


def criterion_2():
    failures = []
    a2 = build_datum("A", 2)
    rep = good_rep(a2, TypeA((2, 1)))
    word = [i for f in right_dg_form(rep.braid) for i in f.word()]
    if word != [1, 2, 1]:
        failures.append(("A2 braid word", word))
    if l_good(a2, TypeA((2, 1))) != 3 or rep.braid.length != 3:
        failures.append(("A2 length", rep.braid.length))
    if fixed_roots(rep.element):
        failures.append(("A2 fixed roots", sorted(fixed_roots(rep.element))))
    c2 = build_datum("C", 2)
    cp = BCD((), (2,))
    rep = good_rep(c2, cp)
    factors = [f.word() for f in right_dg_form(rep.braid)]
    if factors != [(2,), (1, 2, 1, 2)]:
        failures.append(("C2 braid", factors))
    if l_good(c2, cp) != 5 or rep.braid.length != 5:
        failures.append(("C2 length", rep.braid.length))
    if rep.braid.projection() != element_from_word(c2, [1, 2, 1]):
        failures.append(("C2 projection", rep.braid.projection().word()))
    pos_fixed = [k for k in fixed_roots(rep.element) if k < c2.n_pos]
    if len(pos_fixed) != 1:
        failures.append(("C2 fixed positive roots", pos_fixed))
    return _report(failures, 8)


def criterion_3():
    types = [("A", n) for n in range(1, 5)] + [(l, n) for l in "BC" for n in range(2, 5)]
    types += [("D", 4), ("G", 2), ("F", 4)]
    failures, checked, halves = [], 0, 0
    for label, rank in types:
        d, classes = _classes(label, rank)
        for cp in classes:
            rep = good_rep(d, cp)
            ok, witness = verify_good_power(rep)
            checked += 1
            halves += rep.d % 2 == 0
            if identify_class(rep.braid.projection()) != cp:
                failures.append((d.name, cp, "projection"))
            if rep.braid.length != l_good(d, cp):
                failures.append((d.name, cp, "length"))
            if not ok:
                failures.append((d.name, cp, witness))
    return _report(failures, checked, f"{halves} half identities")


def criterion_4():
    types = [("A", n, False) for n in range(1, 5)] + [("A", n, True) for n in range(1, 5)]
    types += [(l, n, False) for l in "BC" for n in range(2, 5)]
    types += [("D", n, t) for n in (3, 4) for t in (False, True)] + [("G", 2, False), ("F", 4, False)]
    rng = random.Random(SEED)
    failures, checked = [], 0
    for label, rank, twisted in types:
        d, classes = _classes(label, rank, twisted)
        for cp in classes:
            want = l_good(d, cp)
            w = class_representative(d, cp)
            for _ in range(20):
                u = random_conjugate(w, rng)
                got = l_good_of(build_filtration(u, complete_sequence(u)))
                checked += 1
                if got != want:
                    failures.append((d.name, cp, u.word(), got, want))
    return _report(failures, checked)


def _nf_key(b):
    return tuple(f.perm for f in b.factors), b.twist


def criterion_5():
    failures, checked = [], 0
    for label in "ABG":
        d = build_datum(label, 2)
        for length in range(9):
            classes = rewriting_classes(d, length)
            by_class: dict = {}
            by_nf: dict = {}
            for w, c in classes.items():
                key = _nf_key(from_word(d, w))
                by_class.setdefault(c, set()).add(key)
                by_nf.setdefault(key, set()).add(c)
                checked += 1
            if any(len(v) > 1 for v in by_class.values()) or any(len(v) > 1 for v in by_nf.values()):
                failures.append((d.name, length))
    rng = random.Random(SEED)
    data = [build_datum(*t) for t in [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3), ("A", 3, True)]]
    for i in range(10_000):
        d = data[i % len(data)]
        a, b, c = (
            from_word(d, [rng.randint(1, d.rank) for _ in range(rng.randint(0, 12))], rng.randrange(d.twist_order))
            for _ in range(3)
        )
        ab = multiply(a, b)
        ok = (
            multiply(ab, c) == multiply(a, multiply(b, c))
            and ab.length == a.length + b.length
            and ab.projection() == a.projection() * b.projection()
            and multiply(a, from_word(d, [])) == a == multiply(from_word(d, []), a)
        )
        checked += 1
        if not ok:
            failures.append((d.name, a, b, c))
    return _report(failures, checked)


def criterion_6():
    types = [("A", n, False) for n in range(1, 5)] + [("A", n, True) for n in range(2, 5)]
    types += [(l, n, False) for l in "BC" for n in range(2, 5)]
    types += [("D", 4, False), ("D", 4, True), ("G", 2, False), ("F", 4, False)]
    failures, checked = [], 0
    for label, rank, twisted in types:
        d, classes = _classes(label, rank, twisted)
        for cp in classes:
            checked += 1
            if not convexity_check(good_rep(d, cp).element):
                failures.append((d.name, cp, "convexity"))
            for n in (1, 2, 3):
                checked += 1
                try:
                    slice_combinatorics(good_rep(d, cp, n), n)
                except Exception as e:  # the shape assertion
                    failures.append((d.name, cp, n, str(e)))
    return _report(failures, checked)


def criterion_7():
    failures, checked = [], 0
    for n in range(1, 8):
        d, classes = _classes("A", n)
        for cp in classes:
            checked += 1
            if l_good(d, cp) != type_a_l_good(cp.partition, n):
                failures.append(("A", n, cp))
    for n in range(1, 7):
        s = OrbitSetting("A", n, 2, "D")
        d = s.datum()
        cases = [(((1, 1),), n * (n + 1) // 2)]
        if (n + 1) % 2 == 0:
            cases.append((((1, 0),), (n + 1) * (n + 2) // 2))
        for eps, want in cases:
            o = OrbitParam((1,) * (n + 1), eps)
            cp = lusztig_psi(s, o)
            got = (codim(s, o), l_good(d, cp) + dim_fixed_space(class_representative(d, cp)))
            checked += 1
            if got != (want, want):
                failures.append(("2A", n, eps, got, want))
    return _report(failures, checked)


def criterion_8():
    types = [("A", n) for n in range(1, 5)] + [(l, n) for l in "BC" for n in range(2, 4)] + [("G", 2)]
    rng = random.Random(SEED)
    failures, checked = [], 0
    for label, rank in types:
        d, classes = _classes(label, rank)
        for cp in classes:
            checked += 2
            if dim_from_gamma(shallow_gamma(d, cp)) != delta_C(d, cp):
                failures.append((d.name, cp, "shallow"))
            if sum(valuation_profile(d, cp)) != l_good(d, cp):
                failures.append((d.name, cp, "profile"))
        for _ in range(100):
            cp = rng.choice(classes)
            g = random_gamma(d, cp, rng)
            _, _, rep = gamma_to_indecomposable(g)
            checked += 1
            if Fraction(rep.braid.length) != Fraction(sum(root_valuations(g)), g.d):
                failures.append((d.name, cp, "braid length"))
    a1 = build_datum("A", 1)
    split = GammaDatum(a1, a1.identity(), ((1, (context(1).one(),)),))
    elliptic = GammaDatum(a1, element_from_word(a1, [1]), ((1, (context(2).one(),)),))
    checked += 2
    if dim_from_gamma(split) != 1 or dim_from_gamma(elliptic) != 0:
        failures.append(("A1 fibers", dim_from_gamma(split), dim_from_gamma(elliptic)))
    return _report(failures, checked)


def criterion_9():
    failures, checked = [], 0
    for label, rank in [("A", 4), ("C", 3), ("D", 4), ("G", 2), ("F", 4)]:
        d, classes = _classes(label, rank)
        for cp in classes:
            checked += 2
            if not galois_vanishing_symmetric(class_representative(d, cp)):
                failures.append((d.name, cp, "Galois symmetry"))
            if not irredundant_angles_unit(d, cp):
                failures.append((d.name, cp, "angle form"))
    return _report(failures, checked)


CRITERIA = {
    1: ("codim = l_good + dim T on every orbit in scope", criterion_1),
    2: ("A2 and C2 worked examples", criterion_2),
    3: ("good-power identities", criterion_3),
    4: ("l_good invariant under 20 random conjugates", criterion_4),
    5: ("Garside normal forms vs rewriting closure, monoid laws", criterion_5),
    6: ("convexity and normal-form shape for n = 1, 2, 3", criterion_6),
    7: ("type A closed form, 2A boundary orbits", criterion_7),
    8: ("affine Springer dimension identities", criterion_8),
    9: ("Galois symmetry and 2pi/n irredundant angles", criterion_9),
}


def evaluate(k: int) -> tuple[bool, str]:
    title, fn = CRITERIA[k]
    try:
        ok, detail = fn()
    except Exception as e:  # an internal contradiction counts as a failure
        ok, detail = False, f"raised {type(e).__name__}: {e}"
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]"
    ACCEPTANCE[k] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, line = evaluate(k)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(k)[0] for k in sorted(CRITERIA)]
    raise SystemExit(0 if all(results) else 1)
