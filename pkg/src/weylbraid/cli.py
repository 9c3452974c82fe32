"""Command-line front end: ``weylbraid <command> <TYPE><RANK> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .braid import BraidError, right_dg_form
from .cyclo import CycloError
from .eigen import (
    EigenError,
    build_filtration,
    complete_sequence,
    dim_fixed_space,
    good_position_filtration,
    l_good,
)
from .goodbraid import construct, rep_to_json, verify_good_power
from .orbits import (
    OrbitError,
    OrbitSetting,
    PsiError,
    codim,
    enumerate_orbits,
    format_orbit,
    group_dimension,
    lusztig_psi,
    orbit_to_json,
)
from .rootsys import (
    BCD,
    ClassParam,
    CoxeterDatum,
    DatumError,
    TwistedA,
    TypeA,
    build_datum,
    class_representative,
    class_to_json,
    element_from_word,
    enumerate_classes,
    format_class,
    identify_class,
    parse_type,
    random_conjugate,
)
from .springer import (
    SpringerError,
    delta_C,
    dim_from_gamma,
    gamma_from_json,
    gamma_to_indecomposable,
    gamma_to_json,
    random_gamma,
    root_valuations,
    valuation_profile,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    label: str
    rank: int
    twisted: bool
    char: int
    component: str
    class_spec: str | None
    gamma: str | None
    fmt: str
    jobs: int
    seed: int | None

    def datum(self) -> CoxeterDatum:
        return build_datum(self.label, self.rank, self.twisted)

    def setting(self) -> OrbitSetting:
        return OrbitSetting(self.label, self.rank, self.char, self.component)


# ---------------------------------------------------------------------------
# Argument handling


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylbraid", description="Good position braids, orbit codimensions and affine Springer dimensions.")
    p.add_argument("command", choices=["classes", "verify-codim", "goodbraid", "springer"])
    p.add_argument("type", help="type and rank, e.g. A3, C2, 2A3, 2D4, G2, F4, E6, 2E6")
    p.add_argument("--twisted", action="store_true", help="use the twisted group (2A, 2D, 2E6)")
    p.add_argument("--char", type=int, choices=[0, 2], default=0, help="0 means any characteristic other than 2")
    p.add_argument("--component", choices=["G", "D"], default=None, help="identity (G) or outer (D) component")
    p.add_argument("--class", dest="class_spec", help="e.g. 3,1 or 2,1|1 or -|2,2:II, or coxeter, identity, pos2, word:1,2,1")
    p.add_argument("--gamma", help="gamma JSON file (springer)")
    p.add_argument("--format", dest="fmt", choices=["json", "csv", "pretty"], default="pretty")
    p.add_argument("--jobs", type=int, default=1, help="worker processes, 0 = one per CPU")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized choices")
    return p


def make_config(argv: Sequence[str]) -> RunConfig:
    ns = _parser().parse_args(argv)
    try:
        label, rank, twisted = parse_type(ns.type)
    except DatumError as e:
        raise UsageError(str(e)) from None
    twisted = twisted or ns.twisted or ns.component == "D"
    component = ns.component or ("D" if twisted else "G")
    if component == "G" and twisted and ns.command == "verify-codim":
        # the identity component of a twisted group is the untwisted group
        twisted = False
    if ns.jobs < 0:
        raise UsageError("--jobs must be nonnegative")
    return RunConfig(ns.command, label, rank, twisted, ns.char, component, ns.class_spec, ns.gamma, ns.fmt, ns.jobs, ns.seed)


def _partition(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "-"):
        return ()
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad partition {text!r}") from None
    if any(x <= 0 for x in parts):
        raise UsageError(f"bad partition {text!r}")
    return tuple(sorted(parts, reverse=True))


def parse_class(datum: CoxeterDatum, spec: str) -> ClassParam:
    spec = spec.strip()
    n = datum.rank
    twist = 1 if datum.twisted else 0
    if spec == "identity":
        return identify_class(datum.identity(twist))
    if spec == "coxeter":
        return identify_class(element_from_word(datum, range(1, n + 1), twist))
    if spec.startswith("word:"):
        word = [int(x) for x in spec[5:].split(",") if x.strip()]
        if any(not 1 <= i <= n for i in word):
            raise UsageError(f"generator out of range in {spec!r}")
        return identify_class(element_from_word(datum, word, twist))
    if spec == "pos2":
        if datum.label in "BCD" and not datum.twisted:
            mu = (2,) + (1,) * (n - 2)
            split = datum.label == "D" and all(m % 2 == 0 for m in mu)
            return BCD((), mu, "I" if split else None)
        if datum.label == "A" and not datum.twisted:
            return TypeA((2,) + (1,) * (n - 1))
        raise UsageError("pos2 needs an untwisted classical type")
    marker = None
    if ":" in spec:
        spec, marker = spec.split(":", 1)
        if marker not in ("I", "II"):
            raise UsageError("split marker must be I or II")
    if datum.label == "A":
        kind = TwistedA if datum.twisted else TypeA
        return kind(_partition(spec))
    if datum.label in "BCD":
        if "|" not in spec:
            raise UsageError("classes of B, C, D are written lam|mu, e.g. 2,1|1")
        lam, mu = spec.split("|", 1)
        return BCD(_partition(lam), _partition(mu), marker)
    raise UsageError("classes of exceptional types are given as coxeter, identity or word:...")


def _checked_class(datum: CoxeterDatum, spec: str | None) -> ClassParam:
    if spec is None:
        raise UsageError("--class is required")
    cp = parse_class(datum, spec)
    if cp not in enumerate_classes(datum):
        raise UsageError(f"{format_class(cp)} is not a class of {datum.name}")
    return cp


# ---------------------------------------------------------------------------
# Parallel map with deterministic order


def _pmap(fn: Callable, items: list, jobs: int) -> list:
    if jobs == 1 or len(items) < 2:
        return [fn(x) for x in items]
    workers = (os.cpu_count() or 1) if jobs == 0 else jobs
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


# ---------------------------------------------------------------------------
# Commands


def _class_row(args: tuple[str, int, bool, ClassParam]) -> dict:
    label, rank, twisted, cp = args
    datum = build_datum(label, rank, twisted)
    w = class_representative(datum, cp)
    dt = dim_fixed_space(w)
    return {
        "class": format_class(cp),
        "class_param": class_to_json(cp),
        "rep_length": w.length,
        "dim_T": dt,
        "elliptic": dt == 0,
        "l_good": l_good(datum, cp),
    }


def cmd_classes(cfg: RunConfig) -> tuple[dict, int]:
    datum = cfg.datum()
    items = [(cfg.label, cfg.rank, cfg.twisted, cp) for cp in enumerate_classes(datum)]
    rows = _pmap(_class_row, items, cfg.jobs)
    return {"type": datum.name, "rows": rows}, EXIT_OK


def _verify_row(args: tuple[OrbitSetting, object]) -> dict:
    s, o = args
    cp = lusztig_psi(s, o)
    datum = s.datum()
    c = codim(s, o)
    lg = l_good(datum, cp)
    dt = dim_fixed_space(class_representative(datum, cp))
    return {
        "type": s.label,
        "rank": s.rank,
        "char": s.char,
        "component": s.component,
        "orbit": format_orbit(o),
        **orbit_to_json(o),
        "codim": c,
        "dim_orbit": group_dimension(s.label, s.rank) - c,
        "psi_class": format_class(cp),
        "l_good": lg,
        "dim_fixed": dt,
        "ok": c == lg + dt,
        "discrepancy": c - lg - dt,
    }


def cmd_verify_codim(cfg: RunConfig) -> tuple[dict, int]:
    s = cfg.setting()
    rows = _pmap(_verify_row, [(s, o) for o in enumerate_orbits(s)], cfg.jobs)
    failed = [r for r in rows if not r["ok"]]
    summary = {"total": len(rows), "passed": len(rows) - len(failed), "failed": len(failed)}
    return {"type": s.name, "char": s.char, "component": s.component, "rows": rows, "summary": summary}, (
        EXIT_FAIL if failed else EXIT_OK
    )


def cmd_goodbraid(cfg: RunConfig) -> tuple[dict, int]:
    datum = cfg.datum()
    cp = _checked_class(datum, cfg.class_spec)
    w = class_representative(datum, cp)
    if cfg.seed is not None:
        w = random_conjugate(w, random.Random(cfg.seed))
    rep = construct(good_position_filtration(build_filtration(w, complete_sequence(w))))
    ok, witness = verify_good_power(rep)
    out = rep_to_json(rep, cp, ok)
    out["type"] = datum.name
    if witness:
        out["witness"] = witness
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_springer(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.twisted:
        raise UsageError("affine Springer dimensions are computed for untwisted types")
    datum = cfg.datum()
    if cfg.gamma is not None:
        try:
            with open(cfg.gamma, encoding="utf-8") as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise UsageError(f"cannot read gamma file: {e}") from None
        if isinstance(obj, dict) and isinstance(obj.get("class"), str):
            obj = {**obj, "class": class_to_json(parse_class(datum, obj["class"]))}
        return _gamma_report(gamma_from_json(obj, datum)), EXIT_OK
    cp = _checked_class(datum, cfg.class_spec)
    w = class_representative(datum, cp)
    out = {
        "type": datum.name,
        "class": format_class(cp),
        "rank": datum.rank,
        "r_C": dim_fixed_space(w),
        "l_good": l_good(datum, cp),
        "delta": delta_C(datum, cp),
        "valuation_profile": [str(v) for v in valuation_profile(datum, cp)],
    }
    if cfg.seed is not None:
        out["random_gamma"] = _gamma_report(random_gamma(datum, cp, random.Random(cfg.seed)))
    return out, EXIT_OK


def _gamma_report(g) -> dict:
    vals = root_valuations(g)
    _, angles, rep = gamma_to_indecomposable(g)
    return {
        "gamma": gamma_to_json(g),
        "d": g.d,
        "valuations": [str(Fraction(n, g.d)) for n in sorted(vals)],
        "val_delta": str(Fraction(sum(vals), g.d)),
        "r_C": dim_fixed_space(g.w),
        "dim": str(dim_from_gamma(g)),
        "angles": [str(t) for t in angles],
        "braid_element": list(rep.element.word()),
        "braid_word": [i for f in right_dg_form(rep.braid) for i in f.word()],
        "braid_length": rep.braid.length,
    }


COMMANDS = {
    "classes": cmd_classes,
    "verify-codim": cmd_verify_codim,
    "goodbraid": cmd_goodbraid,
    "springer": cmd_springer,
}


# ---------------------------------------------------------------------------
# Output


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    return "" if v is None else str(v)


def _table_columns(rows: list[dict]) -> list[str]:
    cols: list[str] = []
    for r in rows:
        cols += [k for k in r if k not in cols]
    return cols


def render(out: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out, sort_keys=True, indent=2) + "\n"
    rows = out.get("rows")
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        if rows is not None:
            cols = _table_columns(rows)
            wr.writerow(cols)
            for r in rows:
                wr.writerow([_cell(r.get(c)) for c in cols])
        else:
            wr.writerow(["key", "value"])
            for k in sorted(out):
                wr.writerow([k, _cell(out[k])])
        return buf.getvalue()
    lines = []
    if rows is not None:
        cols = [c for c in _table_columns(rows) if c not in ("class_param", "nu", "eps", "marker", "type", "rank", "char", "component")]
        cells = [[_cell(r.get(c)) for c in cols] for r in rows]
        widths = [max(len(c), *(len(x[i]) for x in cells)) if cells else len(c) for i, c in enumerate(cols)]
        lines.append(f"{out.get('type', '')}" + (f"  char {out['char']}  component {out['component']}" if "char" in out else ""))
        lines.append("  ".join(c.ljust(wd) for c, wd in zip(cols, widths)))
        for x in cells:
            lines.append("  ".join(v.ljust(wd) for v, wd in zip(x, widths)))
        if "summary" in out:
            sm = out["summary"]
            lines.append(f"{sm['passed']}/{sm['total']} passed")
    else:
        for k in sorted(out):
            lines.append(f"{k}: {_cell(out[k])}")
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = make_config(argv)
        out, code = COMMANDS[cfg.command](cfg)
    except SystemExit as e:  # argparse
        return EXIT_USAGE if e.code else EXIT_OK
    except (UsageError, DatumError, OrbitError, SpringerError, CycloError) as e:
        print(f"weylbraid: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EigenError, PsiError, BraidError, AssertionError) as e:
        print(f"weylbraid: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(render(out, cfg.fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
