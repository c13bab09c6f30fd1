"""Subcommand front end: cover, spectrum, width, lemma-check, qsimple,
filterbase, alpha, density, residuals.

Configuration precedence is flags > CLASSCOVER_* environment > config file
(TOML or JSON).  Exit codes: 0 success, 2 precondition/spec errors, 3 cap
errors.  Report bodies are deterministic; timestamps live in sidecars, and
CSV reports get a rendered figure next to them unless --no-plot is given.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import density, filterbase, lattice, plots, reports, widths
from .alternating import spectrum_element_an
from .cover import corpus_cover_report, group_cover_rows
from .engine import (
    Automorphism,
    ElementSet,
    GroupTable,
    automorphism_from_images,
    build_group,
    inner_automorphism,
)
from .errors import CapExceededError, ClasscoverError, InvalidSpecError, PreconditionError
from .linear import spectrum_element_sl
from .specs import parse_spec, render_spec

ENV_PREFIX = "CLASSCOVER_"


@dataclass
class RunConfig:
    enum_cap: int = 2_000_000
    lattice_cap: int = 200
    algebra_cap: int = 10_000_000
    seed: int = 0
    cache_dir: str | None = None
    fmt: str = "csv"
    jobs: int = 1
    plot: bool = True

    @classmethod
    def load(cls, args) -> "RunConfig":
        cfg = cls()
        if getattr(args, "config", None):
            cfg._apply(_read_config_file(args.config))
        cfg._apply({
            k[len(ENV_PREFIX):].lower(): v
            for k, v in os.environ.items()
            if k.startswith(ENV_PREFIX)
        })
        flag_map = {
            "enum_cap": args.enum_cap,
            "lattice_cap": args.lattice_cap,
            "algebra_cap": args.algebra_cap,
            "seed": args.seed,
            "cache_dir": args.cache_dir,
            "fmt": args.format,
            "jobs": args.jobs,
        }
        if getattr(args, "no_plot", False):
            flag_map["plot"] = False
        cfg._apply({k: v for k, v in flag_map.items() if v is not None})
        if cfg.fmt not in ("csv", "json"):
            raise InvalidSpecError("invalid-spec", f"unknown format {cfg.fmt!r}")
        for cap in (cfg.enum_cap, cfg.lattice_cap, cfg.algebra_cap):
            if int(cap) <= 0:
                raise InvalidSpecError("invalid-spec", "caps must be positive")
        return cfg

    def _apply(self, data: dict):
        for key, value in data.items():
            if not hasattr(self, key):
                raise InvalidSpecError("invalid-spec", f"unknown config key {key!r}")
            cur = getattr(self, key)
            if isinstance(cur, bool):
                value = value if isinstance(value, bool) else str(value).lower() in ("1", "true", "yes")
            elif isinstance(cur, int):
                value = int(value)
            setattr(self, key, value)

    def summary(self) -> dict:
        return {
            "enum_cap": self.enum_cap,
            "lattice_cap": self.lattice_cap,
            "algebra_cap": self.algebra_cap,
            "seed": self.seed,
            "format": self.fmt,
            "jobs": self.jobs,
        }


def _read_config_file(path) -> dict:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return json.loads(text)
    try:
        import tomllib as toml  # py311+
    except ImportError:
        import tomli as toml
    return toml.loads(text)


def _build(spec_text: str, cfg: RunConfig) -> GroupTable:
    return build_group(parse_spec(spec_text), cap=cfg.enum_cap)


# -- class-table cache (keyed by rendered spec, invalidated by spec hash) --

_CACHE_VERSION = 1


def _cache_key(spec_text: str) -> str:
    return hashlib.sha256(f"v{_CACHE_VERSION}:{spec_text}".encode()).hexdigest()[:24]


def cached_classes(table: GroupTable, spec_text: str, cache_dir) -> list:
    if not cache_dir:
        return table.classes()
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    f = cache_dir / f"classes-{_cache_key(spec_text)}.json"
    if f.exists():
        try:
            data = json.loads(f.read_text())
        except (json.JSONDecodeError, OSError):
            data = {}
        if data.get("spec") == spec_text and data.get("order") == table.order:
            classes = table.classes()
            cached = [(c["rep"], c["size"]) for c in data["classes"]]
            if cached == [(c.rep, c.size) for c in classes]:
                return classes
    classes = table.classes()
    f.write_text(json.dumps({
        "spec": spec_text,
        "order": table.order,
        "classes": [{"rep": c.rep, "size": c.size} for c in classes],
    }, sort_keys=True))
    return classes


def _emit(cfg: RunConfig, out, header, rows, figure=None, aggregates=None):
    """Write a report (or print it); sidecar + optional figure for files."""
    if out:
        out = Path(out)
        if cfg.fmt == "json" or out.suffix == ".json":
            reports.write_json(out, [dict(zip(header, r)) for r in rows])
        else:
            reports.write_csv(out, header, rows)
        reports.write_sidecar(out, cfg.summary())
        if aggregates is not None:
            agg = out.with_suffix(".aggregate.json")
            reports.write_json(agg, aggregates)
            reports.write_sidecar(agg, cfg.summary())
        if figure is not None and cfg.plot:
            figure(out.with_suffix(".png"))
        return
    print(",".join(header))
    for r in rows:
        print(",".join(reports.fmt_value(v) for v in r))
    if aggregates is not None:
        print(json.dumps(aggregates, sort_keys=True, default=reports.fmt_value))


# -- subcommands --


def cmd_cover(args, cfg: RunConfig) -> int:
    header = ["group", "class_rep", "class_size", "cn", "ratio"]
    if args.corpus:
        specs = json.loads(Path(args.corpus).read_text())
        report = corpus_cover_report(specs, jobs=cfg.jobs)
        rows = [(r.group, _q(r.class_rep), r.class_size, r.cn, r.ratio)
                for r in report.rows]
        aggregates = {"c_ls": report.c_ls,
                      "c_alpha": {str(k): v for k, v in report.c_alpha.items()}}
        objs = report.rows
    else:
        table = _build(args.group, cfg)
        cached_classes(table, args.group, cfg.cache_dir)
        # central classes never cover and carry no ratio; rows are noncentral
        objs = group_cover_rows(table, args.group, noncentral_only=True)
        if args.class_rep:
            want = table.class_of(table.element_by_render(args.class_rep))
            objs = [r for r in objs
                    if table.class_of(table.element_by_render(r.class_rep)) == want]
        rows = [(r.group, _q(r.class_rep), r.class_size, r.cn,
                 r.ratio if r.ratio is not None else "") for r in objs]
        aggregates = None
    _emit(cfg, args.csv or args.out, header, rows,
          figure=lambda p: plots.cover_figure(objs, p), aggregates=aggregates)
    return 0


def _q(text: str) -> str:
    # keep CSV single-field: class reps contain no commas in cycle form, but
    # matrix rows do; replace the row separator-safe comma with a space
    return text.replace(",", " ")


def cmd_spectrum(args, cfg: RunConfig) -> int:
    betas = [round(0.1 * i, 1) for i in range(11)] if not args.beta else [
        float(b) for b in args.beta.split(",")
    ]
    if args.mode == "an":
        ns = [int(x) for x in (args.n or "10000").split(",")]
        header = ["n", "beta", "cycle_length", "h", "abs_error"]
        rows = []
        for n in ns:
            for beta in betas:
                t, r = spectrum_element_an(n, beta, literal_alpha=args.literal_alpha)
                target = (1.0 - beta) if args.literal_alpha else beta
                rows.append((n, beta, t.parts[0], r.h, abs(r.h - target)))
        _emit(cfg, args.csv or args.out, header, rows,
              figure=lambda p: plots.spectrum_figure(rows, p))
    else:
        pairs = [tuple(int(v) for v in item.split(","))
                 for item in (args.sl or "4,3;6,3").split(";")]
        header = ["n", "p", "beta", "dimV0", "h"]
        rows = []
        for n, p in pairs:
            for beta in betas:
                _g, r, c = spectrum_element_sl(n, p, beta, alg_cap=cfg.algebra_cap)
                rows.append((n, p, beta, c.dim_v0, r.h))
        _emit(cfg, args.csv or args.out, header, rows,
              figure=lambda p: plots.sl_spectrum_figure(rows, p))
    return 0


def _parse_gens(table: GroupTable, text: str) -> list:
    return [table.element_by_render(t.strip()) for t in _split_elements(text)]


def _split_elements(text: str) -> list:
    """Split an element list: '|' between matrices, ',' between cycle forms."""
    if "|" in text or ";" in text:
        parts = text.split("|")
    else:
        parts, depth, cur = [], 0, []
        for ch in text:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "," and depth == 0:
                parts.append("".join(cur))
                cur = []
            else:
                cur.append(ch)
        parts.append("".join(cur))
    return [t for t in (s.strip() for s in parts) if t]


def _resolve_target(table: GroupTable, text: str) -> ElementSet:
    if text in ("derived", "G'"):
        return lattice.derived_subgroup_set(table)
    if text == "center":
        return table.center_set()
    if text.lower() == "v4":
        cands = [n for n in lattice.normal_subgroups(table) if n.card == 4]
        cands = [n for n in cands
                 if all(table.element_order(int(i)) <= 2 for i in n.indices())]
        if len(cands) != 1:
            raise PreconditionError("precondition-violated",
                                    "no unique normal Klein subgroup")
        return cands[0]
    if text.startswith("order:"):
        k = int(text.split(":", 1)[1])
        cands = [n for n in lattice.normal_subgroups(table) if n.card == k]
        if len(cands) != 1:
            raise PreconditionError(
                "precondition-violated", f"{len(cands)} normal subgroups of order {k}"
            )
        return cands[0]
    raise InvalidSpecError("invalid-spec", f"cannot resolve target {text!r}")


def cmd_width(args, cfg: RunConfig) -> int:
    table = _build(args.group, cfg)
    gens = _parse_gens(table, args.gens) if args.gens else list(table.gens)
    if args.mode == "segal":
        rep = widths.soluble_width_check(table, gens)
    elif args.mode == "keyc":
        target = _resolve_target(table, args.target or "derived")
        rep = widths.acceptable_width_check(table, target, gens)
    elif args.mode == "inner":
        rep = widths.inner_width_check(table, gens)
    elif args.mode == "qsimple":
        return _qsimple_run(args.group, "swap", args.out, cfg)
    else:
        raise InvalidSpecError("invalid-spec", f"unknown mode {args.mode!r}")
    alpha_val = rep.alpha
    if alpha_val is None:
        try:
            alpha_val = widths.alpha(table, spec=parse_spec(args.group))
        except PreconditionError:
            alpha_val = None
    payload = {
        "group": args.group,
        "mode": args.mode,
        "d": rep.d,
        "alpha": alpha_val,
        "minimalT": rep.minimal_t,
        "paperBound": rep.paper_bound,
        "target_order": rep.target_card,
    }
    _write_json_report(cfg, args.out, payload)
    return 0


def _write_json_report(cfg: RunConfig, out, payload):
    if out:
        reports.write_json(Path(out), payload)
        reports.write_sidecar(Path(out), cfg.summary())
    else:
        print(json.dumps(payload, indent=2, sort_keys=True, default=reports.fmt_value))


def _swap_automorphism(table: GroupTable) -> Automorphism:
    emb, sub = table.factor_embeddings, table.factor_tables
    if len(sub) != 2 or sub[0].order != sub[1].order:
        raise PreconditionError("precondition-violated",
                                "swap needs two equal central-product factors")
    gens = [int(emb[0][g]) for g in sub[0].gens] + [int(emb[1][g]) for g in sub[1].gens]
    images = [int(emb[1][g]) for g in sub[0].gens] + [int(emb[0][g]) for g in sub[1].gens]
    return automorphism_from_images(table, gens, images)


def _qsimple_run(group_text: str, autos_text: str, out, cfg: RunConfig) -> int:
    spec = parse_spec(group_text)
    if spec.kind != "central_product":
        raise PreconditionError("factor-data-missing",
                                "qsimple needs a cprod(...) group")
    table = build_group(spec, cap=cfg.enum_cap)
    autos = []
    for part in autos_text.split("+"):
        part = part.strip()
        if part == "swap":
            autos.append(_swap_automorphism(table))
        elif part.startswith("inner:"):
            k = int(part.split(":", 1)[1])
            reps = [c.rep for c in table.classes() if c.size > 1]
            autos.append(inner_automorphism(table, reps[k]))
        else:
            raise InvalidSpecError("invalid-spec", f"unknown automorphism {part!r}")
    report = widths.qsimple_check(table, autos)
    payload = {
        "group": group_text,
        "autos": autos_text,
        "eligible": report.eligible,
        "minimalC": report.minimal_c,
        "witnesses": {str(k): v for k, v in report.witnesses.items()},
    }
    _write_json_report(cfg, out, payload)
    return 0


def cmd_qsimple(args, cfg: RunConfig) -> int:
    group_text = args.group or f"cprod({args.factors})"
    return _qsimple_run(group_text, args.autos, args.out, cfg)


def cmd_lemma_check(args, cfg: RunConfig) -> int:
    table = _build(args.group, cfg)
    if args.auto == "inner:all":
        autos = [inner_automorphism(table, c.rep)
                 for c in table.classes() if c.size > 1]
    elif args.auto.startswith("inner:"):
        autos = [inner_automorphism(table,
                                    table.element_by_render(args.auto[6:]))]
    elif args.auto == "identity":
        autos = [inner_automorphism(table, 0)]
    else:
        raise InvalidSpecError("invalid-spec", f"unknown --auto {args.auto!r}")
    violations = []
    for f in autos:
        violations.extend(widths.lemma_useful_check(table, f))
    payload = {"group": args.group, "autos_checked": len(autos),
               "violations": [table.render_element(v) for v in violations]}
    _write_json_report(cfg, args.out, payload)
    return 0 if not violations else 1


def cmd_filterbase(args, cfg: RunConfig) -> int:
    fam = filterbase.Family.from_file(args.family)
    tuples = [filterbase.make_tuple(fam, kind.strip())
              for kind in args.tuples.split(",")]
    eps = args.eps
    if args.op == "aset":
        idset = filterbase.a_set(fam, tuples[0], eps)
        header = ["index", "h"]
        rows = [(j + 1, filterbase.coordinate_h(c, tuples[0][j]))
                for j, c in enumerate(fam.coords)]
        _emit(cfg, args.csv or args.out, header, rows,
              figure=lambda p: plots.filterbase_figure(rows, p),
              aggregates={"a_set_size": len(idset), "eps": eps,
                          "indices": sorted(idset.indices)})
    elif args.op == "fip":
        rep = filterbase.fip_check(fam, [(t, eps) for t in tuples])
        payload = {
            "hasFIP": rep.has_fip,
            "witness": rep.witness_index,
            "eps_min": rep.eps_min,
            "certificate": [
                {"index": j, "tuple": i, "h": h} for j, i, h in rep.certificate
            ],
        }
        _write_json_report(cfg, args.out, payload)
    elif args.op == "cover-cert":
        n, verified = filterbase.cover_certificate(fam, tuples, eps)
        _write_json_report(cfg, args.out, {"N": n, "verified": verified, "eps": eps})
    elif args.op == "principal":
        spec, in_kernel, checks = filterbase.principal_quotient(fam, args.index)
        _write_json_report(cfg, args.out, {
            "coordinate": render_spec(spec), "index": args.index, **checks,
        })
    else:
        raise InvalidSpecError("invalid-spec", f"unknown op {args.op!r}")
    return 0


def cmd_alpha(args, cfg: RunConfig) -> int:
    spec = parse_spec(args.group)
    table = build_group(spec, cap=cfg.enum_cap)
    value = widths.alpha(table, spec=spec, cap=args.alpha_cap or widths.ALPHA_CAP)
    _write_json_report(cfg, args.out, {"group": args.group, "alpha": value})
    return 0


def cmd_density(args, cfg: RunConfig) -> int:
    if args.tau_product is not None:
        ns = [int(x) for x in args.tau_product.split(",")] if args.tau_product else []
        table = density.build_tau_product(ns, cap=cfg.enum_cap)
        payload = {"tau_product": ns, "order": table.order}
        if args.check_closure:
            whole, closure = density.dense_closure_check(table, table.tau)
            derived = lattice.derived_subgroup_set(table)
            payload.update({
                "closure_of_tau_is_whole": whole,
                "closure_order": closure.card,
                "abelianization_order": table.order // derived.card,
            })
        _write_json_report(cfg, args.out, payload)
        return 0
    table = _build(args.group, cfg)
    dec = density.g_star(table)
    payload = {
        "group": args.group,
        "g_star_order": dec.g_star.card,
        "abelian_part": dec.abelian_part,
        "simple_factors": dec.simple_factors,
    }
    _write_json_report(cfg, args.out, payload)
    return 0


def cmd_residuals(args, cfg: RunConfig) -> int:
    table = _build(args.group, cfg)
    g1, g2, g3 = lattice.residuals(table, cap=cfg.lattice_cap)
    payload = {"group": args.group, "order": table.order,
               "G1_order": g1.card, "G2_order": g2.card, "G3_order": g3.card}
    _write_json_report(cfg, args.out, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="classcover",
        description="finite-group class-product covering, class-size ratios, "
                    "and twisted-commutator widths",
    )
    ap.add_argument("--config", help="TOML or JSON config file")
    ap.add_argument("--enum-cap", type=int, dest="enum_cap")
    ap.add_argument("--lattice-cap", type=int, dest="lattice_cap")
    ap.add_argument("--algebra-cap", type=int, dest="algebra_cap")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--cache-dir")
    ap.add_argument("--format", choices=["csv", "json"])
    ap.add_argument("--jobs", type=int)
    ap.add_argument("--no-plot", action="store_true",
                    help="skip figure rendering next to CSV reports")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cover", help="covering numbers of conjugacy classes")
    p.add_argument("--group")
    p.add_argument("--corpus", help="JSON file: list of group specs")
    p.add_argument("--all-classes", action="store_true")
    p.add_argument("--class-rep", help="restrict to the class of this element")
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("spectrum", help="class-size ratio tables")
    p.add_argument("--mode", choices=["an", "sl"], default="an")
    p.add_argument("--n", help="comma list of alternating degrees")
    p.add_argument("--sl", help="semicolon list of n,p pairs")
    p.add_argument("--beta", help="comma list of beta values (default 0..1 by 0.1)")
    p.add_argument("--literal-alpha", action="store_true",
                   help="use the (1-beta)n cycle-length variant")
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("width", help="twisted-commutator width reports")
    p.add_argument("--group", required=True)
    p.add_argument("--gens",
                   help='elements: "(12),(1234)" for permutations, '
                        '"1,1;0,1|0,2;1,0" for matrices')
    p.add_argument("--mode", choices=["segal", "keyc", "inner", "qsimple"],
                   required=True)
    p.add_argument("--target", help="derived | center | V4 | order:K")
    p.add_argument("--out")
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("lemma-check", help="twisted conjugacy inclusion check")
    p.add_argument("--group", required=True)
    p.add_argument("--auto", default="inner:all",
                   help='inner:all | inner:"(12)" | identity')
    p.add_argument("--out")
    p.set_defaults(func=cmd_lemma_check)

    p = sub.add_parser("qsimple", help="central-product automorphism widths")
    p.add_argument("--group", help="cprod(...) spec")
    p.add_argument("--factors", help='e.g. "SL(2,3),SL(2,3)"')
    p.add_argument("--autos", default="swap", help="swap | inner:K, joined by +")
    p.add_argument("--out")
    p.set_defaults(func=cmd_qsimple)

    p = sub.add_parser("filterbase", help="family index-set mechanics")
    p.add_argument("--family", required=True, help="JSON family file")
    p.add_argument("--op", choices=["aset", "fip", "cover-cert", "principal"],
                   required=True)
    p.add_argument("--tuples", default="three-cycle",
                   help="comma list of identity|three-cycle|long-cycle")
    p.add_argument("--eps", type=float, default=0.3)
    p.add_argument("--index", type=int, default=1, help="coordinate for principal")
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_filterbase)

    p = sub.add_parser("alpha", help="largest alternating section")
    p.add_argument("--group", required=True)
    p.add_argument("--alpha-cap", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("density", help="g-star and tau-product closures")
    p.add_argument("--group")
    p.add_argument("--tau-product", help="comma list of degrees, e.g. 5,6")
    p.add_argument("--check-closure", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("residuals", help="soluble and semisimple residual chain")
    p.add_argument("--group", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_residuals)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig.load(args)
        return args.func(args, cfg)
    except CapExceededError as e:
        print(f"error: {e.reason}: {e}", file=sys.stderr)
        return 3
    except (PreconditionError, InvalidSpecError) as e:
        print(f"error: {e.reason}: {e}", file=sys.stderr)
        return 2
    except ClasscoverError as e:
        print(f"error: {e.reason}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
