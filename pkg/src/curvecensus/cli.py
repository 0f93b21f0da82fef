"""Command-line front end.

Words are accepted in either alphabet (x/y/z or a/b/c with uppercase
inverses); the letter sets are disjoint, so there is no ambiguity.  Output
for a fixed invocation is byte-identical across runs and thread counts.
Flags have environment-variable overrides named CURVECENSUS_<FLAG>.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import census as census_mod
from . import mobius, motifs, report, surgery, words
from .intersection import defect_and_Delta, quad_bound_report, self_intersection


@dataclass
class Config:
    threads: int = 1
    cache_dir: Path | None = None
    fmt: str = "csv"
    lmax: int | None = None
    dmax: int | None = None
    radius: int | None = None


def _env(name: str, cast=str):
    raw = os.environ.get(f"CURVECENSUS_{name}")
    return cast(raw) if raw is not None else None


def _config(args: argparse.Namespace) -> Config:
    cfg = Config()
    cfg.threads = getattr(args, "threads", None) or _env("THREADS", int) or 1
    cache = getattr(args, "cache_dir", None) or _env("CACHE_DIR")
    cfg.cache_dir = Path(cache) if cache else None
    cfg.fmt = getattr(args, "format", None) or _env("FORMAT") or "csv"
    cfg.lmax = getattr(args, "lmax", None) or _env("LMAX", int)
    cfg.dmax = getattr(args, "dmax", None) or _env("DMAX", int)
    cfg.radius = getattr(args, "radius", None) or _env("RADIUS", int)
    if cfg.threads < 1:
        raise ValueError("threads must be positive")
    if cfg.cache_dir is not None:
        cfg.cache_dir.mkdir(parents=True, exist_ok=True)
    return cfg


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True))


def cmd_intersect(args) -> int:
    i = self_intersection(args.word)
    if args.quad_bound:
        i_val, half_q, sixth = quad_bound_report(args.word)
        if args.json:
            _print_json(
                {
                    "word": args.word,
                    "I": i_val,
                    "half_Q": str(half_q),
                    "L2_over_6": str(sixth),
                }
            )
        else:
            print(f"I={i_val} Q/2={half_q} L^2/6={sixth}")
    elif args.json:
        _print_json({"word": args.word, "I": i})
    else:
        print(i)
    return 0


def cmd_defect(args) -> int:
    d, big_d = defect_and_Delta(args.word)
    if args.json:
        _print_json(
            {
                "word": args.word,
                "I": self_intersection(args.word),
                "delta": d,
                "Delta": big_d,
            }
        )
    else:
        print(f"delta={d} Delta={big_d}")
    return 0


def cmd_runs(args) -> int:
    for idx, r in enumerate(surgery.runs(args.word)):
        letters = surgery.run_letters(words.xyz_of(args.word), r)
        print(f"{idx} type={r.run_type} start={r.start} length={r.length} letters={letters}")
    return 0


def _run_by_index(word: str, index: int) -> surgery.Run:
    rs = surgery.runs(word)
    if not 0 <= index < len(rs):
        raise words.WordError(f"run index {index} out of range 0..{len(rs) - 1}")
    return rs[index]


def cmd_expand(args) -> int:
    r = _run_by_index(args.word, args.index)
    print(surgery.expand(words.xyz_of(args.word), r).canon)
    return 0


def cmd_contract(args) -> int:
    r = _run_by_index(args.word, args.index)
    print(surgery.contract(words.xyz_of(args.word), r))
    return 0


def cmd_motif(args) -> int:
    m = motifs.motif_of(args.word)
    print(f"motif={m.cls.canon} L={m.length_L} delta={m.defect} rho={m.rank}")
    return 0


def cmd_motifs(args) -> int:
    cfg = _config(args)
    found = motifs.enumerate_motifs(args.delta, cfg.cache_dir)
    if args.orbits:
        orbits = words.aut_orbit_partition([m.cls for m in found])
        by_canon = {m.cls.canon: m for m in found}
        for orbit in orbits:
            rep = by_canon[orbit[0].canon]
            print(
                f"rho={rep.rank} L={rep.length_L} C={len(orbit)} rep={orbit[0].canon}"
            )
    else:
        for m in found:
            print(f"{m.cls.canon},{m.length_L},{m.defect},{m.rank}")
    return 0


def _build_table(args, cfg: Config) -> census_mod.CensusTable:
    if args.method == "brute":
        lmax = cfg.lmax or 8
        dmax = cfg.dmax if cfg.dmax is not None else 11
        return census_mod.brute_table(
            lmax, dmax, threads=cfg.threads, cache_dir=cfg.cache_dir
        )
    lmax = cfg.lmax or 17
    dmax = cfg.dmax if cfg.dmax is not None else 1
    entries: dict[tuple[int, int], int] = {}
    for delta in range(-1, dmax + 1):
        t = census_mod.motif_table(delta, range(2, lmax + 1), cfg.cache_dir)
        entries.update(t.entries)
    return census_mod.CensusTable(entries, "motif", lmax, dmax)


def _emit_table(table, cfg: Config, out: str | None, figures: str | None) -> None:
    blob = census_mod.export(table, cfg.fmt)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_bytes(blob)
    else:
        sys.stdout.write(blob.decode())
    if figures is not None:
        figdir = Path(figures) if figures else (Path(out).parent if out else Path("."))
        report.census_heatmap(table, figdir / f"census-{table.method}-heatmap.png")


def cmd_census(args) -> int:
    cfg = _config(args)
    table = _build_table(args, cfg)
    _emit_table(table, cfg, args.out, args.figures)
    return 0


def cmd_export(args) -> int:
    cfg = _config(args)
    table = _build_table(args, cfg)
    _emit_table(table, cfg, args.out, args.figures)
    return 0


def cmd_polyfit(args) -> int:
    cfg = _config(args)
    poly = census_mod.poly_extract(args.delta, cfg.cache_dir)
    print(poly)
    if args.figure:
        report.polynomial_figure(args.delta, args.figure, cache_dir=cfg.cache_dir)
    return 0


def _verify_surgery(args, cfg: Config) -> tuple[int, list[str]]:
    lmax = cfg.lmax or 7
    sample = [c for L in range(2, lmax + 1) for c in words.enumerate_classes(L)]
    if args.samples:
        sample += words.random_classes(args.samples, args.sample_lmax, seed=args.seed)
    rep = surgery.verify_surgery(sample)
    print(f"surgery: checked {rep.checked} words, "
          f"{rep.contractions} contractions, {rep.expansions} expansions")
    return rep.checked, rep.violations


def _verify_oracle(args, cfg: Config) -> tuple[int, list[str]]:
    lmax = cfg.lmax or 6
    sample = [c for L in range(2, lmax + 1) for c in words.enumerate_classes(L)]
    if args.samples:
        sample += words.random_classes(args.samples, args.sample_lmax, seed=args.seed)
    violations = []
    for cls in sample:
        combinatorial = self_intersection(cls.canon)
        via_cosets = mobius.intersection_via_cosets(cls, radius=cfg.radius)
        if combinatorial != via_cosets:
            violations.append(
                f"{cls.canon}: pair formula {combinatorial} != coset count {via_cosets}"
            )
    print(f"oracle: checked {len(sample)} words")
    return len(sample), violations


def _verify_motifs(args, cfg: Config) -> tuple[int, list[str]]:
    dmax = cfg.dmax if cfg.dmax is not None else 3
    rep = motifs.verify_motif_bounds(dmax)
    print(
        f"motifs: {rep.motifs_checked} motifs to defect {dmax}, "
        f"{rep.motifs_lmax8} with L<=8, {rep.thin_l6_9} thin with 6<=L<=9"
    )
    return rep.motifs_checked, rep.violations


def _verify_census(args, cfg: Config) -> tuple[int, list[str]]:
    lmax = cfg.lmax or 10
    dmax = cfg.dmax if cfg.dmax is not None else 5
    brute = census_mod.brute_table(
        lmax, dmax, threads=cfg.threads, cache_dir=cfg.cache_dir
    )
    violations = []
    checked = 0
    for delta in range(-1, dmax + 1):
        table = census_mod.motif_table(delta, range(2, lmax + 1), cfg.cache_dir)
        for L in range(2, lmax + 1):
            checked += 1
            if brute.count(delta, L) != table.count(delta, L):
                violations.append(
                    f"N_{delta}({L}): brute {brute.count(delta, L)} "
                    f"!= motif {table.count(delta, L)}"
                )
    print(f"census: compared {checked} entries (delta<={dmax}, L<={lmax})")
    return checked, violations


def cmd_verify(args) -> int:
    cfg = _config(args)
    suites = {
        "surgery": _verify_surgery,
        "oracle": _verify_oracle,
        "motifs": _verify_motifs,
        "census": _verify_census,
    }
    names = suites if args.suite == "all" else {args.suite: suites[args.suite]}
    failed = False
    for name, fn in names.items():
        _, violations = fn(args, cfg)
        for v in violations:
            print(f"VIOLATION [{name}]: {v}")
        print(f"{name}: {'PASS' if not violations else 'FAIL'}")
        failed = failed or bool(violations)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="curvecensus",
        description="Self-intersection numbers and census tables for curves "
        "on the triply-punctured sphere.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, cache=True, threads=False):
        if cache:
            sp.add_argument("--cache-dir", help="directory for motif/census caches")
        if threads:
            sp.add_argument("--threads", type=int, help="worker processes")

    sp = sub.add_parser("intersect", help="self-intersection number of a word")
    sp.add_argument("word")
    sp.add_argument("--quad-bound", action="store_true", help="also print Q/2 and L^2/6")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_intersect)

    sp = sub.add_parser("defect", help="defect I-L and excess I-2L of a word")
    sp.add_argument("word")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_defect)

    sp = sub.add_parser("runs", help="list the runs of a word")
    sp.add_argument("word")
    sp.set_defaults(fn=cmd_runs)

    sp = sub.add_parser("expand", help="expand the run with the given index")
    sp.add_argument("word")
    sp.add_argument("index", type=int)
    sp.set_defaults(fn=cmd_expand)

    sp = sub.add_parser("contract", help="contract the run with the given index")
    sp.add_argument("word")
    sp.add_argument("index", type=int)
    sp.set_defaults(fn=cmd_contract)

    sp = sub.add_parser("motif", help="motif ancestor of a word")
    sp.add_argument("word")
    sp.set_defaults(fn=cmd_motif)

    sp = sub.add_parser("motifs", help="all motifs with a given defect")
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--orbits", action="store_true", help="group into symmetry orbits")
    common(sp)
    sp.set_defaults(fn=cmd_motifs)

    for name, fn in (("census", cmd_census), ("export", cmd_export)):
        sp = sub.add_parser(name, help="build a census table")
        sp.add_argument("--method", choices=("brute", "motif"), default="brute")
        sp.add_argument("--lmax", type=int)
        sp.add_argument("--dmax", type=int)
        sp.add_argument("--format", choices=("csv", "json", "markdown"))
        sp.add_argument("--out", required=(name == "export"), help="output file")
        sp.add_argument(
            "--figures",
            nargs="?",
            const="",
            help="also render figures (optionally into this directory)",
        )
        common(sp, threads=True)
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("polyfit", help="exact quadratic for one defect column")
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--figure", help="render counts vs polynomial to this file")
    common(sp)
    sp.set_defaults(fn=cmd_polyfit)

    sp = sub.add_parser("verify", help="run a property suite")
    sp.add_argument(
        "--suite",
        choices=("surgery", "oracle", "motifs", "census", "all"),
        required=True,
    )
    sp.add_argument("--lmax", type=int)
    sp.add_argument("--dmax", type=int)
    sp.add_argument("--radius", type=int)
    sp.add_argument("--samples", type=int, default=0, help="extra random words")
    sp.add_argument("--sample-lmax", type=int, default=12)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, threads=True)
    sp.set_defaults(fn=cmd_verify)

    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (words.WordError, census_mod.CensusError, mobius.OracleError, ValueError) as exc:
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
