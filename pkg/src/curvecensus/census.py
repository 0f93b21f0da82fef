"""Census tables N_delta(L): brute-force and motif-formula routes, exports.

The brute route enumerates every class of a given length and tallies defects.
The motif route sums descendant counts over the finitely many motifs of a
fixed defect and is valid at every length, which is what lets the table reach
lengths far beyond enumeration range.  Quadratic polynomials are extracted by
exact rational interpolation and re-verified, never fitted numerically.
"""

from __future__ import annotations

import csv
import datetime
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .words import canonical_words, enumeration_prefixes, is_primitive
from .intersection import self_intersection
from .motifs import MotifRecord, binom_conv, descendant_count, enumerate_motifs


class CensusError(RuntimeError):
    """Raised when a table cannot be built or verified."""


@dataclass
class CensusTable:
    """Exact integer map (delta, L) -> count with method provenance."""

    entries: dict[tuple[int, int], int]
    method: str
    lmax: int
    dmax: int | None = None
    provenance: dict = field(default_factory=dict)

    def count(self, delta: int, L: int) -> int:
        return self.entries.get((delta, L), 0)

    def deltas(self) -> list[int]:
        present = [d for d, _ in self.entries]
        hi = self.dmax if self.dmax is not None else (max(present) if present else -1)
        return list(range(-1, hi + 1))

    def lengths(self) -> list[int]:
        ls = sorted({L for _, L in self.entries})
        if self.method == "brute":
            return list(range(2, self.lmax + 1))
        return ls

    def row_complete(self, L: int) -> bool:
        """Rows are complete when the tallied defect range covers the row.

        Counts vanish for delta > (L-3)(L-1)/3 in the observed range, so a
        row is marked complete when every defect beyond dmax lies past that
        threshold.
        """
        if self.method == "motif":
            return False
        if self.dmax is None:
            return True
        return 3 * (self.dmax + 1) > (L - 3) * (L - 1)


def _tally_words(args: tuple[int, tuple[str, ...]]) -> dict[int, int]:
    m, prefixes = args
    tally: dict[int, int] = {}
    L = m // 2
    for prefix in prefixes:
        for w in canonical_words(m, prefix):
            if not is_primitive(w):
                continue
            d = self_intersection(w) - L
            tally[d] = tally.get(d, 0) + 1
    return tally


def _brute_row(L: int, threads: int) -> dict[int, int]:
    m = 2 * L
    if threads <= 1 or L < 6:
        return _tally_words((m, ("x",)))
    prefixes = enumeration_prefixes(m, min(7, m - 1))
    chunks: list[tuple[str, ...]] = [tuple() for _ in range(4 * threads)]
    for k, p in enumerate(prefixes):
        chunks[k % len(chunks)] += (p,)
    tally: dict[int, int] = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(_tally_words, [(m, c) for c in chunks if c]):
            for d, n in part.items():
                tally[d] = tally.get(d, 0) + n
    return tally


def brute_table(
    lmax: int,
    dmax: int | None = None,
    threads: int = 1,
    cache_dir: str | Path | None = None,
) -> CensusTable:
    """Tally (defect, L) over every class with 2 <= L <= lmax.

    With ``cache_dir`` set, finished rows are checkpointed one file per L and
    reused on the next run; totals are identical for any thread count.
    """
    if lmax < 2:
        raise CensusError("brute census needs lmax >= 2")
    entries: dict[tuple[int, int], int] = {}
    for L in range(2, lmax + 1):
        row = _load_row(cache_dir, L) if cache_dir else None
        if row is None:
            row = _brute_row(L, threads)
            if cache_dir:
                _store_row(cache_dir, L, row)
        for d, n in row.items():
            if d < -1:
                raise CensusError(f"defect {d} < -1 tallied at L={L}")
            if dmax is None or d <= dmax:
                entries[(d, L)] = n
    table = CensusTable(
        entries,
        "brute",
        lmax,
        dmax,
        provenance={
            "built_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "shards": threads,
        },
    )
    if cache_dir:
        path = Path(cache_dir) / "census" / f"brute-{lmax}.csv"
        path.write_bytes(export(table, "csv"))
    return table


def _row_path(cache_dir: str | Path, L: int) -> Path:
    return Path(cache_dir) / "census" / f"brute-L{L}.csv"


def _store_row(cache_dir: str | Path, L: int, row: dict[int, int]) -> None:
    path = _row_path(cache_dir, L)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        for d in sorted(row):
            fh.write(f"{d},{row[d]}\n")
    tmp.replace(path)


def _load_row(cache_dir: str | Path, L: int) -> dict[int, int] | None:
    path = _row_path(cache_dir, L)
    if not path.exists():
        return None
    out: dict[int, int] = {}
    for line in path.read_text().splitlines():
        d, n = line.split(",")
        out[int(d)] = int(n)
    return out


def motif_table(
    delta: int,
    l_range: Iterable[int],
    cache_dir: str | Path | None = None,
    motifs: list[MotifRecord] | None = None,
) -> CensusTable:
    """N_delta(L) by the motif formula, valid for every L."""
    if delta < -1:
        raise CensusError(f"no classes have defect {delta} < -1")
    if motifs is None:
        motifs = enumerate_motifs(delta, cache_dir)
    ls = sorted(set(l_range))
    entries = {
        (delta, L): sum(descendant_count(m, L) for m in motifs) for L in ls
    }
    return CensusTable(
        entries,
        "motif",
        max(ls) if ls else 0,
        delta,
        provenance={"motifs": len(motifs)},
    )


def closed_form_eval(delta: int, L: int) -> int:
    """Explicit binomial formulas for the first three defect columns."""
    if delta == -1:
        return (
            3 * binom_conv(L - 2, 1)
            + 3 * binom_conv(L - 1, 1)
            + 6 * binom_conv(L - 2, 2)
        )
    if delta == 0:
        return (
            8 * binom_conv(L - 4, 2)
            + 12 * binom_conv(L - 4, 1)
            + 6 * binom_conv(L - 4, 0)
            + binom_conv(L - 4, -1)
        )
    if delta == 1:
        return (
            3 * binom_conv(L - 5, -1)
            + 24 * binom_conv(L - 5, 0)
            + 54 * binom_conv(L - 5, 1)
            + 12 * binom_conv(L - 4, 1)
            + 36 * binom_conv(L - 5, 2)
            + 24 * binom_conv(L - 4, 2)
        )
    raise CensusError(f"no closed form implemented for delta = {delta}")


@dataclass(frozen=True)
class QuadPoly:
    """Exact quadratic a2*L^2 + a1*L + a0 matching the census from valid_from on."""

    a2: Fraction
    a1: Fraction
    a0: Fraction
    delta: int
    valid_from: int

    def __call__(self, L: int) -> Fraction:
        return self.a2 * L * L + self.a1 * L + self.a0

    def __str__(self) -> str:
        def coeff(f: Fraction) -> str:
            return str(f.numerator) if f.denominator == 1 else str(f)

        parts = [f"{coeff(self.a2)}L^2"]
        for f, mono in ((self.a1, "L"), (self.a0, "")):
            sign = "-" if f < 0 else "+"
            parts.append(f" {sign} {coeff(abs(f))}{mono}")
        return "".join(parts)


def poly_extract(
    delta: int,
    cache_dir: str | Path | None = None,
    motifs: list[MotifRecord] | None = None,
    verify_to: int | None = None,
) -> QuadPoly:
    """Quadratic through the motif counts at L = delta+4, +5, +6.

    Exact rational interpolation; the result is re-checked against the motif
    formula up to L = delta + 10 (a mismatch would be a build-stopping bug).
    """
    base = delta + 4
    hi = verify_to if verify_to is not None else delta + 10
    table = motif_table(delta, range(base, hi + 1), cache_dir, motifs)
    v0, v1, v2 = (table.count(delta, base + k) for k in range(3))
    a2 = Fraction(v0 - 2 * v1 + v2, 2)
    a1 = Fraction(v1 - v0) - a2 * (2 * base + 1)
    a0 = Fraction(v0) - a2 * base * base - a1 * base
    poly = QuadPoly(a2, a1, a0, delta, base)
    for L in range(base, hi + 1):
        if poly(L) != table.count(delta, L):
            raise CensusError(
                f"polynomial for delta={delta} fails at L={L}: "
                f"{poly(L)} != {table.count(delta, L)}"
            )
    return poly


# ---------------------------------------------------------------------------
# Exports.
# ---------------------------------------------------------------------------


def export(table: CensusTable, fmt: str) -> bytes:
    """Serialize a table as csv, json, or a markdown grid."""
    if fmt == "csv":
        return _export_csv(table)
    if fmt == "json":
        return _export_json(table)
    if fmt == "markdown":
        return _export_markdown(table)
    raise CensusError(f"unknown export format {fmt!r}")


def _export_csv(table: CensusTable) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["delta", "L", "count", "method"])
    for (d, L) in sorted(table.entries):
        writer.writerow([d, L, table.entries[(d, L)], table.method])
    return buf.getvalue().encode()


def _export_json(table: CensusTable) -> bytes:
    payload = {
        "method": table.method,
        "lmax": table.lmax,
        "dmax": table.dmax,
        "entries": [
            {"delta": d, "L": L, "count": table.entries[(d, L)]}
            for (d, L) in sorted(table.entries)
        ],
        "complete_rows": {
            str(L): table.row_complete(L) for L in table.lengths()
        },
    }
    return (json.dumps(payload, indent=2) + "\n").encode()


def _export_markdown(table: CensusTable) -> bytes:
    deltas = table.deltas()
    lines = ["| L \\ delta | " + " | ".join(str(d) for d in deltas) + " |"]
    lines.append("|---" * (len(deltas) + 1) + "|")
    for L in table.lengths():
        cells = " | ".join(str(table.count(d, L)) for d in deltas)
        mark = "" if table.row_complete(L) else " *"
        lines.append(f"| {L}{mark} | {cells} |")
    return ("\n".join(lines) + "\n").encode()
