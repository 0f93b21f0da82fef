"""Motifs: the finitely many ancestors of curves under run contraction.

A class is a motif when every run of length >= 4 has a same-type companion
within 2 of its length.  Repeatedly contracting runs that fail this test
sends any class to a unique motif; the descendants of a motif of rank rho are
counted by a single binomial coefficient, which is what makes exact census
tables by defect possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from .words import (
    CurveClass,
    WordError,
    canonical_class,
    enumerate_classes,
    is_primitive,
    xyz_to_abc,
)
from .intersection import defect_and_Delta
from .surgery import Run, contract, distinguished_runs, runs


@dataclass(frozen=True)
class MotifRecord:
    cls: CurveClass
    defect: int
    rank: int
    length_L: int
    distinguished: tuple[Run, ...]


def is_motif(w: CurveClass | str) -> bool:
    """Every run of length >= 4 has a same-type run within 2 of it."""
    rs = runs(w)
    for r in rs:
        if r.length < 4:
            continue
        if not any(
            q.length >= r.length - 2
            for q in rs
            if q.run_type == r.run_type and q is not r
        ):
            return False
    return True


def is_thin(w: CurveClass | str) -> bool:
    """No run of length >= 4; thin words are vacuously motifs."""
    return all(r.length <= 3 for r in runs(w))


def _record_of(cls: CurveClass) -> MotifRecord:
    dist = tuple(distinguished_runs(cls.canon))
    delta, _ = defect_and_Delta(cls.canon)
    return MotifRecord(cls, delta, len(dist), cls.length_L, dist)


def motif_of(v: CurveClass | str) -> MotifRecord:
    """The unique motif whose descendants contain v.

    Contracts, per type, the strictly dominant run while it has length >= 4
    and exceeds every same-type run by more than 2; the order of contractions
    does not change the result.
    """
    s = v.canon if isinstance(v, CurveClass) else canonical_class(v).canon
    while True:
        rs = runs(s)
        target = None
        for r in rs:
            if r.length < 4:
                continue
            if all(
                q.length < r.length - 2
                for q in rs
                if q.run_type == r.run_type and q is not r
            ):
                target = r
                break
        if target is None:
            break
        s = contract(s, target)
        if len(s) < 4 or not is_primitive(s):
            raise AssertionError(f"motif contraction left the class domain: {s!r}")
    return _record_of(canonical_class(s))


def binom_conv(n: int, k: int) -> int:
    """Binomial coefficient, zero at negative arguments except (-1, -1) = 1."""
    if n < 0 or k < 0:
        return 1 if n == k == -1 else 0
    return math.comb(n, k) if k <= n else 0


def descendant_count(m: MotifRecord, L: int) -> int:
    """Number of descendants of the motif having combinatorial length L."""
    return binom_conv(L - m.length_L + m.rank - 1, m.rank - 1)


@lru_cache(maxsize=None)
def _motifs_at_length(L: int) -> tuple[MotifRecord, ...]:
    return tuple(
        _record_of(cls) for cls in enumerate_classes(L) if is_motif(cls)
    )


def motifs_up_to(lmax: int) -> list[MotifRecord]:
    """All motif records with length 2 <= L <= lmax, in (L, word) order."""
    out: list[MotifRecord] = []
    for L in range(2, lmax + 1):
        out.extend(_motifs_at_length(L))
    return out


def enumerate_motifs(delta: int, cache_dir: str | Path | None = None) -> list[MotifRecord]:
    """All motifs of the given defect; complete since their length is <= delta + 6."""
    if delta < -1:
        raise WordError(f"no classes have defect {delta} < -1")
    if cache_dir is not None:
        cached = read_motif_cache(cache_dir, delta)
        if cached is not None:
            return cached
    found = [m for m in motifs_up_to(delta + 6) if m.defect == delta]
    if cache_dir is not None:
        write_motif_cache(cache_dir, delta, found)
    return found


# ---------------------------------------------------------------------------
# Disk cache: newline-delimited "word,L,delta,rho" records per defect.
# ---------------------------------------------------------------------------


def _cache_path(cache_dir: str | Path, delta: int) -> Path:
    return Path(cache_dir) / "motifs" / f"delta={delta}.txt"


def write_motif_cache(cache_dir: str | Path, delta: int, records: Iterable[MotifRecord]) -> Path:
    path = _cache_path(cache_dir, delta)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        for m in records:
            fh.write(f"{m.cls.canon},{m.length_L},{m.defect},{m.rank}\n")
    tmp.replace(path)
    return path


def read_motif_cache(cache_dir: str | Path, delta: int) -> list[MotifRecord] | None:
    path = _cache_path(cache_dir, delta)
    if not path.exists():
        return None
    out = []
    for line in path.read_text().splitlines():
        word, L, d, rho = line.split(",")
        rec = _record_of(CurveClass(word, int(L)))
        if rec.defect != int(d) or rec.rank != int(rho):
            raise WordError(f"stale motif cache entry {line!r} in {path}")
        out.append(rec)
    return out


@dataclass
class MotifBoundsReport:
    motifs_checked: int = 0
    motifs_lmax8: int = 0
    thin_l6_9: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_motif_bounds(delta_max: int) -> MotifBoundsReport:
    """Length and excess bounds on motifs, with the sharpness witnesses.

    Checks delta + rho + 3 >= L for every motif with defect <= delta_max;
    Delta + rho >= -3 for all motifs with L <= 8; Delta >= -3 for thin motifs
    with 6 <= L <= 9; and reproduces the witnesses xyzxyz (delta = rho = 0,
    L = 3), the thin motif (xyxz)^2yz with Delta = -4 at L = 5, and the
    imprimitive word (xy)^3 with Delta = -4.
    """
    rep = MotifBoundsReport()
    for delta in range(-1, delta_max + 1):
        for m in enumerate_motifs(delta):
            rep.motifs_checked += 1
            if m.defect + m.rank + 3 < m.length_L:
                rep.violations.append(
                    f"{m.cls.canon}: delta+rho+3 = {m.defect + m.rank + 3} < L = {m.length_L}"
                )
    for m in motifs_up_to(8):
        rep.motifs_lmax8 += 1
        delta_cap = m.defect - m.length_L  # Delta = I - 2L = delta - L
        if delta_cap + m.rank < -3:
            rep.violations.append(
                f"{m.cls.canon}: Delta+rho = {delta_cap + m.rank} < -3 at L <= 8"
            )
    for L in range(6, 10):
        for m in _motifs_at_length(L):
            if not is_thin(m.cls.canon):
                continue
            rep.thin_l6_9 += 1
            if m.defect - m.length_L < -3:
                rep.violations.append(
                    f"{m.cls.canon}: thin motif with Delta < -3 at L = {m.length_L}"
                )
    sharp = motif_of("xyzxyz")
    if (sharp.defect, sharp.rank, sharp.length_L) != (0, 0, 3):
        rep.violations.append("xyzxyz is not the (0, 0, 3) sharpness witness")
    _, d_thin = defect_and_Delta("xyxzxyxzyz")
    if d_thin != -4 or not (is_thin("xyxzxyxzyz") and is_motif("xyxzxyxzyz")):
        rep.violations.append("(xyxz)^2yz is not a thin motif with Delta = -4")
    _, d_power = defect_and_Delta("xyxyxy")
    if d_power != -4:
        rep.violations.append("(xy)^3 does not have Delta = -4")
    return rep


def motif_record_from_word(word: str) -> MotifRecord:
    """Record of a word that is itself a motif (validated)."""
    cls = canonical_class(word)
    if not is_motif(cls):
        raise WordError(f"{word!r} is not a motif")
    return _record_of(cls)


def abc_word(m: MotifRecord) -> str:
    return xyz_to_abc(m.cls.canon)
