"""Runs of a cyclic word and the expansion/contraction surgeries.

A run is a maximal cyclic block using only two of the three letters, of
length at least 2; its type names the two letters present.  Expanding a run
repeats its first two letters (L grows by 1), contracting removes them
(L drops by 1).  The verification harness checks how the self-intersection
number responds to these moves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .words import (
    CurveClass,
    WordError,
    canonical_class,
    is_cyclically_reduced_xyz,
    is_primitive,
    xyz_of,
)
from .intersection import self_intersection

RUN_TYPES = ("xy", "yz", "zx")
_OMITTED = {"xy": "z", "yz": "x", "zx": "y"}


@dataclass(frozen=True)
class Run:
    """Maximal two-letter cyclic block: type, start index, letter count."""

    run_type: str
    start: int
    length: int


WordLike = Union[str, CurveClass]


def _word_of(w: WordLike) -> str:
    s = w.canon if isinstance(w, CurveClass) else xyz_of(w)
    if not is_cyclically_reduced_xyz(s):
        raise WordError(f"word {s!r} is not cyclically reduced")
    if len(s) % 2 or len(s) < 4:
        raise WordError(f"word {s!r} is not a curve word (even length >= 4)")
    if set(s) != set("xyz"):
        raise WordError(f"word {s!r} does not use all three letters")
    return s


def runs(w: WordLike) -> list[Run]:
    """All runs of the word, ordered by (type, start index)."""
    s = _word_of(w)
    m = len(s)
    out: list[Run] = []
    for rtype in RUN_TYPES:
        omit = _OMITTED[rtype]
        walls = [i for i, ch in enumerate(s) if ch == omit]
        for k, wall in enumerate(walls):
            nxt = walls[(k + 1) % len(walls)]
            length = (nxt - wall - 1) % m if len(walls) > 1 else m - 1
            if length >= 2:
                out.append(Run(rtype, (wall + 1) % m, length))
    out.sort(key=lambda r: (r.run_type, r.start))
    return out


def run_letters(w: WordLike, r: Run) -> str:
    s = w.canon if isinstance(w, CurveClass) else xyz_of(w)
    d = s + s
    return d[r.start : r.start + r.length]


def _check_run(w: WordLike, r: Run) -> str:
    s = _word_of(w)
    if r not in runs(s):
        raise WordError(f"{r} is not a run of {s!r}")
    return s


def expand(w: WordLike, r: Run) -> CurveClass:
    """Class of the word with run r expanded; L increases by 1.

    The repeated bigram is spliced in place.  Rotating the word to the run
    start first would shift letters by an odd amount whenever the run starts
    at an odd position, which lands in the mirror class, so splicing must
    preserve the original positions.
    """
    s = _check_run(w, r)
    p = r.start
    bigram = s[p] + s[(p + 1) % len(s)]
    return canonical_class(s[:p] + bigram + s[p:])


def contract(w: WordLike, r: Run) -> str:
    """Word with run r contracted; may leave the class domain.

    The result is cyclically reduced with L decreased by 1, but can be
    imprimitive or peripheral, so it is returned as a plain word.  As with
    expansion, letters keep their original position parity; when the removed
    bigram wraps past the end, the result is re-read from the next retained
    even position.
    """
    s = _check_run(w, r)
    if r.length < 3:
        raise WordError(f"run of length {r.length} cannot be contracted")
    m = len(s)
    p = r.start
    if p <= m - 2:
        return s[:p] + s[p + 2 :]
    return s[2 : m - 1] + s[1]


def distinguished_runs(w: WordLike) -> list[Run]:
    """Per type, the strictly longest run when one exists."""
    out = []
    by_type: dict[str, list[Run]] = {}
    for r in runs(w):
        by_type.setdefault(r.run_type, []).append(r)
    for rtype in RUN_TYPES:
        rs = by_type.get(rtype)
        if not rs:
            continue
        longest = max(rs, key=lambda r: r.length)
        if all(r.length < longest.length for r in rs if r is not longest):
            out.append(longest)
    return out


def rank(w: WordLike) -> int:
    """Number of distinguished runs, between 0 and 3."""
    return len(distinguished_runs(w))


def is_exceptional(w: WordLike, r: Run) -> bool:
    """True when contracting r drops the intersection number by exactly 1."""
    s = _check_run(w, r)
    return self_intersection(contract(s, r)) == self_intersection(s) - 1


@dataclass
class SurgeryReport:
    checked: int = 0
    contractions: int = 0
    expansions: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_surgery(sample: Iterable[WordLike]) -> SurgeryReport:
    """Check the surgery laws on every word of the sample.

    Per word: at most one exceptional run per type; every contraction either
    drops I by exactly 1 with the run at least as long as its same-type peers,
    or drops I by 3 or more; expanding a distinguished run raises I by exactly
    1 and preserves the defect; and when a contraction stays in the class
    domain, I changes parity.
    """
    rep = SurgeryReport()
    for w in sample:
        s = w.canon if isinstance(w, CurveClass) else _word_of(w)
        rep.checked += 1
        i_w = self_intersection(s)
        all_runs = runs(s)
        exceptional: dict[str, int] = {t: 0 for t in RUN_TYPES}
        for r in all_runs:
            if r.length < 3:
                continue
            rep.contractions += 1
            contracted = contract(s, r)
            drop = i_w - self_intersection(contracted)
            if drop == 1:
                exceptional[r.run_type] += 1
                peers = [q for q in all_runs if q.run_type == r.run_type]
                if any(q.length > r.length for q in peers):
                    rep.violations.append(
                        f"{s}: exceptional run {r} shorter than a same-type run"
                    )
            elif drop < 3:
                rep.violations.append(
                    f"{s}: contraction of {r} drops I by {drop}, not 1 or >=3"
                )
            if (
                len(contracted) >= 4
                and is_primitive(contracted)
                and drop % 2 == 0
            ):
                rep.violations.append(
                    f"{s}: contraction of {r} changes I by an even amount"
                )
        for rtype, count in exceptional.items():
            if count > 1:
                rep.violations.append(
                    f"{s}: {count} exceptional runs of type {rtype}"
                )
        delta_w = i_w - len(s) // 2
        for r in distinguished_runs(s):
            rep.expansions += 1
            expanded = expand(s, r)
            i_up = self_intersection(expanded.canon)
            if i_up != i_w + 1:
                rep.violations.append(
                    f"{s}: expansion of distinguished {r} gives I={i_up}, want {i_w + 1}"
                )
            if i_up - expanded.length_L != delta_w:
                rep.violations.append(
                    f"{s}: expansion of distinguished {r} changes the defect"
                )
    return rep
