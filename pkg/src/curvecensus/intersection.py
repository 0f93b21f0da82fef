"""Exact self-intersection numbers from cyclic words.

The count is a weighted sum, over ordered pairs of cyclically reduced
conjugates, of a linking test between the two bi-infinite geodesics the
conjugates stabilize through a common basepoint.  The linking test is run in
the degree-3 planar tree of the reflection group: each geodesic is the
bi-infinite periodic x/y/z word through the origin, and two geodesics cross
exactly when their four boundary ends interleave on the circle at infinity.

Boundary ends are compared through itinerary digits.  At a vertex reached by
k letters, the counterclockwise order of the three edge directions is
(x, y, z) for even k and (x, z, y) for odd k (adjacent vertices are mirror
images), so the digit of the next letter is its counterclockwise offset from
the incoming edge.  Lexicographic order on digit strings is then the circular
order of ends, cut at a fixed reference point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .words import (
    GroupWord,
    Word,
    WordError,
    inverse_abc,
    is_cyclically_reduced_xyz,
    xyz_of,
    xyz_to_abc,
)

_XYZ_CODE = {"x": 0, "y": 1, "z": 2}

# a/b/c letters coded so that inversion is "xor 1".
_ABC_CODE = {"a": 0, "A": 1, "b": 2, "B": 3, "c": 4, "C": 5}
_PAIR_CODE = {(0, 1): 0, (1, 0): 1, (1, 2): 2, (2, 1): 3, (2, 0): 4, (0, 2): 5}


def _digits(periodic: tuple[int, ...], horizon: int) -> tuple[int, ...]:
    """Itinerary digits of the end spelled by repeating ``periodic``."""
    q = len(periodic)
    prev = periodic[0]
    out = [prev]
    for k in range(1, horizon):
        cur = periodic[k % q]
        out.append((prev - cur) % 3 if k & 1 else (cur - prev) % 3)
        prev = cur
    return tuple(out)


def _axes(u: tuple[int, ...]):
    """For each even rotation of u: (rotation, forward end, backward end)."""
    m = len(u)
    horizon = m + 4
    doubled = u + u
    axes = []
    for i in range(0, m, 2):
        ui = doubled[i : i + m]
        axes.append((ui, _digits(ui, horizon), _digits(ui[::-1], horizon)))
    return axes


def _linked(axis_i, axis_j) -> int:
    ui, f1, b1 = axis_i
    uj, f2, b2 = axis_j
    if uj == ui or uj == ui[::-1]:
        return 0
    if f2 == f1 or f2 == b1 or b2 == f1 or b2 == b1:
        return 0
    lo, hi = (f1, b1) if f1 < b1 else (b1, f1)
    return 1 if (lo < f2 < hi) != (lo < b2 < hi) else 0


@lru_cache(maxsize=1 << 16)
def _intersection_primitive(u: tuple[int, ...]) -> int:
    """Self-intersection number of a primitive cyclically reduced word."""
    m = len(u)
    n = m // 2
    axes = _axes(u)
    out = [_PAIR_CODE[u[2 * i], u[(2 * i + 1) % m]] for i in range(n)]
    inn = [out[i - 1] ^ 1 for i in range(n)]
    total = 0
    for i in range(n):
        oi, ii = out[i], inn[i]
        axis_i = axes[i]
        for j in range(i + 1, n):
            if _linked(axis_i, axes[j]):
                deg = len({oi, ii, out[j], inn[j]})
                total += 2 * (deg - 2)
    if total % 4:
        raise AssertionError(f"pair sum {total} not divisible by 4 for {u}")
    return total // 4


def _validated_xyz(word: Word) -> str:
    s = xyz_of(word)
    if not s:
        raise WordError("empty word")
    if len(s) % 2:
        raise WordError("odd-length word is not a loop")
    if not is_cyclically_reduced_xyz(s):
        raise WordError(f"word {s!r} is not cyclically reduced")
    return s


def primitive_root(s: str) -> tuple[str, int]:
    """Least even-period root v and exponent k with s = v^k."""
    m = len(s)
    for d in range(2, m, 2):
        if m % d == 0 and s == s[:d] * (m // d):
            return s[:d], m // d
    return s, 1


def self_intersection(word: Word) -> int:
    """Self-intersection number I of the closed curve of ``word``.

    Peripheral loops (L = 1) have I = 0.  Powers are handled by the braiding
    rule I(v^k) = k^2 I(v) + k - 1 on the primitive root; the pair formula is
    only ever evaluated on primitive words.
    """
    s = _validated_xyz(word)
    if len(s) == 2:
        return 0
    root, k = primitive_root(s)
    if k == 1:
        return _intersection_primitive(tuple(_XYZ_CODE[c] for c in s))
    base = 0 if len(root) == 2 else _intersection_primitive(
        tuple(_XYZ_CODE[c] for c in root)
    )
    return k * k * base + k - 1


def defect_and_Delta(word: Word) -> tuple[int, int]:
    """(I - L, I - 2L) for the curve of ``word``."""
    s = _validated_xyz(word)
    i = self_intersection(s)
    L = len(s) // 2
    return i - L, i - 2 * L


def raw_pair_sum(word: Word) -> int:
    """The weighted ordered-pair total before division by 4 (primitive only)."""
    s = _validated_xyz(word)
    root, k = primitive_root(s)
    if k != 1 or len(s) < 4:
        raise WordError("pair sum is defined for primitive words of L >= 2")
    return 4 * _intersection_primitive(tuple(_XYZ_CODE[c] for c in s))


# ---------------------------------------------------------------------------
# Axes through the origin, exposed for inspection and tests.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxisThroughOrigin:
    """Geodesic through the origin stabilized by one cyclic conjugate."""

    rotation_index: int
    word: GroupWord
    in_germ: str
    out_germ: str
    _axis: tuple = field(repr=False, compare=False, default=None)


def axes_of(word: Word) -> list[AxisThroughOrigin]:
    s = _validated_xyz(word)
    if len(s) < 4:
        raise WordError("axes are defined for L >= 2")
    root, k = primitive_root(s)
    if k != 1:
        raise WordError("axes of conjugates are defined for primitive words")
    u = tuple(_XYZ_CODE[c] for c in s)
    axes = _axes(u)
    n = len(s) // 2
    abc = xyz_to_abc(s)
    out = []
    for i in range(n):
        w_i = abc[i:] + abc[:i]
        out.append(
            AxisThroughOrigin(
                rotation_index=i + 1,
                word=GroupWord(w_i),
                in_germ=inverse_abc(abc[i - 1]),
                out_germ=abc[i],
                _axis=axes[i],
            )
        )
    return out


def linked(d1: AxisThroughOrigin, d2: AxisThroughOrigin) -> int:
    """1 if the two axes cross in the plane, else 0.  Symmetric."""
    return _linked(d1._axis, d2._axis)


def deg_e(word: Word, i: int, j: int) -> int:
    """Number of distinct edge germs at the origin for conjugates i, j (1-based)."""
    s = _validated_xyz(word)
    abc = xyz_to_abc(s)
    n = len(abc)
    if not (1 <= i <= n and 1 <= j <= n):
        raise WordError(f"conjugate indices must lie in 1..{n}")
    germs = {
        abc[i - 1],
        inverse_abc(abc[i - 2]),
        abc[j - 1],
        inverse_abc(abc[j - 2]),
    }
    return len(germs)


# ---------------------------------------------------------------------------
# Hexagon chords and the crossing form.
#
# Sides of the hexagon carry the six a/b/c letters in the cyclic order
# (a, A, b, B, c, C); a chord joins two non-adjacent sides, and two chords
# cross when their side pairs interleave around the hexagon.
# ---------------------------------------------------------------------------

HEXAGON_SIDES = "aAbBcC"

CHORDS: tuple[tuple[int, int], ...] = tuple(
    (i, j)
    for i in range(6)
    for j in range(i + 1, 6)
    if j - i not in (1, 5)
)

CHORD_NAMES = tuple(
    f"[{HEXAGON_SIDES[i]},{HEXAGON_SIDES[j]}]" for i, j in CHORDS
)

_CHORD_INDEX = {pair: k for k, pair in enumerate(CHORDS)}


def _chords_cross(k1: tuple[int, int], k2: tuple[int, int]) -> int:
    if set(k1) & set(k2):
        return 0
    a, b = k1
    inside = sum(1 for v in k2 if a < v < b)
    return 1 if inside == 1 else 0


Q_MATRIX: tuple[tuple[int, ...], ...] = tuple(
    tuple(_chords_cross(k1, k2) for k2 in CHORDS) for k1 in CHORDS
)


def chord_by_sides(u: str, v: str) -> int:
    """Index of the chord joining sides u and v (letters among aAbBcC)."""
    i, j = sorted((HEXAGON_SIDES.index(u), HEXAGON_SIDES.index(v)))
    try:
        return _CHORD_INDEX[(i, j)]
    except KeyError:
        raise WordError(f"sides {u!r} and {v!r} are adjacent; no chord") from None


@dataclass(frozen=True)
class ChordVector:
    """Integer combination of the nine hexagon chords."""

    coords: tuple[int, ...]

    @property
    def lam(self) -> int:
        return sum(self.coords)

    @property
    def boundary(self) -> tuple[int, int, int]:
        out = [0, 0, 0]
        for k, (i, j) in enumerate(CHORDS):
            c = self.coords[k]
            if c:
                out[i // 2] += c * (1 if i % 2 == 0 else -1)
                out[j // 2] += c * (1 if j % 2 == 0 else -1)
        return tuple(out)


def chord_vector(word: Word) -> ChordVector:
    """Chord vector of a cyclically reduced word with no repeated letter.

    Each position contributes the chord joining the inverse of the previous
    letter to the current one; a repeated adjacent letter (cyclically) would
    put the two on adjacent hexagon sides, where no chord exists.
    """
    s = _validated_xyz(word)
    abc = xyz_to_abc(s)
    n = len(abc)
    if n < 2:
        raise WordError("chord vector needs L >= 2")
    coords = [0] * 9
    for i in range(n):
        prev, cur = abc[i - 1], abc[i]
        if prev == cur:
            raise WordError(f"repeated letter {cur!r}: chord undefined")
        coords[chord_by_sides(inverse_abc(prev), cur)] += 1
    return ChordVector(tuple(coords))


def chord_form_Q(v1: ChordVector, v2: ChordVector) -> int:
    """Bilinear crossing form on chord vectors."""
    total = 0
    for i, c1 in enumerate(v1.coords):
        if c1:
            row = Q_MATRIX[i]
            total += c1 * sum(c2 * row[j] for j, c2 in enumerate(v2.coords) if c2)
    return total


def quad_bound_report(word: Word) -> tuple[int, Fraction, Fraction]:
    """(I, Q(v,v)/2, L^2/6) for a thin word; I >= Q/2 >= L^2/6 holds."""
    v = chord_vector(word)
    i = self_intersection(word)
    L = v.lam
    return i, Fraction(chord_form_Q(v, v), 2), Fraction(L * L, 6)
