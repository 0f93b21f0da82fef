"""Independent check of self-intersection numbers via Möbius geometry.

The curve group is realized by integer 2x2 matrices acting on the upper
halfplane, with the three peripheral loops parabolic and the defining
relation holding exactly.  A word's geodesic lifts to the axis of its matrix;
translated axes of double-coset representatives cross the base axis exactly
when their real fixed points interleave, and half the number of crossing
cosets is the self-intersection number.

All endpoint comparisons are exact: fixed points are quadratic surds over
the integers and signs are resolved by nested squaring, so the crossing
predicate involves no floating point and no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Union

from .words import (
    CurveClass,
    GroupWord,
    ReflectionWord,
    Word,
    WordError,
    abc_to_xyz,
    is_cyclically_reduced_xyz,
    reduce_xyz,
    xyz_to_abc,
)
from .intersection import primitive_root


class OracleError(RuntimeError):
    """The oracle could not produce a trustworthy count."""


class OracleInstability(OracleError):
    """Coset counts failed to stabilize below the radius cap."""


# ---------------------------------------------------------------------------
# Exact boundary points: quadratic surds and the point at infinity.
# ---------------------------------------------------------------------------


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INF = _Infinity()


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _sign_a_plus_b_sqrt(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d) for integers with d >= 0."""
    if d == 0 or b == 0:
        return _sign(a)
    if a == 0:
        return _sign(b)
    if (a > 0) == (b > 0):
        return _sign(a)
    lhs, rhs = a * a, b * b * d
    if lhs == rhs:
        return 0
    return _sign(a) if lhs > rhs else _sign(b)


def _sign_two_radicals(a: int, b: int, d1: int, c: int, d2: int) -> int:
    """Sign of a + b*sqrt(d1) + c*sqrt(d2)."""
    sx = _sign_a_plus_b_sqrt(a, b, d1)
    sy = _sign(c) if d2 > 0 else 0
    if sy == 0:
        return sx
    if sx == 0:
        return sy
    if sx == sy:
        return sx
    t = _sign_a_plus_b_sqrt(a * a + b * b * d1 - c * c * d2, 2 * a * b, d1)
    if t == 0:
        return 0
    return sx if t > 0 else sy


@dataclass(frozen=True, eq=False)
class Surd:
    """Exact real number (a + b*sqrt(d)) / c with integer entries, c > 0."""

    a: int
    b: int
    d: int
    c: int

    def compare(self, other: "Surd") -> int:
        return _sign_two_radicals(
            self.a * other.c - other.a * self.c,
            self.b * other.c,
            self.d,
            -other.b * self.c,
            other.d,
        )

    def __eq__(self, other: object) -> bool:
        if isinstance(other, _Infinity):
            return False
        if isinstance(other, int):
            other = make_surd(other)
        return isinstance(other, Surd) and self.compare(other) == 0

    def __lt__(self, other: "Surd") -> bool:
        return self.compare(other) < 0

    def __float__(self) -> float:
        return (self.a + self.b * self.d ** 0.5) / self.c

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}/{self.c}" if self.c != 1 else str(self.a)
        return f"({self.a} + {self.b}*sqrt({self.d}))/{self.c}"


def make_surd(a: int, b: int = 0, d: int = 0, c: int = 1) -> Surd:
    if c == 0:
        raise ZeroDivisionError("surd with zero denominator")
    if d < 0:
        raise ValueError("negative discriminant")
    if b == 0 or d == 0:
        b, d = 0, 0
    else:
        r = isqrt(d)
        if r * r == d:
            a, b, d = a + b * r, 0, 0
    if c < 0:
        a, b, c = -a, -b, -c
    g = gcd(gcd(abs(a), abs(b)), c)
    if g > 1:
        a, b, c = a // g, b // g, c // g
    return Surd(a, b, d, c)


Point = Union[Surd, _Infinity]


def points_equal(p: Point, q: Point) -> bool:
    if isinstance(p, _Infinity) or isinstance(q, _Infinity):
        return p is q
    return p.compare(q) == 0


# ---------------------------------------------------------------------------
# Matrices.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MobiusMatrix:
    """Integer 2x2 matrix acting on the halfplane by fractional maps."""

    a: int
    b: int
    c: int
    d: int

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __mul__(self, o: "MobiusMatrix") -> "MobiusMatrix":
        return MobiusMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def inverse(self) -> "MobiusMatrix":
        # Adjugate; the true inverse for determinant-one matrices.
        return MobiusMatrix(self.d, -self.b, -self.c, self.a)

    def is_identity_up_to_sign(self) -> bool:
        return (self.b, self.c) == (0, 0) and self.a == self.d in (1, -1)


IDENTITY = MobiusMatrix(1, 0, 0, 1)

# Parabolic images of the three peripheral loops; the relation abc = id holds
# exactly.  The specific matrices are a choice, validated by the trace and
# relation invariants rather than taken as given.
GENERATOR_MATRICES = {
    "a": MobiusMatrix(1, 2, 0, 1),
    "A": MobiusMatrix(1, -2, 0, 1),
    "b": MobiusMatrix(1, 0, -2, 1),
    "B": MobiusMatrix(1, 0, 2, 1),
    "c": MobiusMatrix(1, -2, 2, -3),
    "C": MobiusMatrix(-3, 2, -2, 1),
}


def _as_abc(word: Word) -> str:
    if isinstance(word, CurveClass):
        return xyz_to_abc(word.canon)
    if isinstance(word, GroupWord):
        return word.letters
    if isinstance(word, ReflectionWord):
        return xyz_to_abc(word.letters)
    if isinstance(word, str):
        if not word:
            return ""
        if set(word) <= set("xyz"):
            return xyz_to_abc(word)
        return word
    raise WordError(f"not a word: {word!r}")


def rep_matrix(word: Word) -> MobiusMatrix:
    """Product of the generator matrices along the word."""
    m = IDENTITY
    for ch in _as_abc(word):
        try:
            m = m * GENERATOR_MATRICES[ch]
        except KeyError:
            raise WordError(f"unknown character {ch!r}") from None
    return m


def axis_endpoints(m: MobiusMatrix) -> tuple[Point, Point]:
    """The two fixed boundary points of a hyperbolic matrix, in increasing order."""
    disc = m.trace * m.trace - 4 * m.det
    if disc <= 0:
        raise OracleError(f"matrix {m} is parabolic or elliptic: no axis")
    if m.c == 0:
        return make_surd(m.b, 0, 0, m.d - m.a), INF
    lo = make_surd(m.a - m.d, -1, disc, 2 * m.c)
    hi = make_surd(m.a - m.d, 1, disc, 2 * m.c)
    if hi < lo:
        lo, hi = hi, lo
    return lo, hi


def linked_pairs(p: tuple[Point, Point], q: tuple[Point, Point]) -> bool:
    """True when the endpoint pairs interleave on the boundary circle.

    Any coincidence among the four points counts as unlinked.
    """
    p1, p2 = p
    q1, q2 = q
    for u in (q1, q2):
        if points_equal(p1, u) or points_equal(p2, u):
            return False
    if points_equal(p1, p2) or points_equal(q1, q2):
        return False
    if isinstance(p1, _Infinity) or isinstance(p2, _Infinity):
        pf = p2 if isinstance(p1, _Infinity) else p1
        return (pf < q1) != (pf < q2)
    if isinstance(q1, _Infinity) or isinstance(q2, _Infinity):
        qf = q2 if isinstance(q1, _Infinity) else q1
        return (qf < p1) != (qf < p2)
    lo, hi = (p1, p2) if p1 < p2 else (p2, p1)
    return (lo < q1 < hi) != (lo < q2 < hi)


# ---------------------------------------------------------------------------
# Double-coset crossing count.
# ---------------------------------------------------------------------------


def _coset_key(g: str, w: str, n: int) -> str:
    """Canonical word of the double coset <w> g <w>.

    Minimizes length, then lexicographic order, over w^s g w^t.  The search
    window is widened whenever the minimum lands on its edge, so the reported
    minimum is interior-stable.
    """
    window = max(3, len(g) // (2 * n) + 2)
    while True:
        span = range(-window, window + 1)
        powers = {0: ""}
        for s in range(1, window + 1):
            powers[s] = w * s
            powers[-s] = (w * s)[::-1]
        best = None
        arg = (0, 0)
        for s in span:
            mid = reduce_xyz(powers[s] + g)
            for t in span:
                if best is not None and abs(len(mid) - len(powers[t])) > len(best):
                    continue
                cand = reduce_xyz(mid + powers[t])
                rank_ = (len(cand), cand, max(abs(s), abs(t)))
                if best is None or rank_ < (len(best), best, max(map(abs, arg))):
                    best, arg = cand, (s, t)
        if abs(arg[0]) < window and abs(arg[1]) < window:
            return best
        window += 2


def _crossing_cosets(word: Word) -> dict[str, bool]:
    """Canonical coset key -> whether the translated axis crosses the base axis."""
    abc = _as_abc(word)
    s = abc_to_xyz(abc)
    if not s or len(s) % 2:
        raise OracleError("need a loop word")
    if not is_cyclically_reduced_xyz(s):
        raise OracleError(f"word {s!r} is not cyclically reduced")
    root, k = primitive_root(s)
    if k != 1:
        raise OracleError(
            "imprimitive input: the coset formula assumes a primitive word"
        )
    n = len(s) // 2
    if n < 2:
        raise OracleError("peripheral word has no crossing cosets")
    m_w = rep_matrix(abc)
    base = axis_endpoints(m_w)
    raw: set[str] = set()
    for i in range(n):
        left = s[: 2 * i]
        for j in range(n):
            raw.add(reduce_xyz(left + s[: 2 * j][::-1]))
    out: dict[str, bool] = {}
    for g in raw:
        key = _coset_key(g, s, n)
        if key in out:
            continue
        if not key:
            out[key] = False
            continue
        m_g = rep_matrix(xyz_to_abc(key))
        translated = axis_endpoints(m_g * m_w * m_g.inverse())
        out[key] = linked_pairs(translated, base)
    return out


def intersection_via_cosets(
    word: Word,
    radius: int | None = None,
    max_radius: int | None = None,
) -> int:
    """Self-intersection number as half the number of crossing double cosets.

    Cosets are counted through canonical representatives of length at most
    ``radius`` (default 2L + 4); the radius is doubled until the count agrees
    with the count at radius + 2, and instability at the cap is an error
    rather than a guess.
    """
    cosets = _crossing_cosets(word)
    n = len(_as_abc(word))
    r = radius if radius is not None else 2 * n + 4
    cap = max_radius if max_radius is not None else max(8 * n + 16, 4 * r)

    def count(rad: int) -> int:
        return sum(1 for key, hit in cosets.items() if hit and len(key) <= 2 * rad)

    while True:
        c0, c1 = count(r), count(r + 2)
        if c0 == c1:
            break
        if r >= cap:
            raise OracleInstability(
                f"count did not stabilize below radius cap {cap}"
            )
        r *= 2
    if c0 % 2:
        raise OracleError(f"odd crossing-coset count {c0}")
    return c0 // 2
