"""Cyclic words for curves on the triply-punctured sphere.

Two alphabets are used throughout: the involutive letters x, y, z (each its
own inverse) and the loop letters a, b, c with inverses written A, B, C.
The change of variables a = xy, b = yz, c = zx identifies even-length words
in the first alphabet with words in the second, and the combinatorial length
L of a loop equals half the x/y/z word length.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

XYZ_LETTERS = "xyz"
ABC_LETTERS = "abcABC"

PAIR_TO_ABC = {"xy": "a", "yx": "A", "yz": "b", "zy": "B", "zx": "c", "xz": "C"}
ABC_TO_PAIR = {v: k for k, v in PAIR_TO_ABC.items()}

# Letter permutations of {x, y, z}: the S3 symmetries of the three punctures.
S3_TABLES = tuple(
    str.maketrans("xyz", "".join(p))
    for p in ("xyz", "xzy", "yxz", "yzx", "zxy", "zyx")
)


class WordError(ValueError):
    """Malformed or out-of-domain word."""


@dataclass(frozen=True)
class ReflectionWord:
    """Word over {x, y, z}; lives in the reflection group."""

    letters: str

    @property
    def ell(self) -> int:
        return len(self.letters)

    @property
    def in_g(self) -> bool:
        # Even-length words are orientation preserving loops.
        return len(self.letters) % 2 == 0

    def __str__(self) -> str:
        return self.letters


@dataclass(frozen=True)
class GroupWord:
    """Word over {a, b, c, A, B, C} (uppercase = inverse)."""

    letters: str

    @property
    def length(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters


@dataclass(frozen=True)
class CurveClass:
    """Canonical representative of an unoriented primitive curve class.

    ``canon`` is the minimal word over all even rotations and even rotations
    of the reversal; it is cyclically reduced, primitive, of length >= 4 and
    uses all three letters.
    """

    canon: str
    length_L: int
    primitive: bool = field(default=True, compare=False)

    def __str__(self) -> str:
        return self.canon


Word = Union[str, ReflectionWord, GroupWord, CurveClass]


def parse_word(text: str) -> ReflectionWord | GroupWord:
    """Parse a word string, inferring the alphabet from its letters."""
    if not text:
        raise WordError("empty input")
    chars = set(text)
    if chars <= set(XYZ_LETTERS):
        return ReflectionWord(text)
    if chars <= set(ABC_LETTERS):
        return GroupWord(text)
    bad = sorted(chars - set(XYZ_LETTERS) - set(ABC_LETTERS))
    if bad:
        raise WordError(f"unknown character {bad[0]!r}")
    raise WordError("word mixes the x/y/z and a/b/c alphabets")


def xyz_of(word: Word) -> str:
    """Underlying x/y/z letter string of any word form (not reduced)."""
    if isinstance(word, CurveClass):
        return word.canon
    if isinstance(word, ReflectionWord):
        return word.letters
    if isinstance(word, GroupWord):
        return abc_to_xyz(word.letters)
    if isinstance(word, str):
        parsed = parse_word(word)
        return xyz_of(parsed)
    raise WordError(f"not a word: {word!r}")


def abc_to_xyz(s: str) -> str:
    try:
        return "".join(ABC_TO_PAIR[c] for c in s)
    except KeyError as exc:
        raise WordError(f"unknown character {exc.args[0]!r}") from None


def xyz_to_abc(s: str) -> str:
    if len(s) % 2:
        raise WordError("odd-length x/y/z word is not a loop")
    out = []
    for i in range(0, len(s), 2):
        pair = s[i : i + 2]
        try:
            out.append(PAIR_TO_ABC[pair])
        except KeyError:
            raise WordError(f"unreduced pair {pair!r} at position {i}") from None
    return "".join(out)


def reduce_xyz(s: str) -> str:
    """Cancel equal adjacent letters until none remain."""
    out: list[str] = []
    for c in s:
        if c not in XYZ_LETTERS:
            raise WordError(f"unknown character {c!r}")
        if out and out[-1] == c:
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def reduce_word(w: GroupWord | str) -> GroupWord:
    """Unique reduced normal form of an a/b/c word.

    Routes through the x/y/z alphabet, where reduction is plain adjacent
    cancellation; reading the result back in letter pairs avoids both inverse
    pairs and the shortcut bigrams ab, bc, ca, BA, CB, AC.
    """
    letters = w.letters if isinstance(w, GroupWord) else w
    if not set(letters) <= set(ABC_LETTERS):
        raise WordError("not an a/b/c word")
    return GroupWord(xyz_to_abc(reduce_xyz(abc_to_xyz(letters))))


def inverse_abc(s: str) -> str:
    return s[::-1].swapcase()


def is_reduced_xyz(s: str) -> bool:
    return all(s[i] != s[i + 1] for i in range(len(s) - 1))


def is_cyclically_reduced_xyz(s: str) -> bool:
    if not is_reduced_xyz(s):
        return False
    return len(s) < 2 or s[0] != s[-1]


def cyclic_reduce_xyz(s: str) -> str:
    """A cyclically reduced representative of the conjugacy class of s."""
    s = reduce_xyz(s)
    while len(s) >= 2 and s[0] == s[-1]:
        s = reduce_xyz(s[1:-1])
    return s


def to_group_word(w: ReflectionWord | str) -> GroupWord:
    """Convert an even reduced x/y/z word to its a/b/c normal form."""
    s = w.letters if isinstance(w, ReflectionWord) else w
    if len(s) % 2:
        raise WordError("odd-length word is not in the loop group")
    if not is_reduced_xyz(s):
        raise WordError("word is not reduced")
    return GroupWord(xyz_to_abc(s))


def to_reflection_word(w: GroupWord | str) -> ReflectionWord:
    letters = w.letters if isinstance(w, GroupWord) else w
    return ReflectionWord(reduce_xyz(abc_to_xyz(letters)))


def even_rotations(s: str) -> Iterator[str]:
    d = s + s
    for r in range(0, len(s), 2):
        yield d[r : r + len(s)]


def canonical_form(s: str) -> str:
    """Minimum over even rotations of s and of its reversal."""
    m = len(s)
    if m % 2:
        raise WordError("odd-length word has no even-rotation class")
    best = min(even_rotations(s))
    return min(best, min(even_rotations(s[::-1])))


def is_primitive(w: ReflectionWord | str) -> bool:
    """True unless the cyclic word is a proper power inside the loop group.

    Only even periods count: an odd cyclic period (such as xyzxyz = (xyz)^2)
    gives a root outside the loop group, so the word is still primitive there.
    """
    s = w.letters if isinstance(w, ReflectionWord) else w
    m = len(s)
    for d in range(2, m, 2):
        if m % d == 0 and s == s[:d] * (m // d):
            return False
    return True


def canonical_class(w: Word) -> CurveClass:
    """Canonical representative of the class of w (even rotation + inversion)."""
    s = xyz_of(w)
    if not s:
        raise WordError("empty word")
    if len(s) % 2:
        raise WordError("odd-length word is not in the loop group")
    if not is_cyclically_reduced_xyz(s):
        raise WordError(f"word {s!r} is not cyclically reduced")
    if len(s) < 4:
        raise WordError(f"word {s!r} has length < 4 (peripheral or trivial)")
    if not is_primitive(s):
        raise WordError(f"word {s!r} is imprimitive")
    return CurveClass(canonical_form(s), len(s) // 2)


def class_contains(cls: CurveClass, s: str) -> bool:
    return canonical_form(s) == cls.canon


# ---------------------------------------------------------------------------
# Enumeration of canonical words.
#
# Depth-first generation of reduced strings in lex order, pruning any prefix
# that some even rotation already beats; a final exact minimality check at
# each leaf also accounts for the reversal family.  Canonical words of classes
# always start with x, the smallest letter.
# ---------------------------------------------------------------------------


def _simulate_threats(prefix: str) -> list[int] | None:
    """Recompute live rotation-tie offsets for a prefix; None if pruned."""
    live: list[int] = []
    for t in range(1, len(prefix)):
        c = prefix[t]
        if c == prefix[t - 1]:
            return None
        nl = []
        for r in live:
            a = prefix[t - r]
            if c < a:
                return None
            if c == a:
                nl.append(r)
        if t % 2 == 0 and c == prefix[0]:
            nl.append(t)
        live = nl
    return live


def _collect_canonical(m: int, prefix: str, out: list[str]) -> None:
    live0 = _simulate_threats(prefix)
    if live0 is None:
        return
    s = list(prefix)
    first = s[0]

    def rec(t: int, live: list[int]) -> None:
        if t == m:
            # The cyclic check matters when the caller hands a full-length
            # prefix; the search itself never builds s[-1] == s[0].
            if s[-1] == first:
                return
            w = "".join(s)
            if canonical_form(w) == w:
                out.append(w)
            return
        last = s[t - 1]
        for c in XYZ_LETTERS:
            if c == last:
                continue
            if t == m - 1 and c == first:
                continue
            nl = []
            dead = False
            for r in live:
                a = s[t - r]
                if c < a:
                    dead = True
                    break
                if c == a:
                    nl.append(r)
            if dead:
                continue
            if t % 2 == 0 and c == first:
                nl.append(t)
            s.append(c)
            rec(t + 1, nl)
            s.pop()

    rec(len(s), live0)


def canonical_words(m: int, prefix: str = "x") -> list[str]:
    """All canonical cyclic reduced words of length m extending the prefix."""
    if m < 2 or m % 2 or not prefix or len(prefix) > m:
        return []
    out: list[str] = []
    _collect_canonical(m, prefix, out)
    return out


def enumeration_prefixes(m: int, depth: int) -> list[str]:
    """Surviving prefixes at a fixed depth; shard keys for parallel runs."""
    depth = max(1, min(depth, m))
    frontier = ["x"]
    while frontier and len(frontier[0]) < depth:
        nxt = []
        for p in frontier:
            for c in XYZ_LETTERS:
                if c == p[-1]:
                    continue
                if len(p) + 1 == m and c == p[0]:
                    continue
                if _simulate_threats(p + c) is not None:
                    nxt.append(p + c)
        frontier = nxt
    return frontier


def enumerate_classes(L: int, prefix: str = "x") -> Iterator[CurveClass]:
    """All curve classes of combinatorial length L, in lex order of canon.

    The stream is produced one prefix chunk at a time, so memory stays
    bounded by a chunk.  Sharding: the union over ``enumeration_prefixes``
    shards equals the unsharded stream regardless of how prefixes are
    grouped.
    """
    if L < 2:
        return
    m = 2 * L
    if prefix == "x" and m > 12:
        chunks = enumeration_prefixes(m, 6)
    else:
        chunks = [prefix]
    for chunk in chunks:
        for w in canonical_words(m, chunk):
            if is_primitive(w):
                yield CurveClass(w, L)


def count_classes(L: int) -> int:
    return sum(1 for _ in enumerate_classes(L))


def permuted_class(cls: CurveClass, table: dict) -> CurveClass:
    return CurveClass(canonical_form(cls.canon.translate(table)), cls.length_L)


def _aut_orbit_key(s: str) -> str:
    # Conjugation by a single reflection shifts the cyclic word by one letter,
    # so the symmetry group of the census acts through letter permutations
    # together with both rotation parities.
    best = None
    for t in S3_TABLES:
        w = s.translate(t)
        cand = min(canonical_form(w), canonical_form(w[1:] + w[0]))
        if best is None or cand < best:
            best = cand
    return best


def aut_orbit_partition(classes: Iterable[CurveClass]) -> list[list[CurveClass]]:
    """Partition classes into orbits of the puncture symmetries.

    The group is generated by the six letter permutations of {x, y, z} and by
    conjugation in the full reflection group; orbit sizes count classes.
    """
    pool = {c.canon: c for c in classes}
    orbits: dict[str, list[CurveClass]] = {}
    for c in pool.values():
        orbits.setdefault(_aut_orbit_key(c.canon), []).append(c)
    return [sorted(v, key=lambda c: c.canon) for _, v in sorted(orbits.items())]


def orbit_size(cls: CurveClass) -> int:
    """Number of distinct classes in the symmetry orbit of cls."""
    seen = set()
    for t in S3_TABLES:
        w = cls.canon.translate(t)
        seen.add(canonical_form(w))
        seen.add(canonical_form(w[1:] + w[0]))
    return len(seen)


def random_classes(count: int, lmax: int, seed: int = 0, lmin: int = 2) -> list[CurveClass]:
    """Deterministic sample of distinct classes with lmin <= L <= lmax."""
    rng = random.Random(seed)
    seen: set[str] = set()
    out: list[CurveClass] = []
    while len(out) < count:
        L = rng.randint(lmin, lmax)
        m = 2 * L
        s = [rng.choice(XYZ_LETTERS)]
        for _ in range(m - 1):
            s.append(rng.choice([c for c in XYZ_LETTERS if c != s[-1]]))
        if s[-1] == s[0]:
            s[-1] = rng.choice([c for c in XYZ_LETTERS if c not in (s[-2], s[0])])
        w = "".join(s)
        if not is_primitive(w):
            continue
        canon = canonical_form(w)
        if canon in seen:
            continue
        seen.add(canon)
        out.append(CurveClass(canon, L))
    return out
