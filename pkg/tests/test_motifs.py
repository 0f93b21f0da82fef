import itertools
import random
from collections import Counter

import pytest

from conftest import MOTIF_COUNTS, TABLE2
from curvecensus.words import (
    WordError,
    aut_orbit_partition,
    canonical_class,
    xyz_to_abc,
)
from curvecensus.intersection import defect_and_Delta
from curvecensus.motifs import (
    binom_conv,
    descendant_count,
    enumerate_motifs,
    is_motif,
    is_thin,
    motif_of,
    motif_record_from_word,
    read_motif_cache,
    verify_motif_bounds,
    write_motif_cache,
)
from curvecensus.surgery import contract, distinguished_runs, expand, runs


def test_binom_conventions():
    assert binom_conv(-1, -1) == 1
    assert binom_conv(3, -1) == 0
    assert binom_conv(-2, 0) == 0
    assert binom_conv(4, 2) == 6
    assert binom_conv(2, 5) == 0


def test_binom_counts_compositions():
    # binom(n+r-1, r-1) counts r-tuples of nonnegative integers summing to n.
    for n in range(-2, 6):
        for r in range(0, 4):
            expected = sum(
                1
                for tup in itertools.product(range(max(n, 0) + 1), repeat=r)
                if sum(tup) == n
            ) if n >= 0 or r == 0 else 0
            if r == 0:
                expected = 1 if n == 0 else 0
            assert binom_conv(n + r - 1, r - 1) == expected


def test_is_motif_examples():
    assert is_motif("xyzxyz")
    assert not is_motif("xyxyxyzxyz")
    assert is_motif("xyxzxyxzyz")


def test_motif_of_examples():
    for m in enumerate_motifs(-1):
        assert motif_of(m.cls).cls == m.cls
    assert motif_of("xyxyxyzxyz").cls == canonical_class("xyxyzxyz")


def test_motif_of_inverts_expansion():
    for m in enumerate_motifs(0):
        for r in distinguished_runs(m.cls.canon):
            assert motif_of(expand(m.cls.canon, r)).cls == m.cls


def test_motif_of_idempotent(classes_by_length):
    for cls in classes_by_length(6)[::7]:
        m = motif_of(cls)
        assert motif_of(m.cls).cls == m.cls


def test_motif_of_order_independent(classes_by_length):
    # Contracting qualifying runs in any order reaches the same motif.
    rng = random.Random(9)

    def random_descent(word: str) -> str:
        s = word
        while True:
            rs = runs(s)
            candidates = [
                r
                for r in rs
                if r.length >= 4
                and all(
                    q.length < r.length - 2
                    for q in rs
                    if q.run_type == r.run_type and q is not r
                )
            ]
            if not candidates:
                return s
            s = contract(s, rng.choice(candidates))

    sample = [c for c in classes_by_length(7) if not is_motif(c)]
    for cls in rng.sample(sample, 40):
        expected = motif_of(cls).cls
        for _ in range(3):
            assert canonical_class(random_descent(cls.canon)) == expected


def test_descendant_count_examples():
    rec = motif_record_from_word("xyzxyz")
    assert rec.rank == 0
    assert descendant_count(rec, 3) == 1
    assert descendant_count(rec, 5) == 0
    full = [m for m in enumerate_motifs(0) if m.rank == 3][0]
    assert descendant_count(full, full.length_L + 2) == binom_conv(4, 2)


def test_rank0_motifs_are_isolated():
    for m in enumerate_motifs(0):
        if m.rank == 0:
            for L in range(2, 10):
                assert descendant_count(m, L) == (1 if L == m.length_L else 0)


@pytest.mark.parametrize("delta", sorted(MOTIF_COUNTS))
def test_motif_counts(delta):
    assert len(enumerate_motifs(delta)) == MOTIF_COUNTS[delta]


def test_motif_term_structure_matches_formulas():
    # Grouping motifs by (rank, length) reproduces the binomial term
    # multiplicities of the closed forms for the first three defects.
    assert Counter(
        (m.rank, m.length_L) for m in enumerate_motifs(-1)
    ) == Counter({(2, 2): 3, (2, 3): 3, (3, 4): 6})
    assert Counter(
        (m.rank, m.length_L) for m in enumerate_motifs(0)
    ) == Counter({(0, 3): 1, (1, 4): 6, (2, 5): 12, (3, 6): 8})
    assert Counter(
        (m.rank, m.length_L) for m in enumerate_motifs(1)
    ) == Counter(
        {(0, 4): 3, (1, 5): 24, (2, 6): 54, (2, 5): 12, (3, 7): 36, (3, 6): 24}
    )


def test_table2_orbits():
    motifs0 = enumerate_motifs(0)
    orbits = aut_orbit_partition([m.cls for m in motifs0])
    by_canon = {m.cls.canon: m for m in motifs0}
    summary = sorted(
        (by_canon[o[0].canon].rank, by_canon[o[0].canon].length_L, len(o))
        for o in orbits
    )
    assert summary == sorted((rho, L, c) for rho, L, c, _ in TABLE2)
    for rho, L, c, word in TABLE2:
        rec = motif_record_from_word(word)
        assert (rec.rank, rec.length_L) == (rho, L)
        orbit = [o for o in orbits if any(x.canon == rec.cls.canon for x in o)]
        assert len(orbit) == 1 and len(orbit[0]) == c


def test_motif_partition_reproduces_small_counts(classes_by_length, intersections_by_length):
    # Descendant counts of the motifs of each defect sum to the brute census.
    for L in (2, 3, 4, 5, 6):
        tally = Counter()
        for canon, i in intersections_by_length(L).items():
            tally[i - L] += 1
        for delta in range(-1, 4):
            motif_sum = sum(
                descendant_count(m, L) for m in enumerate_motifs(delta)
            )
            assert motif_sum == tally.get(delta, 0)


def test_motif_of_is_total_and_lands_on_motifs(classes_by_length):
    for cls in classes_by_length(6)[::5]:
        m = motif_of(cls)
        assert is_motif(m.cls)
        assert m.defect + m.rank + 3 >= m.length_L


def test_thin_implies_no_repeated_group_letter(classes_by_length):
    # Thin words have no repeated adjacent a/b/c letter.  The converse is
    # false: a four-letter run straddling an odd position leaves no repeat,
    # e.g. xyxzxyzy -> aCaB.
    for L in (2, 3, 4, 5):
        for cls in classes_by_length(L):
            abc = xyz_to_abc(cls.canon)
            no_repeat = all(
                abc[i] != abc[(i + 1) % len(abc)] for i in range(len(abc))
            )
            if is_thin(cls):
                assert no_repeat
    counterexample = canonical_class("xyxzxyzy")
    assert not is_thin(counterexample)
    abc = xyz_to_abc(counterexample.canon)
    assert all(abc[i] != abc[(i + 1) % len(abc)] for i in range(len(abc)))


def test_motif_length_bound_small():
    report = verify_motif_bounds(1)
    assert report.ok, report.violations
    assert report.motifs_lmax8 == 2904
    assert report.thin_l6_9 == 536


def test_enumerate_motifs_rejects_bad_defect():
    with pytest.raises(WordError):
        enumerate_motifs(-2)


def test_motif_cache_round_trip(tmp_path):
    records = enumerate_motifs(-1)
    write_motif_cache(tmp_path, -1, records)
    path = tmp_path / "motifs" / "delta=-1.txt"
    assert path.exists()
    assert read_motif_cache(tmp_path, -1) == records
    assert enumerate_motifs(-1, tmp_path) == records


def test_witnesses():
    assert defect_and_Delta("xyxzxyxzyz") == (1, -4)
    assert is_thin("xyxzxyxzyz") and is_motif("xyxzxyxzyz")
    _, big_d = defect_and_Delta("xyxyxy")
    assert big_d == -4
