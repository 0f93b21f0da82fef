import pytest

from curvecensus.words import WordError, canonical_class, canonical_form
from curvecensus.intersection import self_intersection
from curvecensus.surgery import (
    Run,
    contract,
    distinguished_runs,
    expand,
    is_exceptional,
    rank,
    run_letters,
    runs,
    verify_surgery,
)


def _runs_of_type(word, t):
    return [r for r in runs(word) if r.run_type == t]


def test_runs_of_xyzy():
    rs = runs("xyzy")
    assert [(r.run_type, r.length) for r in rs] == [("xy", 3), ("yz", 3)]
    assert run_letters("xyzy", rs[0]) == "yxy"
    assert run_letters("xyzy", rs[1]) == "yzy"


def test_runs_of_xyxyzxyz():
    lengths = sorted((r.run_type, r.length) for r in runs("xyxyzxyz"))
    assert lengths == [("xy", 2), ("xy", 4), ("yz", 2), ("yz", 2), ("zx", 2), ("zx", 2)]


def test_runs_of_the_trefoil_word():
    assert [r.length for r in runs("xyzxyz")] == [2] * 6


def test_run_length_bounds(classes_by_length):
    for L in (2, 3, 4, 5):
        for cls in classes_by_length(L):
            for r in runs(cls):
                assert 2 <= r.length < 2 * L


def test_every_letter_in_one_or_two_runs(classes_by_length):
    for L in (2, 3, 4, 5):
        for cls in classes_by_length(L):
            m = 2 * L
            cover = [0] * m
            for r in runs(cls):
                for k in range(r.length):
                    cover[(r.start + k) % m] += 1
            assert all(1 <= c <= 2 for c in cover)


def test_expand_example():
    r = _runs_of_type("xyzy", "xy")[0]
    assert expand("xyzy", r) == canonical_class("xyxyzy")


def test_expand_matches_inline_run_reading():
    # Expanding the initial xy of xyzy gives the same class as expanding
    # the cyclic block yxy.
    r = _runs_of_type("xyzy", "xy")[0]
    assert expand("xyzy", r).canon == canonical_form("xyxyzy")


def test_expand_increments_length(classes_by_length):
    for cls in classes_by_length(3):
        for r in runs(cls):
            assert expand(cls, r).length_L == 4


def test_expand_rejects_foreign_run():
    with pytest.raises(WordError, match="not a run"):
        expand("xyzy", Run("zx", 0, 2))


def test_contract_example():
    zx = _runs_of_type("xzxyxy", "zx")[0]
    assert contract("xzxyxy", zx) == "xyxy"


def test_contract_to_peripheral():
    # The yxy run wraps; the two-letter remainder is read from the next
    # retained even position, giving zy.
    r = _runs_of_type("xyzy", "xy")[0]
    assert contract("xyzy", r) == "zy"


def test_contract_needs_length_three():
    r = _runs_of_type("xyzxyz", "xy")[0]
    with pytest.raises(WordError, match="contract"):
        contract("xyzxyz", r)


def test_expansion_site_independence(classes_by_length):
    # Splicing the alternating bigram anywhere inside the run gives the
    # same class as repeating its first two letters.
    for cls in classes_by_length(4):
        s = cls.canon
        m = len(s)
        for r in runs(s):
            expected = expand(s, r)
            for offset in range(1, r.length - 1):
                pos = (r.start + offset) % m
                bigram = s[pos] + s[(pos + 1) % m]
                variant = s[:pos] + bigram + s[pos:]
                assert canonical_class(variant) == expected


def _expanded_word(s: str, r: Run) -> str:
    bigram = s[r.start] + s[(r.start + 1) % len(s)]
    return s[: r.start] + bigram + s[r.start :]


def _contracted_run_start(m: int, r: Run) -> int:
    # Where the third letter of the run lands after removing the first two.
    if r.start == m - 1:
        return m - 3
    if r.start == m - 2:
        return 0
    return r.start


def test_expand_then_contract_round_trip(classes_by_length):
    for cls in classes_by_length(4):
        s = cls.canon
        for r in runs(s):
            expanded_word = _expanded_word(s, r)
            bigger = Run(r.run_type, r.start, r.length + 2)
            assert bigger in runs(expanded_word)
            assert contract(expanded_word, bigger) == s


def test_contract_then_expand_round_trip(classes_by_length):
    for cls in classes_by_length(5):
        base = canonical_class(cls.canon)
        for r in runs(cls):
            if r.length < 4:
                continue
            shrunk = contract(cls.canon, r)
            smaller = Run(r.run_type, _contracted_run_start(2 * 5, r), r.length - 2)
            assert smaller in runs(shrunk)
            assert expand(shrunk, smaller) == base


def test_surgery_preserves_position_parity():
    # Expanding a run that starts at an odd position must not land in the
    # mirror class; the splice happens in place.
    s = "xyxyzxyz"
    r = Run("xy", 5, 2)
    assert r in runs(s)
    grown = expand(s, r)
    assert grown == canonical_class("xyxyzxyxyz")
    bigger = Run("xy", 5, 4)
    assert contract(_expanded_word(s, r), bigger) == s


def test_wrapping_run_surgery():
    # A run whose first two letters straddle the end of the string.
    for cls in [canonical_class("xzyxyzyz")] :
        s = cls.canon
        for r in runs(s):
            if r.start + 2 <= len(s):
                continue
            expanded_word = _expanded_word(s, r)
            assert canonical_class(expanded_word) == expand(s, r)
            if r.length >= 3:
                back = contract(expanded_word, Run(r.run_type, r.start, r.length + 2))
                assert canonical_class(back) == cls


def test_distinguished_and_rank_examples():
    assert rank("xyzxyz") == 0
    assert rank("xyxyzxyz") == 1
    assert [r.run_type for r in distinguished_runs("xyxyzxyz")] == ["xy"]
    assert rank("xyzy") == 2


def test_rank_bounds(classes_by_length):
    for cls in classes_by_length(5):
        assert 0 <= rank(cls) <= 3


def test_exceptional_examples():
    w = "xyxyxyzxyz"
    six = [r for r in runs(w) if r.length == 6][0]
    assert is_exceptional(w, six)
    yxy = _runs_of_type("xyzy", "xy")[0]
    assert is_exceptional("xyzy", yxy)


def test_length_bookkeeping(classes_by_length):
    for cls in classes_by_length(4):
        for r in runs(cls):
            assert expand(cls, r).length_L == cls.length_L + 1
            if r.length >= 3:
                assert len(contract(cls, r)) == 2 * cls.length_L - 2


def test_verify_surgery_clean_up_to_L5(classes_by_length):
    sample = [c for L in (2, 3, 4, 5) for c in classes_by_length(L)]
    report = verify_surgery(sample)
    assert report.ok, report.violations
    assert report.checked == len(sample)


def test_verify_surgery_expansion_counts():
    report = verify_surgery([canonical_class("xyzxyz")])
    # rank 0: no distinguished runs to expand, six contractible-length-2 runs skipped
    assert report.expansions == 0 and report.contractions == 0
    assert report.ok


def test_expanding_trefoil_runs_raises_I():
    w = "xyzxyz"
    i0 = self_intersection(w)
    for r in runs(w):
        rot = w[r.start :] + w[: r.start]
        assert self_intersection(rot[:2] + rot) == i0 + 1
