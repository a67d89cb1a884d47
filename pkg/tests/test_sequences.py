"""Sequence kinds: exact counting, residue classes, density records."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sweepout import (
    BlockSequence,
    ConfigError,
    DensityRecordPoint,
    FileSequence,
    IntegerSequence,
    PreconditionError,
    SearchBudgetExhausted,
    SquareSequence,
    count_congruent,
    dump_sequence,
    find_density_record,
    load_sequence,
    sequence_from_spec,
)

F = Fraction


def brute_count_congruent(lo, hi, r, m):
    return sum(1 for x in range(lo, hi) if x % m == r % m)


class TestCountCongruent:
    def test_anchors(self):
        assert count_congruent(1, 11, 0, 2) == 5
        assert count_congruent(5, 6, 5, 7) == 1
        assert count_congruent(5, 5, 0, 1) == 0
        assert count_congruent(10, 4, 0, 1) == 0
        assert count_congruent(1, 10, -1, 3) == 3   # -1 == 2 mod 3
        assert count_congruent(1, 10, 5, 3) == 3    # 5  == 2 mod 3

    @given(lo=st.integers(-50, 200), span=st.integers(0, 120),
           r=st.integers(-10, 20), m=st.integers(1, 12))
    def test_matches_enumeration(self, lo, span, r, m):
        hi = lo + span
        assert count_congruent(lo, hi, r, m) == \
            brute_count_congruent(lo, hi, r, m)


class TestSquares:
    def setup_method(self):
        self.seq = SquareSequence()

    def test_count_anchors(self):
        assert self.seq.count(1) == 0
        assert self.seq.count(2) == 1
        assert self.seq.count(101) == 10
        assert self.seq.count(10 ** 6) == 999
        with pytest.raises(PreconditionError):
            self.seq.count(0)

    def test_count_against_enumeration(self):
        running = 0
        squares = {y * y for y in range(1, 101)}
        for n in range(1, 10 ** 4):
            assert self.seq.count(n) == running
            if n in squares:
                running += 1

    def test_elements_in(self):
        assert self.seq.elements_in(10, 30) == [16, 25]
        assert self.seq.elements_in(1, 5) == [1, 4]
        assert self.seq.elements_in(17, 25) == []
        assert self.seq.elements_in(30, 10) == []
        assert self.seq.element(7) == 49

    def test_contains(self):
        assert 16 in self.seq
        assert 15 not in self.seq
        assert 0 not in self.seq

    def test_ratio_decreases_with_scale(self):
        r3 = self.seq.ratio(10 ** 3)
        r6 = self.seq.ratio(10 ** 6)
        r9 = self.seq.ratio(10 ** 9)
        assert r3 > r6 > r9
        assert r3 == F(31, 1000)

    def test_residue_counts_anchor(self):
        assert self.seq.residue_counts(101, 8) == [2, 5, 0, 0, 3, 0, 0, 0]

    def test_residue_counts_sum(self):
        counts = self.seq.residue_counts(2000, 12)
        assert sum(counts) == self.seq.count(2000)


class TestBlocks:
    def setup_method(self):
        self.seq = BlockSequence()

    def test_elements(self):
        assert [self.seq.element(i) for i in range(1, 8)] == \
            [2, 16, 17, 512, 513, 514, 65536]
        assert self.seq.elements_in(1, 600) == [2, 16, 17, 512, 513, 514]

    def test_count_anchors(self):
        for n, c in [(2, 0), (3, 1), (16, 1), (17, 2), (18, 3),
                     (512, 3), (513, 4), (515, 6), (65536, 6), (65537, 7)]:
            assert self.seq.count(n) == c, n

    def test_count_at_scale(self):
        assert self.seq.ratio(10 ** 6) == F(10, 10 ** 6)
        assert self.seq.ratio(10 ** 9) == F(15, 10 ** 9)
        # far beyond anything enumerable: 21 blocks fit below 2**445
        assert self.seq.count(1 << 445) == 21 * 22 // 2

    def test_contains(self):
        assert 2 in self.seq
        assert 514 in self.seq
        assert 515 not in self.seq
        assert 3 not in self.seq

    def test_residue_counts_sum(self):
        counts = self.seq.residue_counts(2000, 7)
        assert sum(counts) == self.seq.count(2000) == 6


@pytest.mark.parametrize("seq", [SquareSequence(), BlockSequence(),
                                 IntegerSequence(),
                                 FileSequence([3, 7, 8, 19, 700])])
class TestSharedCounting:
    def test_count_matches_elements_in(self, seq):
        for lo, hi in [(1, 2), (1, 700), (9, 1300), (512, 515), (2, 2)]:
            got = seq.elements_in(lo, hi)
            assert len(got) == seq.count(hi) - seq.count(max(lo, 1))
            assert got == sorted(set(got))

    def test_congruence_counts_match_enumeration(self, seq):
        for m in (1, 2, 5, 12, 16):
            elems = seq.elements_in(1, 2000)
            assert seq.residue_counts(2000, m) == \
                [sum(1 for s in elems if s % m == c) for c in range(m)]
            assert seq.count_congruent_in(10, 1500, 3, m) == \
                sum(1 for s in elems if 10 <= s < 1500 and s % m == 3 % m)


@settings(max_examples=60)
@given(lo=st.integers(1, 3000), span=st.integers(0, 3000))
def test_square_count_diff_is_enumeration_length(lo, span):
    seq = SquareSequence()
    hi = lo + span
    assert len(seq.elements_in(lo, hi)) == seq.count(hi) - seq.count(lo)


class TestDensityRecords:
    def test_squares_record_anchor(self):
        p = find_density_record(SquareSequence(), F(1, 10))
        assert p == DensityRecordPoint(81, F(8, 81))
        # prefix minimal: every earlier nonempty prefix has a larger ratio
        # (m = 1 is the empty prefix, ratio 0, excluded by definition)
        seq = SquareSequence()
        assert all(seq.ratio(m) > p.ratio for m in range(2, 81))

    def test_blocks_record_anchor(self):
        p = find_density_record(BlockSequence(), F(1, 100))
        assert p == DensityRecordPoint(512, F(3, 512))

    def test_threshold_one_is_degenerate(self):
        p = find_density_record(SquareSequence(), 1)
        assert p == DensityRecordPoint(1, F(0))

    def test_threshold_must_be_positive(self):
        with pytest.raises(PreconditionError):
            find_density_record(SquareSequence(), 0)

    def test_integers_are_rejected(self):
        with pytest.raises(PreconditionError):
            find_density_record(IntegerSequence(), F(1, 10))

    def test_ceiling_exhausts_budget(self):
        with pytest.raises(SearchBudgetExhausted) as ei:
            find_density_record(SquareSequence(), F(1, 50), ceiling=100)
        assert ei.value.constraint == "ratio-threshold"
        assert "2401" in str(ei.value)

    def test_record_candidates_are_prefix_minimal(self):
        for seq in (SquareSequence(), BlockSequence(),
                    FileSequence([2, 4, 5, 100])):
            cands = []
            gen = seq.record_candidates()
            for _ in range(5):
                try:
                    cands.append(next(gen))
                except StopIteration:
                    break
            assert all(seq.ratio(m) == r for m, r in cands)
            ratios = [r for _, r in cands]
            assert ratios == sorted(ratios, reverse=True)

    def test_square_jump_to_half_count(self):
        seq = SquareSequence()
        m = seq.jump_to_half_count(46)
        assert m == 4356 == 66 ** 2
        assert seq.count(m // 2) >= 46
        assert seq.count(4225 // 2) < 46   # previous candidate 65**2 fails

    def test_block_jump_to_half_count(self):
        seq = BlockSequence()
        m = seq.jump_to_half_count(4)
        assert m == 1 << 16
        assert seq.count(m // 2) >= 4


class TestFileSequence:
    def test_construction_rejects_bad_input(self):
        with pytest.raises(ConfigError):
            FileSequence([])
        with pytest.raises(ConfigError):
            FileSequence([0, 3])
        with pytest.raises(ConfigError):
            FileSequence([3, 3, 5])

    def test_record_candidates_keep_running_minima(self):
        seq = FileSequence([2, 4, 5, 100])
        assert list(seq.record_candidates()) == \
            [(4, F(1, 4)), (100, F(3, 100))]
        assert list(seq.record_candidates(start_after=4)) == \
            [(100, F(3, 100))]

    def test_jump_to_ratio_past_last_element(self):
        seq = FileSequence([2, 4, 5, 100])
        assert seq.jump_to_ratio(F(1, 8)) == 100
        m = seq.jump_to_ratio(F(1, 1000))
        assert m == 4000 and seq.ratio(m) <= F(1, 1000)

    def test_jump_to_half_count_exhausts(self):
        seq = FileSequence([2, 4, 5, 100])
        assert seq.jump_to_half_count(3) == 100
        with pytest.raises(SearchBudgetExhausted) as ei:
            seq.jump_to_half_count(5)
        assert ei.value.constraint == "half-count"

    def test_integers_do_not_offer_records(self):
        with pytest.raises(PreconditionError):
            next(IntegerSequence().record_candidates())
        with pytest.raises(PreconditionError):
            IntegerSequence().jump_to_ratio(F(1, 2))


class TestDumpLoad:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "seq.txt"
        dump_sequence([1, 4, 9, 16, 25], path)
        seq = load_sequence(path)
        assert seq.elems == [1, 4, 9, 16, 25]
        assert seq.count(10) == 3
        assert seq.spec() == {"kind": "file-defined", "path": str(path)}

    def test_dump_limit(self, tmp_path):
        path = tmp_path / "seq.txt"
        dump_sequence((y * y for y in range(1, 100)), path, limit=5)
        assert load_sequence(path).elems == [1, 4, 9, 16, 25]

    def test_load_rejects_garbage(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1\n4\nnine\n")
        with pytest.raises(ConfigError):
            load_sequence(path)

    def test_load_skips_blank_lines(self, tmp_path):
        path = tmp_path / "gaps.txt"
        path.write_text("1\n\n4\n\n")
        assert load_sequence(path).elems == [1, 4]


class TestSpecGrammar:
    def test_kinds_roundtrip(self):
        for kind, cls in [("squares", SquareSequence),
                          ("synthetic-block", BlockSequence),
                          ("integers", IntegerSequence)]:
            seq = sequence_from_spec({"kind": kind})
            assert isinstance(seq, cls)
            assert seq.spec() == {"kind": kind}

    def test_passthrough(self):
        seq = SquareSequence()
        assert sequence_from_spec(seq) is seq

    def test_file_defined(self, tmp_path):
        path = tmp_path / "s.txt"
        dump_sequence([5, 6], path)
        seq = sequence_from_spec({"kind": "file-defined", "path": str(path)})
        assert seq.elems == [5, 6]

    def test_rejects(self):
        with pytest.raises(ConfigError):
            sequence_from_spec("squares")
        with pytest.raises(ConfigError):
            sequence_from_spec({})
        with pytest.raises(ConfigError):
            sequence_from_spec({"kind": "primes"})
        with pytest.raises(ConfigError):
            sequence_from_spec({"kind": "file-defined"})
