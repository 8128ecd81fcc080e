import json
from math import factorial
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polarsym.channel import (
    ChannelError,
    DRatio,
    apply_mask,
    channel_from_dict,
    channel_to_dict,
    distinct_d_check,
    dump_channel,
    is_degenerate,
    is_noiseless,
    load_channel,
    make_bec,
    make_bsc,
    make_channel,
    multiset_channel,
    parse_channel,
    validate,
)
from polarsym.counting import count_self, count_symm


def test_bsc_fields(bsc):
    assert bsc.w0 == (Fraction(2, 3), Fraction(1, 3))
    assert bsc.w1 == (Fraction(1, 3), Fraction(2, 3))
    assert bsc.is_bsc_like
    assert str(bsc) == "bsc:1/3"


def test_partition_bec(bec):
    part = bec.partition()
    assert part.self_set == (1,)
    assert part.symm_set == (0, 2)
    assert (part.s1, part.s2) == (1, 2)


def test_partition_pairs_are_mirrored():
    # pairs (0,3) and (1,2): heads sorted, tails mirrored
    ch = make_channel("abcd", ["1/8", "1/16", "7/16", "3/8"], ["3/8", "7/16", "1/16", "1/8"], (3, 2, 1, 0))
    part = ch.partition()
    s2 = part.s2
    for t in range(s2):
        assert ch.conj[part.symm_set[t]] == part.symm_set[s2 - 1 - t]


@pytest.mark.parametrize(
    "w0,w1,conj,fragment",
    [
        (["1/2", "1/2"], ["1/2", "1/2"], (1, 1), "involution"),
        (["1/2", "1/4"], ["1/4", "1/2"], (1, 0), "sum to 1"),
        (["2/3", "1/3"], ["2/3", "1/3"], (1, 0), "symmetry"),
        (["1/2", "1/2"], ["1/2", "1/2"], (0, 5), "out of range"),
        (["3/2", "-1/2"], ["-1/2", "3/2"], (1, 0), "negative"),
    ],
)
def test_validate_reports_violations(w0, w1, conj, fragment):
    ch = make_channel("ab", w0, w1, conj, check=False)
    assert any(fragment in v for v in validate(ch))
    with pytest.raises(ChannelError):
        make_channel("ab", w0, w1, conj)


def test_unit_ratio_pair_fails_distinct_d():
    ch = make_channel("abc", ["1/3"] * 3, ["1/3"] * 3, (1, 0, 2), check=False)
    assert validate(ch) == []
    assert not distinct_d_check(ch)


def test_float_input_converted_exactly():
    assert make_bsc(0.25).w0 == (Fraction(3, 4), Fraction(1, 4))


def test_bsc_rejects_out_of_range():
    with pytest.raises(ValueError):
        make_bsc(Fraction(3, 2))


def test_dratio_projective():
    assert DRatio(Fraction(1), Fraction(2)) == DRatio(Fraction(2), Fraction(4))
    assert DRatio(Fraction(1), Fraction(0)) == DRatio(Fraction(5), Fraction(0))
    assert DRatio(Fraction(1), Fraction(2)).inverse() == DRatio(Fraction(2), Fraction(1))
    with pytest.raises(ValueError):
        DRatio(Fraction(0), Fraction(0))


@pytest.mark.parametrize(
    "ch,expected",
    [
        (make_bsc(Fraction(1, 3)), True),
        (make_bsc(Fraction(1, 2)), False),
        (make_bec(Fraction(1, 2)), True),
        (make_bec(Fraction(0)), False),
        (make_bec(Fraction(1)), False),
    ],
)
def test_distinct_d(ch, expected):
    assert distinct_d_check(ch) is expected


def test_distinct_d_reciprocal_pairs_collide():
    # pair ratios 3 and 1/3 describe the same pair class
    ch = make_channel("abcd", ["1/8", "1/8", "3/8", "3/8"], ["3/8", "3/8", "1/8", "1/8"], (3, 2, 1, 0))
    assert not distinct_d_check(ch)


def test_noiseless_is_degenerate():
    ch = make_bsc(0)
    assert is_noiseless(ch) and is_degenerate(ch)
    assert not is_degenerate(make_bsc(Fraction(1, 5)))


def test_apply_mask(bec):
    assert apply_mask(bec, (1, 0, 1), (0, 2, 1)) == (2, 2, 1)
    with pytest.raises(ValueError):
        apply_mask(bec, (1,), (0, 1))


def test_multiset_channel_structure(bec):
    for m in (1, 2, 3):
        mc = multiset_channel(bec, m)
        assert validate(mc) == []
        assert mc.size == (m + 2) * (m + 1) // 2
        assert not mc.normalized
        # each occurrence vector stands for multinomial(m; counts) sequences
        total = Fraction(0)
        for label, w in zip(mc.symbols, mc.w0):
            counts = [int(c) for c in label.strip("()").replace("|", ",").split(",") if c]
            ways = factorial(m)
            for c in counts:
                ways //= factorial(c)
            total += ways * w
        assert total == 1


def test_multiset_channel_weights_are_products(bsc):
    mc = multiset_channel(bsc, 2)
    got = dict(zip(mc.symbols, mc.w0))
    assert got["(|2,0)"] == Fraction(4, 9)
    assert got["(|1,1)"] == Fraction(2, 9)
    assert got["(|0,2)"] == Fraction(1, 9)


def test_dict_roundtrip(bec, tmp_path):
    assert channel_from_dict(channel_to_dict(bec)).w0 == bec.w0
    path = tmp_path / "ch.json"
    dump_channel(bec, path)
    loaded = load_channel(path)
    assert (loaded.symbols, loaded.w0, loaded.w1, loaded.conj) == (bec.symbols, bec.w0, bec.w1, bec.conj)
    assert parse_channel(str(path)).w0 == bec.w0


def test_malformed_dict():
    with pytest.raises(ChannelError):
        channel_from_dict({"symbols": ["a"]})
    bad = {"symbols": ["a", "b"], "w0": ["1/2", "1/2"], "w1": ["1/3", "2/3"], "conj": [1, 0]}
    with pytest.raises(ChannelError) as info:
        channel_from_dict(bad)
    assert info.value.violations


def test_parse_channel_specs():
    assert parse_channel("bsc:1/4").w0[1] == Fraction(1, 4)
    assert parse_channel("bec:0.5").symbols == ("0", "e", "1")


@given(st.fractions(min_value=0, max_value=1))
def test_bsc_always_valid(p):
    ch = make_bsc(p)
    assert validate(ch) == []
    assert sum(ch.w0) == 1


def test_json_file_with_floats(tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"symbols": ["0", "1"], "w0": [0.75, 0.25], "w1": [0.25, 0.75], "conj": [1, 0]}))
    assert load_channel(path).w0 == (Fraction(3, 4), Fraction(1, 4))


@given(st.data())
def test_mask_group_action(bec, data):
    n = data.draw(st.integers(1, 8))
    bits = st.lists(st.integers(0, 1), min_size=n, max_size=n)
    m1, m2 = data.draw(bits), data.draw(bits)
    y = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    both = [a ^ b for a, b in zip(m1, m2)]
    assert apply_mask(bec, both, y) == apply_mask(bec, m1, apply_mask(bec, m2, y))


@pytest.mark.parametrize("m", range(1, 9))
def test_multiset_partition_sizes(bsc, bec, m):
    for ch in (bsc, bec):
        part = ch.partition()
        mp = multiset_channel(ch, m).partition()
        assert mp.s1 == count_self(part.s1, part.s2, m)
        assert mp.s2 == count_symm(part.s1, part.s2, m)
