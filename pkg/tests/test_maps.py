import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onecopy.core import (
    Permutation, avoids, count_occurrences, exactly_one, monotone, parse, right_to_left_minima,
    skew_sum, standardize,
)
from onecopy.enumeration import catalan, enumerate_avoiders, enumerate_exactly_one, noonan
from onecopy.maps import (
    F_general, F_general_inverse, F_k, PatternPrecondition, blue_red_partition_general,
    blue_red_partition_monotone, build_h, decompose_unique_321, f, g, g_inverse,
    predict_rl_minima, trace_F,
)

P = parse
P321, P231 = P("3 2 1"), P("2 3 1")
EXAMPLE = P("4 8 1 5 9 3 2 7 6")


@pytest.mark.parametrize("src, img", [
    ("3 1 4 6 2 7 5", "7 1 4 3 2 6 5"),
    ("2 4 1 3", "4 2 1 3"),
])
def test_g_worked_examples(src, img):
    assert g(P(src)) == P(img)
    assert g_inverse(P(img)) == P(src)


def test_g_on_shifted_word():
    # the word 6 8 5 9 7 over {5..9} maps to 9 6 5 8 7; compare after renumbering
    assert g(standardize((6, 8, 5, 9, 7))) == standardize((9, 6, 5, 8, 7))


def test_g_inverse_identity():
    assert g_inverse(monotone(6, False)) == monotone(6, False)


def test_g_preconditions():
    with pytest.raises(PatternPrecondition):
        g(P("3 2 1"))
    with pytest.raises(PatternPrecondition):
        g_inverse(P("2 3 1"))


@pytest.mark.parametrize("n", range(0, 10))
def test_g_is_bijection_onto_231_avoiders(n):
    images = set()
    for p in enumerate_avoiders(n, P321):
        img = g(p)
        assert avoids(img, P231)
        assert right_to_left_minima(img) == right_to_left_minima(p)
        assert g_inverse(img) == p
        images.add(img)
    assert len(images) == catalan(n)


def test_decomposition_example():
    d = decompose_unique_321(P("2 5 1 4 7 3 8 6"))
    assert (d.c, d.b, d.a) == (5, 4, 3)
    assert (d.pi1, d.pi2, d.pi3, d.pi4) == ((2,), (1,), (7,), (8, 6))
    assert d.reassemble() == (2, 5, 1, 4, 7, 3, 8, 6)


def test_decomposition_of_bare_copy():
    d = decompose_unique_321(P321)
    assert (d.c, d.b, d.a) == (3, 2, 1)
    assert d.pi1 == d.pi2 == d.pi3 == d.pi4 == ()


def test_decomposition_of_blue_subsequence():
    d = decompose_unique_321((4, 8, 5, 9, 3, 7))
    assert d.pi1 == (4,) and d.pi2 == ()
    assert (d.c, d.b, d.a) == (8, 5, 3)


@pytest.mark.parametrize("text", ["1 2 3", "4 3 2 1", "5 3 4 1 2"])
def test_decomposition_rejects_wrong_copy_count(text):
    with pytest.raises(PatternPrecondition):
        decompose_unique_321(P(text))


@pytest.mark.parametrize("n", range(3, 8))
def test_decomposition_invariants(n):
    for p in enumerate_exactly_one(n, P321):
        d = decompose_unique_321(p)
        assert d.reassemble() == tuple(p)
        assert d.c > d.b > d.a
        assert all(x < d.a for x in d.pi2)
        assert all(x > d.c for x in d.pi3)
        assert avoids(d.sigma1, P321) and sorted(d.sigma1) == list(range(1, d.b + 1))
        assert avoids(d.sigma2, P321) and sorted(d.sigma2) == list(range(d.b, n + 1))


def test_f_examples():
    assert f(P("2 5 1 4 7 3 8 6")) == P("4 2 1 3 10 9 6 5 8 7")
    assert f(P321) == P("2 1 5 4 3")


def test_f_precondition():
    with pytest.raises(PatternPrecondition):
        f(P("1 2 3"))


def test_predicted_minima_example():
    d = decompose_unique_321(P("2 5 1 4 7 3 8 6"))
    assert predict_rl_minima(d) == [(3, 1), (4, 3), (8, 5), (10, 7)]
    assert predict_rl_minima(d) == right_to_left_minima(f(d.host))


@pytest.mark.parametrize("n", range(3, 10))
def test_f_injective_into_231_avoiders_with_predicted_minima(n):
    images = set()
    for p in enumerate_exactly_one(n, P321):
        img = f(p)
        assert len(img) == n + 2 and avoids(img, P231)
        assert predict_rl_minima(decompose_unique_321(p)) == right_to_left_minima(img)
        images.add(img)
    assert len(images) == noonan(n)


def test_monotone_partition_example():
    part = blue_red_partition_monotone(EXAMPLE, 4)
    assert set(part.blue_values()) == {4, 8, 5, 9, 3, 7}
    assert set(part.red_values()) == {1, 2, 6}
    assert part.northwest_violations() == []


def test_monotone_partition_bare_copy():
    part = blue_red_partition_monotone(P("4 3 2 1"), 4)
    assert part.blue_values() == (4, 3, 2) and part.red_values() == (1,)


def test_partition_precondition():
    with pytest.raises(PatternPrecondition):
        blue_red_partition_monotone(P("1 2 3 4"), 4)
    with pytest.raises(PatternPrecondition):
        blue_red_partition_general(P("5 4 3 2 1"), P("1"))


def test_build_h_examples():
    d = decompose_unique_321((4, 8, 5, 9, 3, 7))
    assert build_h(d, 9) == (4, 5, 3, 11, 9, 10, 6, 8)
    h = build_h(decompose_unique_321(P321), 3)
    assert h == (2, 1, 5, 4, 3)
    assert len(h) == 3 + 2


def test_F4_example_and_intermediate():
    t = trace_F(EXAMPLE, P("1"))
    assert tuple(t.intermediate) == (4, 5, 1, 3, 11, 9, 10, 6, 2, 8, 7)
    assert t.image == P("5 4 1 3 11 10 9 6 2 8 7")
    assert F_k(EXAMPLE, 4) == t.image
    assert avoids(t.image, P("3 4 2 1"))
    assert F_general_inverse(t.image, P("1")) == EXAMPLE


def test_F3_is_f():
    for p in enumerate_exactly_one(6, P321):
        assert F_k(p, 3) == f(p)


def test_empty_rho_delegates_to_f():
    for p in enumerate_exactly_one(7, P321):
        assert F_general(p, Permutation()) == f(p)


def test_partitions_agree_for_rho_one():
    rho = P("1")
    for p in enumerate_exactly_one(7, P("4 3 2 1")):
        mono = blue_red_partition_monotone(p, 4)
        gen = blue_red_partition_general(p, rho)
        assert mono.blue == gen.blue and mono.red == gen.red


def test_F4_matches_general_with_rho_one():
    rho = P("1")
    for p in enumerate_exactly_one(8, P("4 3 2 1")):
        assert F_k(p, 4) == F_general(p, rho)


@pytest.mark.parametrize("k, n", [(4, 4), (4, 5), (4, 6), (4, 7), (5, 5), (5, 6), (5, 7)])
def test_Fk_injective_northwest_and_recoverable(k, n):
    rho = monotone(k - 3)
    target = P(" ".join(map(str, (k - 1, k, *range(k - 2, 0, -1)))))
    images = set()
    for p in enumerate_exactly_one(n, monotone(k)):
        assert blue_red_partition_monotone(p, k).northwest_violations() == []
        t = trace_F(p, rho)
        assert t.image == F_k(p, k)
        assert avoids(t.image, target)
        assert t.image_partition().northwest_violations() == []
        assert F_general_inverse(t.image, rho) == p
        images.add(t.image)
    assert len(images) == sum(1 for _ in enumerate_exactly_one(n, monotone(k)))


@pytest.mark.parametrize("rho, n", [("1 2", 5), ("1 2", 6), ("1 2", 7), ("2 1", 5), ("2 1", 6),
                                    ("2 1", 7)])
def test_general_injection_on_length_five_patterns(rho, n):
    rho = P(rho)
    source, target = skew_sum(P321, rho), skew_sum(P231, rho)
    images = set()
    count = 0
    for p in enumerate_exactly_one(n, source):
        count += 1
        part = blue_red_partition_general(p, rho)
        assert count_occurrences(part.blue_values(), P321) == 1
        img = F_general(p, rho)
        assert avoids(img, target)
        assert trace_F(p, rho).image_partition().northwest_violations() == []
        assert F_general_inverse(img, rho) == p
        images.add(img)
    assert len(images) == count


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(), (1,), (1, 2), (2, 1)]), st.integers(0, 4), st.data())
def test_general_injection_random_hosts(rho, extra, data):
    # a random avoider with the pattern appended as a direct summand has one copy
    rho = Permutation(rho)
    source = skew_sum(P321, rho)
    base = data.draw(st.permutations(list(range(1, extra + 1))))
    if not avoids(base, source):
        return
    p = Permutation(list(base) + [v + extra for v in source])
    assert exactly_one(p, source)
    img = F_general(p, rho)
    assert len(img) == len(p) + 2
    assert avoids(img, skew_sum(P231, rho))
    assert F_general_inverse(img, rho) == p


def test_F_k_rejects_small_k():
    with pytest.raises(ValueError):
        F_k(P321, 2)


def test_decomposition_blocks_cover_host():
    d = decompose_unique_321(P("2 5 1 4 7 3 8 6"))
    covered = sorted(itertools.chain.from_iterable(d.block_positions().values()))
    assert len(covered) + 3 == 8
