import math

import pytest

from powerfree.davenport import (
    GroupSpec,
    davenport_exact,
    davenport_search,
    davenport_upper_bound,
    davenport_upper_bound_real,
    olson_davenport,
    parse_group_spec,
)
from powerfree.errors import CapacityError, InvalidArgument, NotApplicable, ResourceLimit

P_GROUPS = ["2", "4", "8", "2^2", "2^3", "2,4", "3", "9", "3^2", "5", "7", "25", "2^4", "4^2", "2,8", "3^3", "27"]


def _sum_free_by_brute_force(seq, comps):
    """No non-empty subsequence of coordinate tuples sums to 0."""
    n = len(seq)
    for mask in range(1, 1 << n):
        tot = [0] * len(comps)
        for i in range(n):
            if mask >> i & 1:
                tot = [(a + b) % m for a, b, m in zip(tot, seq[i], comps)]
        if not any(tot):
            return False
    return True


@pytest.mark.parametrize(
    "text, comps",
    [("3^2", (3, 3)), ("2,4", (2, 4)), ("5^3", (5, 5, 5)), ("2^2, 4", (2, 2, 4)), ("7", (7,))],
)
def test_parse(text, comps):
    assert parse_group_spec(text).components == comps


@pytest.mark.parametrize("text", ["", "3^", "a", "3^0", "1", "2;3"])
def test_parse_rejects(text):
    with pytest.raises(InvalidArgument):
        parse_group_spec(text)


def test_group_spec_fields():
    g = GroupSpec((2, 4, 6))
    assert (g.order, g.exponent, g.rank) == (48, 12, 3)
    with pytest.raises(InvalidArgument):
        GroupSpec(())


@pytest.mark.parametrize("text, value", [("2", 2), ("3^2", 5), ("3^6", 13), ("2,4", 5), ("4^6", 19)])
def test_olson(text, value):
    assert olson_davenport(parse_group_spec(text)) == value


@pytest.mark.parametrize("text", ["6", "2,3", "6^2", "3,9,4"])
def test_olson_needs_p_group(text):
    with pytest.raises(NotApplicable):
        olson_davenport(parse_group_spec(text))


@pytest.mark.parametrize(
    "text, value, real",
    [("5", 5, 5.0), ("6^2", 16, 6 * (1 + math.log(6))), ("3^2", 6, 3 * (1 + math.log(3)))],
)
def test_star_bound(text, value, real):
    g = parse_group_spec(text)
    assert davenport_upper_bound(g) == value
    assert davenport_upper_bound_real(g) == pytest.approx(real)


@pytest.mark.parametrize("text, value", [("2^2", 3), ("4", 4), ("3^2", 5)])
def test_exact_examples(text, value):
    assert davenport_exact(parse_group_spec(text)) == value


@pytest.mark.parametrize("text", P_GROUPS)
def test_exact_equals_olson_on_p_groups(text):
    g = parse_group_spec(text)
    res = davenport_search(g)
    assert res.value == olson_davenport(g) <= davenport_upper_bound(g)
    assert len(res.witness) == res.value - 1
    if len(res.witness) <= 14:
        assert _sum_free_by_brute_force(res.witness, g.components)


# D(Z_n) = n is classical (external knowledge, not a result checked elsewhere here)
@pytest.mark.parametrize("n", range(2, 25))
def test_cyclic_groups(n):
    assert davenport_exact(GroupSpec((n,))) == n


@pytest.mark.parametrize("text", ["6", "2,3", "2,6", "10", "3,6", "2,2,6", "6^2", "12"])
def test_exact_below_star_bound_for_non_p_groups(text):
    g = parse_group_spec(text)
    assert davenport_exact(g) <= davenport_upper_bound(g)


@pytest.mark.parametrize(
    "base, extra",
    [("2", 2), ("2", 4), ("2^2", 2), ("3", 3), ("2,4", 2), ("4", 2), ("3", 2), ("5", 5), ("6", 2)],
)
def test_monotone_under_direct_sum(base, extra):
    g = parse_group_spec(base)
    h = GroupSpec(g.components + (extra,))
    assert davenport_exact(h) >= davenport_exact(g)


def test_budget_exhaustion_reports_lower_bound():
    with pytest.raises(ResourceLimit) as info:
        davenport_search(parse_group_spec("3^3"), budget=50)
    assert info.value.lower >= 2


def test_capacity_guard():
    with pytest.raises(CapacityError):
        davenport_exact(parse_group_spec("2^13"))
    with pytest.raises(CapacityError):
        davenport_exact(parse_group_spec("64"))


@pytest.mark.parametrize("text", ["2^3", "3^2", "2,4", "6", "4^2"])
def test_backends_agree(text):
    g = parse_group_spec(text)
    a = davenport_search(g, jit=True)
    b = davenport_search(g, jit=False)
    assert (a.value, a.nodes, a.witness) == (b.value, b.nodes, b.witness)
