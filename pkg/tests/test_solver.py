import pytest
from sympy import primepi

from powerfree.bounds import main_term, thm4_upper, threshold
from powerfree.construction import build, verify_certificate
from powerfree.errors import CapacityError, InvalidArgument, ResourceLimit
from powerfree.solver import SolveFailure, desk_limit, solve, solve_range

from .oracles import brute_rho, has_power_product


def _check_witness(res, d):
    w = res.witness
    assert len(w) == res.value == len(set(w))
    assert w == sorted(w) and 1 not in w and all(1 <= x <= res.N for x in w)
    # integer arithmetic, independent of the exponent-vector reduction
    assert not has_power_product(w, d)


@pytest.mark.parametrize("d, N, value", [(2, 10, 4), (3, 14, 9), (3, 15, 10), (3, 40, 20)])
def test_examples(table, d, N, value):
    res = solve(d, N, table)
    assert res.value == value
    assert res.value <= res.upper_bound_used
    assert res.value < N


@pytest.mark.parametrize("d, N", [(2, 10), (2, 20), (3, 14), (3, 20), (4, 18), (5, 16), (6, 15)])
def test_witnesses_by_integer_arithmetic(table, d, N):
    _check_witness(solve(d, N, table), d)


def test_range_d3_14_16(table):
    assert [r.value for r in solve_range(3, 14, 16, table)] == [9, 10, 10]


def test_range_d2_equals_pi(table):
    assert [r.value for r in solve_range(2, 2, 30, table)] == [int(primepi(N)) for N in range(2, 31)]


@pytest.mark.parametrize("d", [3, 4, 5])
def test_monotone_in_N(table, d):
    vals = [r.value for r in solve_range(d, 2, 30, table)]
    assert vals == sorted(vals)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("N", range(1, 17))
def test_matches_brute_force(table, d, N):
    assert solve(d, N, table).value == brute_rho(d, N)


@pytest.mark.parametrize("d, N", [(2, 12), (2, 40), (2, 60), (3, 40), (3, 50), (3, 60)])
def test_construction_regime_closes_immediately(table, d, N):
    assert N >= threshold(d)
    res = solve(d, N, table)
    assert res.seeded
    assert res.value == main_term(d, N, table) == thm4_upper(d, N, table)
    assert res.nodes_explored <= 1000


@pytest.mark.parametrize("d, N", [(2, 13), (2, 30), (3, 41)])
def test_at_least_any_verified_construction(table, d, N):
    cert = build(d, N, table)
    assert verify_certificate(cert, table)
    assert solve(d, N, table, seed=False).value >= len(cert.full_set)


def test_budget_exhaustion_brackets(table):
    with pytest.raises(ResourceLimit) as info:
        solve(3, 30, table, budget=3)
    err = info.value
    assert err.lower <= solve(3, 30, table).value <= err.upper
    assert len(err.incumbent) == err.lower
    assert not has_power_product(err.incumbent, 3)


def test_guard(table):
    assert desk_limit(2) == desk_limit(3) == 60
    assert desk_limit(7) == 40
    with pytest.raises(CapacityError):
        solve(4, 41, table)
    assert solve(4, 41, table, force=True).value == solve(4, 41, table, guard={4: 41}).value


def test_argument_validation(table):
    with pytest.raises(InvalidArgument):
        solve(1, 10, table)
    with pytest.raises(InvalidArgument):
        solve(2, 0, table)
    with pytest.raises(InvalidArgument):
        solve_range(2, 5, 4, table)


def test_range_records_failures_and_continues(table):
    out = solve_range(3, 29, 31, table, budget=3)
    assert len(out) == 3
    fails = [r for r in out if isinstance(r, SolveFailure)]
    assert fails
    lo, hi = fails[0].bracket
    assert lo <= hi


@pytest.mark.parametrize("d, N", [(3, 14), (3, 30), (4, 30), (5, 40), (2, 25)])
def test_backends_explore_identical_trees(table, d, N):
    a = solve(d, N, table, jit=True)
    b = solve(d, N, table, jit=False)
    assert (a.value, a.nodes_explored, a.witness) == (b.value, b.nodes_explored, b.witness)


def test_threads_do_not_change_results(table):
    one = solve_range(4, 2, 40, table, threads=1)
    many = solve_range(4, 2, 40, table, threads=4)
    assert [r.as_dict() | {"elapsed": 0} for r in one] == [r.as_dict() | {"elapsed": 0} for r in many]
