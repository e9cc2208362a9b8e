import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ebos.errors import ValidationError
from ebos.flops import (
    TABLE1_HEADER,
    flop_report,
    flops_direct,
    flops_n1,
    flops_n2,
    flops_n2_summation,
    flops_n3,
    table1_csv,
    table1_report,
)
from golden import TABLE1_PRINTED


def test_n1_two_blocks_square():
    n = 10_000
    assert flops_n1(n, n, 2) / n**3 == pytest.approx(5.625, abs=1e-3)


def test_n1_single_block_is_zero():
    assert flops_n1(100, 40, 1) == 0


def test_n1_three_blocks_counts_both_stages():
    # two stages of 21/27 + 4/9 + 2/3 + 1 each; the tabulated 2.89 is one stage
    n = 30_000
    assert flops_n1(n, n, 3) / n**3 == pytest.approx(2 * (21 / 27 + 4 / 9 + 2 / 3 + 1), abs=1e-3)
    (_, _, rep), = table1_report([1.0], [3])
    assert rep.n1 == pytest.approx(2.89, abs=0.01)


@pytest.mark.parametrize("h, q, want", [(10, 2, 0), (5, 5, 100), (3, 3, 8), (7, 1, 0)])
def test_n2_examples(h, q, want):
    assert flops_n2(h, q) == want
    assert flops_n2_summation(h, q) == want


def test_n2_ten_blocks_literal():
    assert flops_n2_summation(10, 10) == sum(2 * r * (10 - r) * (11 - r) for r in range(2, 10))


def test_n2_closed_form_equals_summation():
    for q in range(1, 51):
        for h in range(q, 10 * q + 1, q):
            assert flops_n2(h, q) == flops_n2_summation(h, q), (h, q)


@pytest.mark.parametrize("fn", [lambda q: flops_n1(10, 10, q), lambda q: flops_n2(10, q)])
@pytest.mark.parametrize("q", [0, -1, 2.5])
def test_bad_block_count(fn, q):
    with pytest.raises(ValidationError):
        fn(q)


def test_n3_examples():
    n = 64
    assert flops_n3(n, n, n) == 4 * n**3
    assert flops_n3(n, n, 0) == 0
    assert flops_n3(n, n, n // 2) == 1.5 * n**3


def test_direct_examples():
    n = 64
    assert flops_direct(n, n, n) == 27 * n**3
    assert flops_direct(n, n, 48) == pytest.approx(12.609375 * n**3)
    assert flops_direct(n, n, 0) == 0


def test_report_totals():
    rep = flop_report(300, 200, 120, 4)
    assert rep.n_total == rep.n1 + rep.n2 + rep.n3
    assert rep.ratio == rep.n_total / rep.f_direct
    assert rep.as_dict()["ratio"] == rep.ratio
    assert min(rep.n1, rep.n2, rep.n3, rep.f_direct) >= 0


def test_counts_survive_large_sizes():
    rep = flop_report(10**6, 10**6, 10**6, 4)
    assert rep.f_direct == pytest.approx(27e18)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 500), st.integers(1, 500), st.integers(1, 20), st.integers(1, 10))
def test_counts_monotone(m, n, k, q):
    h = k * q
    base = flop_report(m, n, h, q)
    for bigger in (flop_report(m + 1, n, h, q), flop_report(m, n + 1, h, q), flop_report(m, n, h + q, q)):
        assert bigger.n1 >= base.n1 and bigger.n2 >= base.n2
        assert bigger.n3 >= base.n3 and bigger.f_direct >= base.f_direct


def test_table1_examples():
    rows = {(eps, q): rep for eps, q, rep in table1_report([1.0, 0.5], [1, 2, 3])}
    r = rows[1.0, 2]
    assert (r.n1, r.n3, r.f_direct) == (pytest.approx(5.625), 4, 27)
    assert rows[0.5, 3].f_direct == pytest.approx(4.625)
    r1 = rows[1.0, 1]
    assert r1.n1 == 0 and r1.n2 == 0 and r1.n_total == r1.n3


@pytest.mark.parametrize("row", TABLE1_PRINTED, ids=lambda r: f"eps{r[0]}-q{r[1]}")
def test_table1_printed_columns(row):
    eps, q, n1, _, n3, _, f, _ = row
    (_, _, rep), = table1_report([eps], [q])
    assert rep.n1 == pytest.approx(n1, abs=0.01)
    assert rep.n3 == pytest.approx(n3, abs=0.01)
    assert rep.f_direct == pytest.approx(f, abs=0.01)


def test_table1_n2_column_is_not_the_formula():
    # the printed N2 values disagree with the summation they are said to come from
    (_, _, rep), = table1_report([1.0], [2])
    assert rep.n2 == 0 and TABLE1_PRINTED[0][3] == 1.67
    (_, _, rep), = table1_report([1.0], [3])
    assert rep.n2 == pytest.approx(8 / 27) and TABLE1_PRINTED[1][3] == 2.80


def test_table1_validation():
    with pytest.raises(ValidationError):
        table1_report([0.0], [2])
    with pytest.raises(ValidationError):
        table1_report([1.5], [2])
    with pytest.raises(ValidationError):
        table1_report([1.0], [0])


def test_table1_csv_layout():
    text = table1_csv(table1_report())
    lines = text.splitlines()
    assert lines[0].split(",") == TABLE1_HEADER
    assert len(lines) == 17
    assert lines[1].startswith("1.0,2,5.6250,")
