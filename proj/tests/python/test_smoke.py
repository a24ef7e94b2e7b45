# Copyright 2026 The gridfair Authors.
# SPDX-License-Identifier: Apache-2.0

import pytest

import gridfair


def test_attention_geometric():
    assert gridfair.attention(4) == pytest.approx([1, 0.5, 0.25, 0.125])


def test_attention_row_skip_grid():
    w = gridfair.attention(4, geometry="grid:2", adjustment="row-skip", gamma=0.5)
    assert w == pytest.approx([1, 0.5, 0.625, 0.3125])


def test_awrf_and_eel():
    assert gridfair.awrf([1, 0.5], [0.5, 0.5]) == pytest.approx(1 / 3)
    assert gridfair.awrf([1, 0.5], [0.5, 0.5], delta="signed") == pytest.approx(1 / 6)
    assert gridfair.eel([1, 0.5], [0.75, 0.75]) == pytest.approx(0.125)


def test_rerank_is_permutation():
    items = ["a", "b", "c", "d"]
    alignment = [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 1, 0]]
    out = gridfair.rerank(items, alignment, ["g0", "g1", "unknown"], [0.5, 0.5, 0])
    assert sorted(out) == items
    assert out == ["a", "c", "d", "b"]


def test_kendall_tau():
    assert gridfair.kendall_tau_b([1, 2, 3, 4], [1, 2, 4, 3]) == pytest.approx(2 / 3)
    assert gridfair.kendall_tau_b([1, 2], [3, 3]) is None


def test_errors_are_translated():
    with pytest.raises(gridfair.GridfairError):
        gridfair.attention(3, alpha=2.0)
    with pytest.raises(gridfair.GridfairError):
        gridfair.awrf([0, 0], [0.5, 0.5])


def test_cli_in_process():
    code, out, err = gridfair.run_cli(["attention", "--length", "2"])
    assert code == 0
    assert out.splitlines()[1:] == ["0\t0\t0\t1", "1\t1\t0\t0.5"]
    code, _, _ = gridfair.run_cli(["attention", "--alpha", "7"])
    assert code == 1
