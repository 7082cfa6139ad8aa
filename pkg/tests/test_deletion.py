import pytest

from hilbmat.deletion import (
    add_punctured_line,
    all_traces,
    deletion_sequence,
    deletion_trace,
    deletion_update,
    trace_conserves,
    trace_orientation,
)
from hilbmat.errors import BadSkipList, ConditionsNotMet, HypothesesNotMet, NotApplicable
from hilbmat.grid import GridConfig
from hilbmat.oracle import LineParams, hilbert_delta

from conftest import load_config

FULL2 = GridConfig(2, 2, frozenset({(0, 0), (0, 1), (1, 0), (1, 1)}))


def test_update_full_grid():
    rep = deletion_update(FULL2, (1, 1))
    assert rep.predicted.tolist() == [[1, 1], [1, 0]]
    assert rep.agrees and rep.row_sum_drop() == 1


def test_update_without_check():
    rep = deletion_update(FULL2, (0, 0), check=False)
    assert rep.actual is None and rep.agrees is None


def test_update_needs_a_condition():
    y = load_config("ex0-1-y.config")
    with pytest.raises(ConditionsNotMet):
        deletion_update(y, (2, 2))


def test_trace_examples(ex2):
    assert trace_orientation(ex2) == "row"
    t = deletion_trace(ex2, (2, 4), 0)
    assert (t.low, t.high, t.position, t.target) == (4, 5, 5, (2, 5))
    t = deletion_trace(ex2, (3, 3), 2)
    assert (t.low, t.high, t.target) == (3, 3, (3, 3))
    t = deletion_trace(ex2, (2, 5), 0)
    assert (t.low, t.high, t.target) == (4, 5, (2, 4))
    hits = [tr.target for tr in all_traces(ex2)]
    assert hits.count((2, 4)) == 2 == -ex2.at(2, 4)


def test_trace_rejects(ex2, ex0_y):
    with pytest.raises(NotApplicable):
        deletion_trace(ex2, (0, 0), 0)
    with pytest.raises(NotApplicable):
        deletion_trace(ex0_y, (4, 3), 0)


@pytest.mark.parametrize("orientation", ["row", "column"])
def test_trace_conservation(ex2, ex1, orientation):
    assert trace_conserves(ex2, orientation)
    assert trace_conserves(ex1, orientation)


def test_deletion_sequence_lands_on_targets(ex2):
    steps, final = deletion_sequence(ex2)
    assert len(steps) == 7 and all(s.ok for s in steps)
    assert final == ex2


@pytest.mark.slow
def test_deletion_sequence_larger_example(ex1):
    steps, final = deletion_sequence(ex1)
    assert all(s.ok for s in steps) and final == ex1


def test_punctured_line_full():
    rep = add_punctured_line(FULL2, 3, [])
    assert rep.agrees
    rows = rep.predicted.tolist()
    assert rows[0] == [1, 1, 1, 1]
    old = hilbert_delta(FULL2)
    assert all(rep.predicted.at(i, j) == old.at(i - 1, j) for i in range(1, 3) for j in range(4))


def test_punctured_line_one_skip():
    rep = add_punctured_line(FULL2, 1, [0])
    assert rep.q == (2,) and rep.decrements == ((2, 1),)
    assert rep.agrees
    assert rep.predicted.tolist() == [[1, 1], [1, 1], [1, 0]]


def test_punctured_line_with_params():
    rep = add_punctured_line(FULL2, 2, [1], params=LineParams((5, -3), (2, 9)))
    assert rep.agrees


def test_punctured_line_errors():
    with pytest.raises(BadSkipList):
        add_punctured_line(FULL2, 1, [5])
    with pytest.raises(BadSkipList):
        add_punctured_line(FULL2, 1, [0, 0])
    with pytest.raises(HypothesesNotMet):
        add_punctured_line(FULL2, 0, [])
    # two skipped columns need a vanishing tail in the column the second one lands on
    y = load_config("ex0-1-y.config")
    with pytest.raises(HypothesesNotMet):
        add_punctured_line(y, 4, [0, 1], check=False)
