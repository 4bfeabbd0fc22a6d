import pytest

from jacquet import CuspidalLine, Multisegment, Segment
from jacquet.engine import split_segment
from jacquet.verify import (
    SweepConfig,
    Verdict,
    Violation,
    check_consistency,
    check_mult_free,
    iter_multisegments,
    sweep_consistency,
    sweep_theorem1,
)

from conftest import ms


def test_check_mult_free_examples():
    assert check_mult_free(ms((0, 1), (3, 4)), 2) == (True, None)
    ok, witness = check_mult_free(ms((0, 1), (0, 1)), 1)
    assert not ok
    assert witness.detail == "multiplicity 2"
    assert witness.term == (ms((0, 0)), ms((0, 1), (1, 1)))
    assert sorted(witness.witnesses) == [(0, 1), (1, 0)]


@pytest.mark.parametrize("line", [CuspidalLine("rho", 1), CuspidalLine("sigma", 3)])
def test_single_segments_are_multiplicity_free(line):
    m = Multisegment([Segment(line, -2, 3)])
    assert all(check_mult_free(m, l)[0] for l in range(1, m.total_size))


def test_sweep_mult_free_small():
    v = sweep_theorem1(SweepConfig(max_b=3, max_r=2))
    assert v.checked > 0
    assert v.violations == []


def test_sweep_without_filter_finds_repeated_segment():
    v = sweep_theorem1(SweepConfig(max_b=2, max_r=2, m_irr_only=False))
    hits = [x for x in v.violations if x.multisegment == ms((0, 1), (0, 1)) and x.levi == 1]
    assert len(hits) == 1
    assert hits[0].detail == "multiplicity 2"
    assert len(hits[0].witnesses) == 2


def test_empty_domain():
    v = sweep_theorem1(SweepConfig(max_r=0))
    assert v.checked == 0 and v.violations == []
    assert sweep_theorem1(SweepConfig(lines=0)).checked == 0


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(max_b=-1)
    with pytest.raises(ValueError):
        SweepConfig(dims=(0,))


def test_exhaustive_domain_is_canonical():
    seen = list(iter_multisegments(SweepConfig(max_b=2, max_r=2, m_irr_only=False)))
    assert len(seen) == len(set(seen)) == 6 + 21
    assert all(list(m) == list(m.canonical()) for m in seen)


def test_mixed_line_sampled_sweep():
    config = SweepConfig(max_b=4, max_r=3, dims=(1, 2), lines=2, seed=7, samples=10_000)
    v = sweep_theorem1(config)
    assert v.violations == []
    assert v.checked >= 10_000


def test_sampled_sweep_is_deterministic():
    config = SweepConfig(max_b=4, max_r=3, dims=(1, 2), lines=2, seed=3, samples=300, m_irr_only=False)
    assert sweep_theorem1(config) == sweep_theorem1(config)
    assert list(iter_multisegments(config)) == list(iter_multisegments(config))


def test_consistency_sweep_clean():
    v = sweep_consistency(SweepConfig(max_b=2, max_r=3, dims=(1, 2), lines=2, m_irr_only=False))
    assert v.checked > 0
    assert v.violations == []


def off_by_one(d, l):
    pieces = split_segment(d, l)
    if pieces is None or pieces[0] is None or d.length < 2:
        return pieces
    left, _ = pieces
    # Moves the cut one step right when possible: the pieces still cover d, but sizes break.
    p = min(left.b + 2, d.b + 1)
    return Segment(d.line, d.a, p - 1), (Segment(d.line, p, d.b) if p <= d.b else None)


def test_consistency_sweep_catches_corrupted_rule():
    v = sweep_consistency(SweepConfig(max_b=2, max_r=2, m_irr_only=False), splitter=off_by_one)
    assert v.violations
    checks = {x.check for x in v.violations}
    assert {"size", "oracle", "transitivity"} <= checks


def test_violations_replay_from_multisegment_and_l():
    v = sweep_theorem1(SweepConfig(max_b=2, max_r=2, m_irr_only=False))
    for x in v.violations:
        ok, again = check_mult_free(x.multisegment, x.levi)
        assert not ok and again == x


def test_check_consistency_on_mixed_lines():
    m = Multisegment([Segment(CuspidalLine("rho", 1), 0, 2), Segment(CuspidalLine("sigma", 2), 1, 2)])
    for l in range(1, m.total_size):
        assert check_consistency(m, l) == []


def test_verdict_merge_sorts():
    a = Verdict(1, [Violation("b", ms((0, 0)))])
    b = Verdict(2, [Violation("a", ms((0, 0)))])
    merged = a.merge(b)
    assert merged.checked == 3
    assert [x.check for x in merged.violations] == ["a", "b"]
    assert merged == b.merge(a)
