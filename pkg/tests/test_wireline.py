from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdtwrc.errors import HalfDuplexViolation, SchemeParseError, SchemeViolation, UnknownBitViolation
from hdtwrc.wireline import (
    REFERENCE_METRICS,
    BitPipeScheme,
    Link,
    builtin_schemes,
    evaluate_scheme,
    load_scheme,
    parse_scheme,
    validate_scheme,
)

# reference numbers as printed; 1.33 stands for 4/3
PRINTED = {
    "twc": ("1.0", "1.0", "1.0"),
    "two-step": ("1.0", "2.0", "1.5"),
    "three-step": ("1.33", "1.5", "1.5"),
    "alt-three-step": ("1.33", "1.5", "0.75"),
    "four-step": ("1.5", "1.33", "1.0"),
}


def as_fraction(text):
    return Fraction(4, 3) if text == "1.33" else Fraction(text)


def test_five_builtins():
    assert set(builtin_schemes()) == set(PRINTED)


@pytest.mark.parametrize("name", sorted(PRINTED))
def test_reference_metrics_exact(name):
    m = evaluate_scheme(builtin_schemes()[name])
    assert (m.bps, m.lpb, m.npb) == tuple(as_fraction(t) for t in PRINTED[name])
    assert (m.bps, m.lpb, m.npb) == REFERENCE_METRICS[name]
    assert m.bps * m.steps == m.delivered


@pytest.mark.parametrize("name", sorted(PRINTED))
def test_builtins_valid(name):
    validate_scheme(builtin_schemes()[name])


def test_half_duplex_violation():
    s = BitPipeScheme(({Link(1, 2, "b1"), Link(3, 1, "b2")},))
    with pytest.raises(HalfDuplexViolation) as exc:
        validate_scheme(s)
    assert exc.value.step == 0


def test_relay_cannot_originate():
    s = BitPipeScheme(({Link(2, 3, "b1")},))
    with pytest.raises(UnknownBitViolation):
        validate_scheme(s)


def test_forwarding_needs_earlier_reception():
    # node 2 receives b1 and forwards it in the same step: not allowed
    s = BitPipeScheme(({Link(1, 2, "b1")}, {Link(3, 1, "b2")}, {Link(2, 3, "b9")}))
    with pytest.raises(UnknownBitViolation) as exc:
        validate_scheme(s)
    assert exc.value.step == 2


def test_bit_cannot_originate_twice():
    s = BitPipeScheme(({Link(1, 2, "b1")}, {Link(3, 2, "b1")}))
    with pytest.raises(UnknownBitViolation):
        validate_scheme(s)


def test_link_carries_one_bit():
    s = BitPipeScheme(({Link(1, 2, "b1"), Link(1, 2, "b2")},))
    with pytest.raises(SchemeViolation):
        validate_scheme(s)


def test_empty_scheme_rejected():
    with pytest.raises(SchemeViolation):
        validate_scheme(BitPipeScheme(()))


def test_relay_reception_not_delivery():
    s = BitPipeScheme(({Link(1, 2, "b1")},))
    with pytest.raises(SchemeViolation, match="no dialog bits"):
        evaluate_scheme(s)


def test_broadcast_counts_two_link_uses():
    s = BitPipeScheme(({Link(1, 2, "b1"), Link(1, 3, "b1")},))
    m = evaluate_scheme(s)
    assert (m.bps, m.lpb, m.npb) == (1, 2, 1)


@pytest.mark.parametrize("line", ["1>4:b", "0>2:b", "2>2:b", "1-2:b", "1>2", "x>2:b"])
def test_parser_rejects(line):
    with pytest.raises(SchemeParseError):
        parse_scheme(line)


def test_parser_comments_and_blank_lines():
    s = parse_scheme("# header\n\n1>3:a  # direct\n3>1:b\n")
    assert len(s) == 2
    assert evaluate_scheme(s).bps == 1


def test_text_round_trip(tmp_path):
    for name, scheme in builtin_schemes().items():
        path = tmp_path / f"{name}.scheme"
        path.write_text(scheme.to_text())
        again = load_scheme(path)
        assert again.steps == scheme.steps
        assert again.name == name


@pytest.mark.parametrize("name", sorted(PRINTED))
def test_concatenation_keeps_metrics(name):
    s = builtin_schemes()[name]
    a = evaluate_scheme(s)
    b = evaluate_scheme(s.then(s))
    assert (a.bps, a.lpb, a.npb) == (b.bps, b.lpb, b.npb)
    assert b.steps == 2 * a.steps


@settings(max_examples=50, deadline=None)
@given(names=st.lists(st.sampled_from(sorted(PRINTED)), min_size=2, max_size=4))
def test_concatenation_adds_counts(names):
    schemes = builtin_schemes()
    combined = schemes[names[0]]
    for n in names[1:]:
        combined = combined.then(schemes[n])
    m = evaluate_scheme(combined)
    parts = [evaluate_scheme(schemes[n]) for n in names]
    assert m.steps == sum(p.steps for p in parts)
    assert m.delivered == sum(p.delivered for p in parts)
