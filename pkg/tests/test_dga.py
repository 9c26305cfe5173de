"""Validated DGAs: the differential, its laws, and the three validators."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cedga import Dga, Generator, GeneratorKind, NcPoly, UndeclaredGeneratorError


def test_dp_sign_invariants():
    Generator("x", 1, Fraction(1, 2), GeneratorKind.DOUBLE_POINT_POS)
    with pytest.raises(ValueError):
        Generator("x", 1, Fraction(-1, 2), GeneratorKind.DOUBLE_POINT_POS)
    with pytest.raises(ValueError):
        Generator("x", 1, Fraction(1, 2), GeneratorKind.DOUBLE_POINT_NEG)


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        Dga.build(2, gens=[("x", 0, 1), ("x", 1, 2)])


def test_undeclared_letter_rejected():
    with pytest.raises(UndeclaredGeneratorError):
        Dga.build(2, gens=[("y", -1, 1)], diffs={"y": [(1, ("x",))]})


def test_differential_of_unit_is_zero():
    dga = Dga.build(2, gens=[("x", 0, 1)])
    assert dga.apply_differential(NcPoly.unit(2)).is_zero


def test_apply_differential_rejects_undeclared_letters():
    dga = Dga.build(2, gens=[("x", 0, 1)])
    with pytest.raises(UndeclaredGeneratorError):
        dga.apply_differential(NcPoly.generator(2, "ghost"))


def test_char_two_square_word():
    # d(x) = 1 on the word x x gives 1*x + x*1 = 2x = 0 over F_2
    dga = Dga.build(2, gens=[("x", -1, 1)], diffs={"x": [(1, ())]})
    result = dga.apply_differential(NcPoly.monomial(2, ("x", "x")))
    assert result.is_zero


def test_leibniz_hand_expansion():
    # d(y) = x1 x2, x_i closed: d(y x1) = x1 x2 x1 in any characteristic
    for p in (2, 3):
        dga = Dga.build(p, gens=[("y", -1, 3), ("x1", 0, 1), ("x2", 0, 1)],
                        diffs={"y": [(1, ("x1", "x2"))]})
        result = dga.apply_differential(NcPoly.monomial(p, ("y", "x1")))
        assert result == NcPoly.monomial(p, ("x1", "x2", "x1"))


def test_d_squared_validator():
    zero = Dga.build(2, gens=[("x", 0, 1), ("y", -1, 2)])
    assert zero.validate_d_squared().ok

    closed_targets = Dga.build(2, gens=[("y", -1, 3), ("x1", 0, 1), ("x2", 0, 1)],
                               diffs={"y": [(1, ("x1", "x2"))]})
    assert closed_targets.validate_d_squared().ok

    bad = Dga.build(2, gens=[("y", -2, 2), ("x", -1, 1)],
                    diffs={"y": [(1, ("x",))], "x": [(1, ())]})
    report = bad.validate_d_squared()
    assert not report.ok
    assert [v.subject for v in report] == ["y"]
    assert "1" in report.violations[0].detail


def test_grading_validator():
    good = Dga.build(2, gens=[("y", -1, 3), ("x1", 0, 1), ("x2", 0, 1)],
                     diffs={"y": [(1, ("x1", "x2")), (1, ())]})
    assert good.validate_grading().ok

    assert Dga.build(2, gens=[("g", 5, 1)]).validate_grading().ok  # zero differential

    flagged = Dga.build(2, gens=[("y", -1, 3), ("x", 1, 1)],
                        diffs={"y": [(1, ("x",))]})
    report = flagged.validate_grading()
    assert not report.ok and report.violations[0].subject == "y"


def test_action_validator():
    assert Dga.build(2, gens=[("y", -1, Fraction(3, 2))],
                     diffs={"y": [(1, ())]}).validate_action().ok

    flagged = Dga.build(2, gens=[("y", -1, 1), ("x", 0, 2)],
                        diffs={"y": [(1, ("x",))]})
    assert not flagged.validate_action().ok

    # tiny connector-style actions: 1/100 + 1 < 102/100
    close = Dga.build(2, gens=[("b", -1, Fraction(102, 100)),
                               ("a", 0, Fraction(1, 100)), ("c", 0, 1)],
                      diffs={"b": [(1, ("a", "c"))]})
    assert close.validate_action().ok


def _random_law_dga(rng, p):
    """Closed core plus one graded layer mapping into it: d^2 = 0 by
    construction, the differential is degree-homogeneous (required for the
    Koszul cross-terms to cancel in odd characteristic), and actions strictly
    decrease into the core."""
    degrees = [rng.choice((-1, 0, 1, 2)) for _ in range(4)]
    core = [(f"c{i}", degrees[i], Fraction(i + 1, 10)) for i in range(4)]
    gens = list(core)
    diffs = {}
    for i in range(2):
        name = f"g{i}"
        first = [rng.randrange(4) for _ in range(rng.randint(0, 2))]
        target_degree = sum(degrees[t] for t in first)
        words = [(rng.randint(1, p - 1), tuple(f"c{t}" for t in first))]
        for _ in range(rng.randint(0, 1)):
            for _attempt in range(8):
                cand = [rng.randrange(4) for _ in range(rng.randint(0, 3))]
                if sum(degrees[t] for t in cand) == target_degree:
                    words.append((rng.randint(1, p - 1),
                                  tuple(f"c{t}" for t in cand)))
                    break
        gens.append((name, target_degree - 1, Fraction(3 + i, 1)))
        diffs[name] = words
    return Dga.build(p, gens=gens, diffs=diffs)


def _random_poly(rng, dga, max_terms=3, max_len=3):
    names = list(dga.generators)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        word = tuple(rng.choice(names) for _ in range(rng.randint(0, max_len)))
        terms[word] = rng.randint(1, dga.p - 1)
    return NcPoly(dga.p, terms)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_differential_linear_and_leibniz(p):
    rng = random.Random(p)
    for _ in range(200):
        dga = _random_law_dga(rng, p)
        q = _random_poly(rng, dga)
        r = _random_poly(rng, dga)
        assert dga.apply_differential(q + r) == \
            dga.apply_differential(q) + dga.apply_differential(r)
        # graded Leibniz with homogeneous left factor (a scaled word)
        word = tuple(rng.choice(list(dga.generators))
                     for _ in range(rng.randint(0, 3)))
        mono = NcPoly.monomial(p, word, rng.randint(1, p - 1))
        sign = -1 if (p != 2 and dga.word_degree(word) % 2) else 1
        lhs = dga.apply_differential(mono * r)
        rhs = dga.apply_differential(mono) * r + sign * (mono * dga.apply_differential(r))
        assert lhs == rhs


@pytest.mark.parametrize("p", [2, 3])
def test_d_squared_consequence_on_polys(p):
    rng = random.Random(10 + p)
    for _ in range(200):
        dga = _random_law_dga(rng, p)
        assert dga.validate_d_squared().ok
        assert dga.validate_grading().ok
        q = _random_poly(rng, dga)
        assert dga.apply_differential(dga.apply_differential(q)).is_zero


def test_action_filtration_lowering():
    rng = random.Random(7)
    for _ in range(200):
        dga = _random_law_dga(rng, 2)
        if not dga.validate_action().ok:
            continue
        q = _random_poly(rng, dga)
        dq = dga.apply_differential(q)
        if q.is_zero or dq.is_zero:
            continue
        assert dga.max_action(dq) < dga.max_action(q)


@given(st.integers(0, 7))
def test_build_round_trips_kinds(seed):
    kind = list(GeneratorKind)[seed]
    action = 1 if kind is not GeneratorKind.DOUBLE_POINT_NEG else -1
    dga = Dga.build(2, gens=[("g", 0, action, kind.value)])
    assert dga.generator("g").kind is kind
