import numpy as np
import pytest

from fracstab.errors import BindError, EvalError, ParseError
from fracstab.expressions import (
    BinOp,
    Call,
    Neg,
    Num,
    Var,
    evaluate,
    max_state_index,
    parse,
    sample_on,
    to_text,
    variables,
)


# --- parsing and precedence -----------------------------------------------------


def test_arithmetic_examples():
    e = parse("-x1 - x2/(1+t)")
    assert evaluate(e, t=0.0, x=(1.0, 1.0)) == pytest.approx(-2.0)
    e = parse("sin(t)*(x1^2 + x2^2)")
    assert evaluate(e, t=0.0, x=(3.0, 4.0)) == 0.0
    e = parse("exp(t/2)*x1^3")
    assert evaluate(e, t=0.0, x=(2.0,)) == pytest.approx(8.0)
    e = parse("x1 - x2 + cos(t)*(x1^2+x2^2)")
    assert evaluate(e, t=0.0, x=(-0.2, 0.3)) == pytest.approx(-0.37)


def test_whitespace_insensitive():
    assert parse("x1 - x2") == parse("x1-x2")
    assert parse(" sin( t ) * 2 ") == parse("sin(t)*2")


def test_precedence_contract():
    assert evaluate(parse("2+3*4")) == 14.0
    assert evaluate(parse("2^3^2")) == 512.0
    assert evaluate(parse("-2^2")) == -4.0
    assert evaluate(parse("(-2)^2")) == 4.0
    assert evaluate(parse("-x1^2"), x=(3.0,)) == -9.0
    assert evaluate(parse("2^-2")) == 0.25
    assert evaluate(parse("6/3/2")) == 1.0
    assert evaluate(parse("6-3-2")) == 1.0


def test_numbers():
    assert evaluate(parse("1.5e2")) == 150.0
    assert evaluate(parse("2.5E-1")) == 0.25
    assert evaluate(parse(".5")) == 0.5
    assert evaluate(parse("3.")) == 3.0


def test_calls_and_pow():
    assert evaluate(parse("pow(x1, 3)"), x=(2.0,)) == 8.0
    assert evaluate(parse("abs(-3)")) == 3.0
    assert evaluate(parse("sqrt(9)")) == 3.0


def test_parse_errors_carry_offsets():
    cases = [
        ("", 0),
        ("   ", 0),
        ("x1 + foo", 5),
        ("x1 + (x2", 8),
        ("x1 x2", 3),
        ("1 + bar(2)", 4),
        ("pow(1)", 0),
        ("sin(1, 2)", 0),
        ("x0 + 1", 0),
        ("2 + @", 4),
    ]
    for text, offset in cases:
        with pytest.raises(ParseError) as exc:
            parse(text)
        assert exc.value.offset == offset, text


def test_depth_limit():
    deep = "(" * 300 + "1" + ")" * 300
    with pytest.raises(ParseError):
        parse(deep)


# --- evaluation faults ------------------------------------------------------------


def test_division_by_zero():
    with pytest.raises(EvalError):
        evaluate(parse("x1/(t-1)"), t=1.0, x=(1.0,))


def test_negative_base_fractional_exponent():
    with pytest.raises(EvalError):
        evaluate(parse("x1^0.5"), x=(-2.0,))
    assert evaluate(parse("x1^2"), x=(-2.0,)) == 4.0


def test_sqrt_negative():
    with pytest.raises(EvalError):
        evaluate(parse("sqrt(t-2)"), t=0.0)


def test_overflow_is_an_error():
    with pytest.raises(EvalError):
        evaluate(parse("exp(t)*exp(t)"), t=500.0)


def test_bind_errors():
    with pytest.raises(BindError):
        evaluate(parse("x3"), x=(1.0, 2.0))
    with pytest.raises(BindError):
        evaluate(parse("r + 1"))
    assert evaluate(parse("r^2"), r=3.0) == 9.0


def test_variables_and_bounds():
    e = parse("x2 + sin(t)*x1 - r")
    assert variables(e) == {"t", "x1", "x2", "r"}
    assert max_state_index(e) == 2
    assert max_state_index(parse("t + 1")) == 0


def test_sample_on_broadcasts_constants():
    ts = np.linspace(0.0, 1.0, 5)
    out = sample_on(parse("2 + 0*t"), ts)
    assert out.shape == ts.shape
    out2 = sample_on(parse("7"), ts)
    assert np.all(out2 == 7.0)


def test_array_evaluation_matches_scalar():
    e = parse("exp(-t)*x1 + x2^2 - sin(2*t)")
    ts = np.linspace(0.0, 3.0, 64)
    x1 = np.cos(ts)
    x2 = 0.5 * ts
    arr = evaluate(e, t=ts, x=(x1, x2))
    for j in (0, 17, 63):
        scalar = evaluate(e, t=float(ts[j]), x=(float(x1[j]), float(x2[j])))
        assert arr[j] == pytest.approx(scalar, rel=1e-15)


# --- round-trip ---------------------------------------------------------------------


def _random_expr(rng, depth):
    choice = rng.integers(0, 7 if depth > 0 else 3)
    if choice == 0:
        return Num(float(f"{rng.uniform(0.0, 10.0):.6g}"))
    if choice == 1:
        return Var("t")
    if choice == 2:
        i = int(rng.integers(1, 4))
        return Var(f"x{i}", i)
    if choice == 3:
        return Neg(_random_expr(rng, depth - 1))
    if choice == 4:
        op = str(rng.choice(["+", "-", "*", "/", "^"]))
        return BinOp(op, _random_expr(rng, depth - 1), _random_expr(rng, depth - 1))
    if choice == 5:
        name = str(rng.choice(["sin", "cos", "exp", "sqrt", "abs"]))
        return Call(name, (_random_expr(rng, depth - 1),))
    return Call("pow", (_random_expr(rng, depth - 1), _random_expr(rng, depth - 1)))


def test_round_trip_500_random_expressions():
    rng = np.random.default_rng(2024)
    for _ in range(500):
        e = _random_expr(rng, depth=4)
        text = to_text(e)
        assert parse(text) == e, text
