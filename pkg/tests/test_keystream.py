import math

import pytest
from hypothesis import given, strategies as st

from tfcipher.buckets import DEFAULT_TABLE, lookup_bucket, theta
from tfcipher.errors import InvalidParams, NumericFault, ValueOutOfRange
from tfcipher.keystream import (
    Coefficients,
    GeneratorParams,
    Mode,
    coefficients,
    derive_subkey,
    generate,
    keystream_from_bytes,
    keystream_from_text,
    keystream_to_bytes,
    keystream_to_text,
    step_canonical,
)

REFERENCE_PARAMS = dict(key_r=4, timestamps=tuple(range(1, 7)), nonce=tuple(range(2, 22)))


def make_params(**overrides):
    kwargs = dict(REFERENCE_PARAMS)
    kwargs.update(overrides)
    return GeneratorParams(**kwargs)


def literal_params(key_r=4, u=3, u1=2, **overrides):
    return make_params(
        mode=Mode.LITERAL, key_r=key_r, literal_u=u, literal_u1=u1, **overrides
    )


# --- parameter validation


@pytest.mark.parametrize(
    "overrides",
    [
        dict(key_r=0),
        dict(key_r=-3),
        dict(timestamps=()),
        dict(timestamps=(0, 1)),
        dict(nonce=()),
        dict(nonce=(1, 3)),
        dict(seed_t1=0),
        dict(modulus=1),
        dict(mode="literal"),  # missing literal inputs
        dict(mode="literal", literal_u=3, literal_u1=0),
    ],
)
def test_invalid_params_rejected(overrides):
    with pytest.raises(InvalidParams):
        make_params(**overrides)


def test_params_normalized():
    params = GeneratorParams(key_r=4, timestamps=[1, 2], nonce=[2, 3], mode="canonical")
    assert params.timestamps == (1, 2)
    assert params.nonce == (2, 3)
    assert params.mode is Mode.CANONICAL


# --- coefficients


def test_coefficients_canonical_example():
    co = coefficients(4, 2, 1, 0.6)
    assert co == Coefficients(pytest.approx(2.6), pytest.approx(2.4), -4.0, 0.6)


def test_coefficients_literal_example():
    co = coefficients(4, 2, 1, 0.6, Mode.LITERAL)
    assert co.a == pytest.approx(0.2)
    assert co.b == pytest.approx(1.2)
    assert co.c == pytest.approx(-2.0)


@given(
    key_r=st.integers(1, 500),
    gamma=st.integers(2, 50),
    m=st.integers(1, 12),
    row=st.integers(0, 6),
)
def test_coefficients_canonical_sum_to_one(key_r, gamma, m, row):
    th = theta(DEFAULT_TABLE.rules[row])
    co = coefficients(key_r, gamma, m, th)
    assert co.a + co.b + co.c == pytest.approx(1.0, abs=1e-9)


# --- canonical stepping


def test_step_canonical_derived_value():
    # t=13 selects the 11..15 rule: theta=0.6, F=4, a=2.6, b=2.4, c=-4,
    # ratio=2, so t_real=-8.6, floored to -9, Euclidean mod 35 -> 26.
    assert step_canonical(13, make_params(), gamma=2, m=1) == 26


@pytest.mark.parametrize("t", range(36))
@pytest.mark.parametrize("gamma, m", [(2, 1), (5, 3), (21, 6)])
def test_step_canonical_formula_and_range(t, gamma, m):
    params = make_params()
    rule = lookup_bucket(DEFAULT_TABLE, t)
    th = theta(rule)
    f = params.key_r * (gamma - 1) * m * m
    ratio = 1.0 / rule.u_delta_frac
    t_real = (1.0 + f * (1.0 - th)) + f * th * ratio + -float(f) * ratio * ratio
    expected = math.floor(t_real) % params.modulus
    result = step_canonical(t, params, gamma, m)
    assert result == expected
    assert 0 <= result < params.modulus


# --- generation, canonical


def test_generate_canonical_reference_prefix():
    # First values for the documented reference parameters, frozen from
    # an independent hand evaluation of the recurrence.
    ks = generate(make_params())
    assert ks[:12] == [26, 33, 34, 34, 33, 33, 32, 32, 31, 31, 30, 21]


def test_generate_canonical_length_and_range():
    ks = generate(make_params())
    assert len(ks) == 6 * 20
    assert all(0 <= v < 35 for v in ks)


def test_generate_canonical_deterministic():
    assert generate(make_params()) == generate(make_params())


def test_generate_iterates_timestamps_outer_nonce_inner():
    params = make_params(timestamps=(1, 2), nonce=(2, 3))
    t0 = math.trunc(params.seed_t1 / 0.3) % 36
    expected = []
    t = t0
    for m, gamma in [(1, 2), (1, 3), (2, 2), (2, 3)]:
        t = step_canonical(t, params, gamma, m)
        expected.append(t)
    assert generate(params) == expected


def test_generate_seed_controls_start():
    a = generate(make_params(timestamps=(1,), nonce=(2,)))
    b = generate(make_params(timestamps=(1,), nonce=(2,), seed_t1=1))
    assert a == [step_canonical(13, make_params(), 2, 1)]
    assert b == [step_canonical(3, make_params(), 2, 1)]


@given(
    key_r=st.integers(1, 9),
    ts=st.lists(st.integers(1, 50), min_size=1, max_size=5),
    nonce=st.lists(st.integers(2, 50), min_size=1, max_size=5),
    seed=st.integers(1, 40),
)
def test_generate_canonical_properties(key_r, ts, nonce, seed):
    params = GeneratorParams(key_r=key_r, timestamps=ts, nonce=nonce, seed_t1=seed)
    ks = generate(params)
    assert len(ks) == len(ts) * len(nonce)
    assert all(0 <= v < 35 for v in ks)
    assert ks == generate(params)


# --- generation, literal


def test_generate_literal_shape():
    ks = generate(literal_params())
    assert len(ks) == 115
    assert ks[:6] == [7, 5, 9, 17, 25, 31]


def test_generate_literal_ignores_list_contents():
    a = generate(literal_params())
    b = generate(literal_params(timestamps=(9,), nonce=(17, 30)))
    assert a == b


def test_generate_literal_duplicates_last_inner_value():
    ks = generate(literal_params())
    for outer in range(5):
        block = ks[outer * 23 : (outer + 1) * 23]
        assert block[21] == block[22]


def test_generate_literal_numeric_fault():
    params = literal_params(key_r=1, u=-30, u1=-6)
    with pytest.raises(NumericFault) as excinfo:
        generate(params)
    assert excinfo.value.step == 2
    assert len(excinfo.value.partial) == 2


# --- subkey derivation


def test_derive_subkey_reference_values():
    assert derive_subkey(literal_params(), 4) == [7, 5, 9, 17]


def test_derive_subkey_lengths():
    params = make_params()
    base = generate(params)
    assert derive_subkey(params, 0) == []
    assert derive_subkey(params, 7) == base[:7]
    assert derive_subkey(params, 2 * len(base)) == base + base
    assert derive_subkey(params, len(base) + 10) == base + base[:10]
    with pytest.raises(InvalidParams):
        derive_subkey(params, -1)


# --- serialization


def test_keystream_text_round_trip():
    ks = [0, 34, 7, 12]
    assert keystream_from_text(keystream_to_text(ks)) == ks
    assert keystream_to_text(ks) == "0 34 7 12"


def test_keystream_bytes_round_trip():
    ks = generate(make_params())
    assert keystream_from_bytes(keystream_to_bytes(ks)) == ks


@pytest.mark.parametrize("bad", [[-1], [256], [0, 300]])
def test_keystream_bytes_range_checked(bad):
    with pytest.raises(ValueOutOfRange):
        keystream_to_bytes(bad)
