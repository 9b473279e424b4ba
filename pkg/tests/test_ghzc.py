import random
from fractions import Fraction

import pytest

from l2mbqc import mbqc
from l2mbqc.boolfn import BooleanFunction, make_named
from l2mbqc.ghzc import (
    GhzProgram,
    QubitSpec,
    compile_function,
    program_from_config,
    program_to_config,
    run_as_l2program,
    verify,
)


def random_function(rng, n):
    return BooleanFunction(n, tuple(rng.randrange(2) for _ in range(1 << n)))


def test_compile_and_example():
    program = compile_function(make_named("and"))
    half = Fraction(1, 2)
    assert {(q.mask, q.delta) for q in program.qubits} == {
        (0b01, half),
        (0b10, half),
        (0b11, -half),
    }
    assert program.constant == 0


def test_compile_xor_single_qubit():
    program = compile_function(make_named("xor"))
    assert [(q.mask, q.delta) for q in program.qubits] == [(0b11, Fraction(1))]
    assert program.constant == 0


def test_compile_constant_needs_no_qubits():
    program = compile_function(make_named("const1", 3))
    assert program.n_qubits == 0 and program.constant == 1
    result = verify(program, make_named("const1", 3))
    assert result.deterministic


def test_compile_arity_cap():
    with pytest.raises(ValueError):
        compile_function(BooleanFunction(11, (0,) * (1 << 11)))


def test_all_n3_functions_compile_deterministically():
    for bits in range(256):
        f = BooleanFunction(3, tuple((bits >> i) & 1 for i in range(8)))
        program = compile_function(f)
        assert program.n_qubits <= 7
        result = verify(program, f, use_statevector=False)
        assert result.deterministic
        assert all(result.congruence_ok.values())


@pytest.mark.parametrize("n", [4, 5])
def test_random_functions_compile_deterministically(n):
    rng = random.Random(1000 + n)
    for _ in range(500):
        f = random_function(rng, n)
        program = compile_function(f)
        assert program.n_qubits <= (1 << n) - 1
        result = verify(program, f, use_statevector=False)
        assert result.deterministic


def test_statevector_agrees_with_closed_form():
    rng = random.Random(42)
    fns = [make_named("and"), make_named("xor"), make_named("maj", 3)]
    fns += [random_function(rng, 3) for _ in range(5)]
    fns += [random_function(rng, 4) for _ in range(2)]
    for f in fns:
        program = compile_function(f)
        if not 0 < program.n_qubits <= 16:
            continue
        result = verify(program, f, use_statevector=True)
        assert result.deterministic
        for x, p in result.success.items():
            assert abs(p - result.statevector_success[x]) < 1e-10


def test_phase_congruence_is_exact_rational():
    rng = random.Random(7)
    for n in (1, 2, 3, 4):
        f = random_function(rng, n)
        program = compile_function(f)
        for x in range(1 << n):
            residue = (program.phase_sum(x) - (f.table[x] ^ program.constant)) % 2
            assert residue == 0


def test_angle_granularity():
    rng = random.Random(8)
    for n in (2, 3, 4, 5):
        f = random_function(rng, n)
        for q in compile_function(f).qubits:
            assert q.delta != 0
            # multiples of pi / 2^(n-1)
            assert ((1 << (n - 1)) * q.delta).denominator == 1


def test_tampered_increment_fails_exactly_where_active():
    f = make_named("and")
    program = compile_function(f)
    qubits = list(program.qubits)
    qubits[0] = QubitSpec(qubits[0].mask, qubits[0].delta + 1)  # +pi
    bad = GhzProgram(program.n, tuple(qubits), program.constant)
    result = verify(bad, f)
    active = {
        tuple((x >> j) & 1 for j in range(2))
        for x in range(4)
        if bin(qubits[0].mask & x).count("1") & 1
    }
    assert set(result.failing_inputs) == active
    for x, ok in result.congruence_ok.items():
        assert ok == (x not in active)
        expected = 0.0 if x in active else 1.0
        assert result.success[x] == pytest.approx(expected, abs=1e-10)


def test_padded_mode_uses_full_qubit_budget():
    f = make_named("xor")
    program = compile_function(f, pad=True)
    assert program.n_qubits == 3
    assert verify(program, f).deterministic


@pytest.mark.parametrize("epsilon", [0.0, 0.1, 0.25, 0.4, 0.5])
def test_noise_passes_through_linearly(epsilon):
    f = make_named("maj", 3)
    report = mbqc.run_exact(run_as_l2program(compile_function(f), epsilon), f)
    for p in report.success.values():
        assert p == pytest.approx(1.0 - epsilon, abs=1e-12)


def test_run_as_l2program_validates_epsilon():
    with pytest.raises(ValueError):
        run_as_l2program(compile_function(make_named("and")), epsilon=0.7)


def test_verify_arity_mismatch():
    with pytest.raises(ValueError):
        verify(compile_function(make_named("and")), make_named("xnand"))


def test_config_roundtrip():
    program = compile_function(make_named("maj", 3))
    config = program_to_config(program)
    assert program_from_config(config) == program
    with pytest.raises(ValueError):
        program_from_config({"n": 2})
