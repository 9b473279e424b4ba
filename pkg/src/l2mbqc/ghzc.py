"""Compile Boolean functions to non-adaptive GHZ measurement programs.

Each qubit is tagged with a nonempty subset of input bits; its measurement
angle is 0 or a fixed increment depending on the parity of those bits, and
the program output is the parity of all outcomes xor a constant. Increments
come from the exact parity-basis expansion, so at most 2^n - 1 qubits are
needed and the phase bookkeeping stays in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .boolfn import BooleanFunction, parity_expansion
from .corrbox import GhzBox, ghz_parity_probability, statevector_oracle
from .mbqc import AffineBitMap, L2Program, constant_program

COMPILE_ARITY_CAP = 10
STATEVECTOR_QUBIT_CAP = 16
SUCCESS_TOL = 1e-10


def _parity(v: int) -> int:
    return bin(v).count("1") & 1


@dataclass(frozen=True)
class QubitSpec:
    """One qubit: the input subset driving it and its angle increment.

    ``delta`` is the increment in units of pi, kept as an exact rational.
    """

    mask: int
    delta: Fraction

    def __post_init__(self):
        if self.mask <= 0:
            raise ValueError("qubit subset mask must be nonempty")


@dataclass(frozen=True)
class GhzProgram:
    """Non-adaptive measurement program on a shared GHZ state."""

    n: int
    qubits: tuple[QubitSpec, ...]
    constant: int

    def __post_init__(self):
        if self.constant not in (0, 1):
            raise ValueError("constant must be a bit")
        for q in self.qubits:
            if q.mask >> self.n:
                raise ValueError("qubit subset references bits beyond the arity")

    @property
    def n_qubits(self) -> int:
        return len(self.qubits)

    def active_masks(self, x_idx: int) -> list[int]:
        return [i for i, q in enumerate(self.qubits) if _parity(q.mask & x_idx)]

    def phase_sum(self, x_idx: int) -> Fraction:
        """Sum of active increments for input x, in units of pi."""
        total = Fraction(0)
        for q in self.qubits:
            if _parity(q.mask & x_idx):
                total += q.delta
        return total


def compile_function(f: BooleanFunction, *, pad: bool = False) -> GhzProgram:
    """Derive increments from the parity expansion: delta_T = -2 c_T.

    Subsets with zero coefficient are dropped (the qubit bound is "at
    most"); ``pad`` keeps them with zero increments for conformance
    experiments at exactly 2^n - 1 qubits.
    """
    if f.arity > COMPILE_ARITY_CAP:
        raise ValueError(f"arity {f.arity} above compile cap {COMPILE_ARITY_CAP}")
    expansion = parity_expansion(f)
    qubits = []
    for mask in range(1, 1 << f.arity):
        coeff = expansion.coefficients[mask]
        if coeff == 0 and not pad:
            continue
        qubits.append(QubitSpec(mask=mask, delta=-2 * coeff))
    return GhzProgram(n=f.arity, qubits=tuple(qubits), constant=f.table[0])


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class GhzVerification:
    """Exact congruence flags plus simulated success, per input."""

    deterministic: bool
    congruence_ok: dict[tuple[int, ...], bool]
    success: dict[tuple[int, ...], float]
    statevector_success: dict[tuple[int, ...], float] | None

    @property
    def failing_inputs(self) -> list[tuple[int, ...]]:
        return sorted(x for x, ok in self.congruence_ok.items() if not ok)


def _bits(x_idx: int, n: int) -> tuple[int, ...]:
    return tuple((x_idx >> j) & 1 for j in range(n))


def verify(
    program: GhzProgram,
    f: BooleanFunction,
    *,
    use_statevector: bool | None = None,
) -> GhzVerification:
    """Check the phase congruence exactly and the simulated success per input.

    The congruence sum(active deltas) = f(x) xor constant (mod 2, units of
    pi) is evaluated in rational arithmetic; success probabilities come from
    the closed-form parity and, when the program is small enough, from the
    state-vector oracle as an independent path.
    """
    if program.n != f.arity:
        raise ValueError("program arity does not match the function")
    if use_statevector is None:
        use_statevector = 0 < program.n_qubits <= STATEVECTOR_QUBIT_CAP

    congruence: dict[tuple[int, ...], bool] = {}
    success: dict[tuple[int, ...], float] = {}
    sv_success: dict[tuple[int, ...], float] | None = {} if use_statevector else None

    box = None
    if program.n_qubits > 0:
        box = GhzBox(
            angles=tuple(
                (0.0, float(q.delta) * math.pi) for q in program.qubits
            ),
            epsilon=0.0,
        )
    for x_idx in range(1 << program.n):
        x = _bits(x_idx, program.n)
        want = f.table[x_idx] ^ program.constant
        residue = (program.phase_sum(x_idx) - want) % 2
        congruence[x] = residue == 0
        if box is None:
            success[x] = 1.0 if want == 0 else 0.0
            if sv_success is not None:
                sv_success[x] = success[x]
            continue
        box_inputs = tuple(
            _parity(q.mask & x_idx) for q in program.qubits
        )
        p1 = ghz_parity_probability(box, box_inputs)
        success[x] = p1 if want == 1 else 1.0 - p1
        if sv_success is not None:
            dist = statevector_oracle(box, box_inputs)
            p1_sv = dist.parity_probability(1)
            sv_success[x] = p1_sv if want == 1 else 1.0 - p1_sv

    deterministic = all(congruence.values()) and all(
        p >= 1.0 - SUCCESS_TOL for p in success.values()
    )
    return GhzVerification(
        deterministic=deterministic,
        congruence_ok=congruence,
        success=success,
        statevector_success=sv_success,
    )


def run_as_l2program(program: GhzProgram, epsilon: float = 0.0) -> L2Program:
    """Wrap the measurement program as a box program over one noisy GHZ box."""
    if not 0.0 <= epsilon <= 0.5:
        raise ValueError(f"epsilon {epsilon} outside [0, 1/2]")
    if program.n_qubits == 0:
        return constant_program(program.n, program.constant)
    box = GhzBox(
        angles=tuple((0.0, float(q.delta) * math.pi) for q in program.qubits),
        epsilon=epsilon,
    )
    maps = tuple(AffineBitMap(x_mask=q.mask) for q in program.qubits)
    all_outputs = (1 << program.n_qubits) - 1
    return L2Program(
        n=program.n,
        boxes=(box,),
        input_maps=(maps,),
        output_map=AffineBitMap(out_mask=all_outputs, const=program.constant),
    )


# ---------------------------------------------------------------------------
# serialization

def program_to_config(program: GhzProgram) -> dict:
    return {
        "n": program.n,
        "constant": program.constant,
        "qubits": [
            {"mask": q.mask, "num": q.delta.numerator, "den": q.delta.denominator}
            for q in program.qubits
        ],
    }


def program_from_config(config: dict) -> GhzProgram:
    try:
        qubits = tuple(
            QubitSpec(mask=int(q["mask"]), delta=Fraction(int(q["num"]), int(q["den"])))
            for q in config["qubits"]
        )
        return GhzProgram(
            n=int(config["n"]), qubits=qubits, constant=int(config["constant"])
        )
    except KeyError as exc:
        raise ValueError(f"program config missing key {exc}") from None
