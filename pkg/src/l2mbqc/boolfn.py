"""Boolean functions as explicit truth tables.

Tables are indexed with the first input bit in the least-significant
position: input x = (x1, ..., xn) lives at index x1 + 2*x2 + ... + 2^(n-1)*xn.
Distances to affine functions, the parity-basis expansion with exact dyadic
coefficients, and the closed-form majority nonlinearity all live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

#: largest arity accepted by the exhaustive nonlinearity search
BRUTE_FORCE_ARITY_CAP = 16


def _parity(v: int) -> int:
    return bin(v).count("1") & 1


@dataclass(frozen=True)
class BooleanFunction:
    """Truth table of an n-bit Boolean function."""

    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be nonnegative")
        if len(self.table) != 1 << self.arity:
            raise ValueError(
                f"table length {len(self.table)} does not match arity {self.arity}"
            )
        if any(b not in (0, 1) for b in self.table):
            raise ValueError("table entries must be bits")

    @classmethod
    def from_callable(cls, arity: int, fn: Callable[..., int]) -> "BooleanFunction":
        """Tabulate ``fn(x1, ..., xn)`` over all inputs."""
        table = tuple(
            int(fn(*((i >> j) & 1 for j in range(arity)))) & 1
            for i in range(1 << arity)
        )
        return cls(arity, table)

    def index_of(self, x: Iterable[int]) -> int:
        bits = tuple(x)
        if len(bits) != self.arity:
            raise ValueError(f"expected {self.arity} input bits, got {len(bits)}")
        return sum((int(b) & 1) << j for j, b in enumerate(bits))

    def __call__(self, *x: int) -> int:
        if len(x) == 1 and not isinstance(x[0], int):
            x = tuple(x[0])
        return self.table[self.index_of(x)]

    def evaluate_index(self, i: int) -> int:
        return self.table[i]

    @property
    def weight(self) -> int:
        return sum(self.table)

    def is_affine(self) -> bool:
        return nonlinearity(self) == 0


def evaluate(f: BooleanFunction, x: Iterable[int]) -> int:
    """Look up f at an explicit input bit sequence."""
    return f.table[f.index_of(x)]


@dataclass(frozen=True)
class AffineForm:
    """x -> (xor of the bits selected by mask) xor constant."""

    arity: int
    mask: int
    constant: int = 0

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.arity):
            raise ValueError("mask selects bits outside the arity")
        if self.constant not in (0, 1):
            raise ValueError("constant must be a bit")

    def evaluate_index(self, i: int) -> int:
        return _parity(self.mask & i) ^ self.constant

    def truth_table(self) -> BooleanFunction:
        return BooleanFunction(
            self.arity,
            tuple(self.evaluate_index(i) for i in range(1 << self.arity)),
        )


def all_affine_forms(arity: int) -> Iterable[AffineForm]:
    """All 2^(n+1) affine forms on n bits."""
    for mask in range(1 << arity):
        for constant in (0, 1):
            yield AffineForm(arity, mask, constant)


# ---------------------------------------------------------------------------
# named functions

_XNAND_TABLE = {
    # (b0, b1, b2) -> output
    (0, 0, 0): 1,
    (0, 0, 1): 1,
    (0, 1, 0): 0,
    (0, 1, 1): 1,
    (1, 0, 0): 1,
    (1, 0, 1): 0,
    (1, 1, 0): 0,
    (1, 1, 1): 0,
}


def make_named(name: str, k: int | None = None) -> BooleanFunction:
    """Construct a named function: and, nand, xor, const0, const1, maj, xnand.

    ``k`` is the arity for maj (odd) and the const functions; the other
    names have fixed arity.
    """
    key = name.strip().lower().replace("-", "").replace("_", "")
    if key == "and":
        return BooleanFunction.from_callable(2, lambda a, b: a & b)
    if key == "nand":
        return BooleanFunction.from_callable(2, lambda a, b: 1 - (a & b))
    if key == "xor":
        return BooleanFunction.from_callable(2, lambda a, b: a ^ b)
    if key in ("const0", "const1"):
        n = 2 if k is None else k
        if n < 0:
            raise ValueError("const arity must be nonnegative")
        bit = 1 if key == "const1" else 0
        return BooleanFunction(n, (bit,) * (1 << n))
    if key in ("maj", "kmaj"):
        if k is None:
            raise ValueError("maj requires the number of inputs k")
        if k < 1 or k % 2 == 0:
            raise ValueError(f"majority needs odd k >= 1, got {k}")
        table = tuple(
            1 if bin(i).count("1") * 2 > k else 0 for i in range(1 << k)
        )
        return BooleanFunction(k, table)
    if key == "xnand":
        f = BooleanFunction.from_callable(3, lambda b0, b1, b2: _XNAND_TABLE[(b0, b1, b2)])
        return f
    raise ValueError(f"unknown function name {name!r}")


# ---------------------------------------------------------------------------
# distance to affine functions

def affine_distance(f: BooleanFunction, l: AffineForm) -> int:
    """Number of inputs where f and the affine form disagree."""
    if l.arity != f.arity:
        raise ValueError("arity mismatch between function and affine form")
    return sum(
        1 for i in range(1 << f.arity) if f.table[i] != l.evaluate_index(i)
    )


def _walsh_spectrum(f: BooleanFunction) -> np.ndarray:
    """Signed spectrum W(a) = sum_x (-1)^(f(x) xor a.x), via the fast transform."""
    w = 1 - 2 * np.asarray(f.table, dtype=np.int64)
    h = 1
    n = w.size
    while h < n:
        w = w.reshape(-1, 2, h)
        top = w[:, 0, :] + w[:, 1, :]
        bot = w[:, 0, :] - w[:, 1, :]
        w = np.stack((top, bot), axis=1).reshape(-1)
        h *= 2
    return w


def nonlinearity(f: BooleanFunction, *, affine: bool = True) -> int:
    """Minimum distance from f to any affine form (or strictly linear one).

    With ``affine=True`` (default) the constant-1 offset is allowed, matching
    what a parity-limited control computer can add for free.
    """
    if f.arity > BRUTE_FORCE_ARITY_CAP:
        raise ValueError(
            f"arity {f.arity} above brute-force cap {BRUTE_FORCE_ARITY_CAP}"
        )
    spectrum = _walsh_spectrum(f)
    n_points = 1 << f.arity
    if affine:
        best = int(np.max(np.abs(spectrum)))
    else:
        best = int(np.max(spectrum))
    return (n_points - best) // 2


def kmaj_nonlinearity(k: int) -> int:
    """Closed-form nonlinearity of the k-input majority, odd k."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"majority nonlinearity needs odd k >= 1, got {k}")
    return (1 << (k - 1)) - math.comb(k - 1, (k - 1) // 2)


# ---------------------------------------------------------------------------
# parity-basis expansion

@dataclass(frozen=True)
class ParityExpansion:
    """f(x) = sum_T c_T * (-1)^(xor of x over T), with exact dyadic c_T.

    Keys are subset masks in the same bit convention as the truth table.
    """

    arity: int
    coefficients: dict[int, Fraction]

    def evaluate_index(self, i: int) -> Fraction:
        total = Fraction(0)
        for mask, coeff in self.coefficients.items():
            sign = -1 if _parity(mask & i) else 1
            total += coeff * sign
        return total

    def nonzero(self) -> dict[int, Fraction]:
        return {m: c for m, c in self.coefficients.items() if c != 0}


def parity_expansion(f: BooleanFunction) -> ParityExpansion:
    """Exact parity-basis coefficients c_T = 2^-n * sum_x f(x) (-1)^(T.x)."""
    if f.arity > BRUTE_FORCE_ARITY_CAP:
        raise ValueError(
            f"arity {f.arity} above brute-force cap {BRUTE_FORCE_ARITY_CAP}"
        )
    # The same butterfly as the Walsh transform, applied to the raw 0/1 table,
    # yields the integer numerators over the fixed denominator 2^n.
    w = np.asarray(f.table, dtype=np.int64)
    h = 1
    while h < w.size:
        w = w.reshape(-1, 2, h)
        top = w[:, 0, :] + w[:, 1, :]
        bot = w[:, 0, :] - w[:, 1, :]
        w = np.stack((top, bot), axis=1).reshape(-1)
        h *= 2
    denom = 1 << f.arity
    coeffs = {mask: Fraction(int(w[mask]), denom) for mask in range(denom)}
    return ParityExpansion(f.arity, coeffs)


# ---------------------------------------------------------------------------
# truth-table text format

def to_text(f: BooleanFunction) -> str:
    """Serialize as a header line ``n=<arity>`` plus a hex string of the table.

    Bit i of the hex value is table entry i, so index 0 sits in the
    least-significant nibble.
    """
    value = 0
    for i, b in enumerate(f.table):
        value |= b << i
    digits = max(1, (len(f.table) + 3) // 4)
    return f"n={f.arity}\n{value:0{digits}x}\n"


def from_text(text: str) -> BooleanFunction:
    """Parse the truth-table text format; raises ValueError with line numbers."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [(i + 1, ln) for i, ln in enumerate(lines) if ln and not ln.startswith("#")]
    if len(lines) < 2:
        raise ValueError("line 1: expected a header line and a hex table line")
    (hdr_no, header), (tab_no, hexpart) = lines[0], lines[1]
    if not header.startswith("n="):
        raise ValueError(f"line {hdr_no}: header must look like 'n=<arity>'")
    try:
        arity = int(header[2:])
    except ValueError:
        raise ValueError(f"line {hdr_no}: bad arity {header[2:]!r}") from None
    if arity < 0:
        raise ValueError(f"line {hdr_no}: arity must be nonnegative")
    try:
        value = int(hexpart, 16)
    except ValueError:
        raise ValueError(f"line {tab_no}: invalid hex table {hexpart!r}") from None
    size = 1 << arity
    if value >= (1 << size):
        raise ValueError(f"line {tab_no}: table has more than 2^{arity} bits")
    table = tuple((value >> i) & 1 for i in range(size))
    return BooleanFunction(arity, table)
