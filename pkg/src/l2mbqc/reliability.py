"""Reliable evaluation of NAND formulas from noisy gates by multiplexing.

Every logical bit is carried by a bundle of W wires. Compute stages apply a
noisy three-input XNAND wire-wise to one copy of the first operand and two
copies of the second; restore stages vote with noisy k-input majority gates
to push the bundle error back toward its fixed point. Error propagation is
tracked two ways: analytically under a within-bundle independence
assumption, and by seeded wire-level Monte Carlo with the circuit's fixed
wiring, which quantifies how much that assumption leaks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.stats import binom

from .boolfn import make_named
from .gates import NoisyGate, beta, maj_error_recursion

EQUAL_ERROR_SLACK = 0.05
MC_CHUNK = 2048


# ---------------------------------------------------------------------------
# NAND formulas

@dataclass(frozen=True)
class FormulaDag:
    """NAND gates over named inputs; reference i < n_inputs is input i,
    reference n_inputs + j is node j. The last node is the output."""

    inputs: tuple[str, ...]
    nodes: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("formula needs at least one NAND node")
        for j, (a, b) in enumerate(self.nodes):
            limit = len(self.inputs) + j
            if not (0 <= a < limit and 0 <= b < limit):
                raise ValueError(f"node {j} references an unavailable operand")

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def output_ref(self) -> int:
        return self.n_inputs + self.n_nodes - 1

    def evaluate_all(self, x: Sequence[int]) -> list[int]:
        """Values of every reference (inputs then nodes) for one assignment."""
        if len(x) != self.n_inputs:
            raise ValueError("one bit per formula input required")
        vals = [int(b) & 1 for b in x]
        for a, b in self.nodes:
            vals.append(1 - (vals[a] & vals[b]))
        return vals

    def evaluate(self, x: Sequence[int]) -> int:
        return self.evaluate_all(x)[-1]

    def consumer_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for a, b in self.nodes:
            counts[a] = counts.get(a, 0) + 1
            counts[b] = counts.get(b, 0) + 1
        return counts


def parse_formula(text: str) -> FormulaDag:
    """Parse nested s-expressions of NAND over named inputs.

    Example: ``(nand a (nand a b))``. Errors carry the 1-based line number.
    """
    tokens: list[tuple[str, int]] = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        chunk = line.split("#", 1)[0]
        chunk = chunk.replace("(", " ( ").replace(")", " ) ")
        for tok in chunk.split():
            tokens.append((tok, line_no))
    if not tokens:
        raise ValueError("line 1: empty formula")

    inputs: list[str] = []
    nodes: list[tuple[int, int]] = []
    pos = 0

    def parse_expr() -> int:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"line {tokens[-1][1]}: unexpected end of formula")
        tok, line_no = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens) or tokens[pos][0].lower() != "nand":
                raise ValueError(f"line {line_no}: expected 'nand' after '('")
            pos += 1
            a = parse_expr()
            b = parse_expr()
            if pos >= len(tokens) or tokens[pos][0] != ")":
                raise ValueError(f"line {line_no}: expected ')'")
            pos += 1
            nodes.append((a, b))
            return -len(nodes)  # provisional node handle
        if tok == ")":
            raise ValueError(f"line {line_no}: unexpected ')'")
        if not tok.replace("_", "").isalnum() or tok[0].isdigit():
            raise ValueError(f"line {line_no}: bad input name {tok!r}")
        if tok not in inputs:
            inputs.append(tok)
        return inputs.index(tok)

    root = parse_expr()
    if pos != len(tokens):
        raise ValueError(f"line {tokens[pos][1]}: trailing tokens after formula")
    if root >= 0:
        raise ValueError("line 1: formula must contain at least one nand")
    n = len(inputs)
    fixed = tuple(
        tuple(ref if ref >= 0 else n + (-ref - 1) for ref in node) for node in nodes
    )
    return FormulaDag(inputs=tuple(inputs), nodes=fixed)


def formula_to_text(formula: FormulaDag) -> str:
    def render(ref: int) -> str:
        if ref < formula.n_inputs:
            return formula.inputs[ref]
        a, b = formula.nodes[ref - formula.n_inputs]
        return f"(nand {render(a)} {render(b)})"

    return render(formula.output_ref)


# ---------------------------------------------------------------------------
# circuit construction

@dataclass(frozen=True)
class RestoreStage:
    source: int
    target: int
    wiring: tuple[tuple[int, ...], ...]  # k rows, each a permutation of range(W)


@dataclass(frozen=True)
class ComputeStage:
    a_source: int
    b_source: int
    target: int
    sigma1: tuple[int, ...]
    sigma2: tuple[int, ...]


Stage = Union[RestoreStage, ComputeStage]


@dataclass(frozen=True)
class ReliableCircuit:
    formula: FormulaDag
    width: int
    k: int
    restore_rounds: int
    kmaj: NoisyGate
    xnand: NoisyGate
    seed: int
    stages: tuple[Stage, ...]
    input_bundles: tuple[int, ...]
    output_bundle: int
    n_bundles: int
    warnings: tuple[str, ...]


def _restore_wiring(rng, width: int, k: int, policy: str) -> tuple[tuple[int, ...], ...]:
    if policy == "independent":
        return tuple(tuple(int(v) for v in rng.permutation(width)) for _ in range(k))
    if policy == "staggered":
        base = [int(v) for v in rng.permutation(width)]
        return tuple(
            tuple(base[(j + i) % width] for j in range(width)) for i in range(k)
        )
    raise ValueError(f"unknown restore wiring policy {policy!r}")


def build(
    formula: FormulaDag,
    width: int,
    k: int,
    restore_rounds: int,
    *,
    xnand: NoisyGate,
    kmaj: NoisyGate,
    seed: int,
    restore_wiring: str = "independent",
) -> ReliableCircuit:
    """Lay out restore and compute stages for the formula.

    Every input bundle gets ``restore_rounds`` restores before first use and
    every compute output gets the same number after it. A bundle consumed by
    more than one gate input is re-restored once per consumer so consumers
    never share wires. Threshold violations warn but do not fail: exploring
    the unreliable regime is part of the point.

    The default wiring samples k independent permutations per restore stage
    (classic multiplexing), which admits occasional duplicate votes on an
    output wire; ``restore_wiring="staggered"`` derives all k rows from one
    permutation so the votes are always distinct wires.
    """
    if width < k:
        raise ValueError(f"bundle width {width} smaller than k = {k}")
    if restore_rounds < 0:
        raise ValueError("restore_rounds must be nonnegative")
    if kmaj.target != make_named("maj", k):
        raise ValueError(f"restore gate must target {k}-input majority")
    if xnand.target != make_named("xnand"):
        raise ValueError("compute gate must target the 3-input XNAND")

    warnings: list[str] = []
    if k >= 3:
        threshold = float(beta(k).beta)
        if kmaj.epsilon is None:
            warnings.append("restore gate error is input-dependent; threshold analysis assumes the worst entry")
            worst = max(kmaj.errors)
        else:
            worst = kmaj.epsilon
        if worst >= threshold:
            warnings.append(
                f"restore gate error {worst:.6f} is not below beta_{k} = {threshold:.6f}; restoration will not converge"
            )
    mu = max(xnand.errors)
    if mu >= 0.5:
        warnings.append(f"compute gate error {mu:.6f} is not below 1/2")

    rng = np.random.default_rng([seed, 0])
    stages: list[Stage] = []
    n_bundles = 0

    def new_bundle() -> int:
        nonlocal n_bundles
        n_bundles += 1
        return n_bundles - 1

    def add_restores(src: int, rounds: int) -> int:
        cur = src
        for _ in range(rounds):
            tgt = new_bundle()
            stages.append(
                RestoreStage(
                    source=cur,
                    target=tgt,
                    wiring=_restore_wiring(rng, width, k, restore_wiring),
                )
            )
            cur = tgt
        return cur

    consumers = formula.consumer_counts()
    raw_inputs = tuple(new_bundle() for _ in formula.inputs)
    prepared: dict[int, int] = {}
    for i in range(formula.n_inputs):
        prepared[i] = add_restores(raw_inputs[i], restore_rounds)

    fanout_refs = sorted(r for r, c in consumers.items() if c >= 2)
    if fanout_refs:
        warnings.append(
            "references consumed more than once are duplicated through an extra restore each; "
            "analytic independence across those copies is approximate"
        )

    def operand_bundle(ref: int) -> int:
        base = prepared[ref]
        if consumers.get(ref, 0) >= 2:
            return add_restores(base, 1)
        return base

    for j, (a_ref, b_ref) in enumerate(formula.nodes):
        a_bundle = operand_bundle(a_ref)
        b_bundle = operand_bundle(b_ref)
        tgt = new_bundle()
        sigma1 = [int(v) for v in rng.permutation(width)]
        shift = width // 2
        sigma2 = [sigma1[(i + shift) % width] for i in range(width)]
        stages.append(
            ComputeStage(
                a_source=a_bundle,
                b_source=b_bundle,
                target=tgt,
                sigma1=tuple(sigma1),
                sigma2=tuple(sigma2),
            )
        )
        prepared[formula.n_inputs + j] = add_restores(tgt, restore_rounds)

    return ReliableCircuit(
        formula=formula,
        width=width,
        k=k,
        restore_rounds=restore_rounds,
        kmaj=kmaj,
        xnand=xnand,
        seed=seed,
        stages=tuple(stages),
        input_bundles=raw_inputs,
        output_bundle=prepared[formula.output_ref],
        n_bundles=n_bundles,
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# analytic error propagation

def _restore_error(gate: NoisyGate, k: int, value: int, p: float) -> float:
    """Bundle error after one noisy-majority vote over k independent copies."""
    if gate.epsilon is not None:
        return maj_error_recursion(k, gate.epsilon, p)
    total = 0.0
    for flips in range(1 << k):
        n_flipped = bin(flips).count("1")
        prob = p**n_flipped * (1.0 - p) ** (k - n_flipped)
        idx = flips if value == 0 else flips ^ ((1 << k) - 1)
        maj_out = gate.target.table[idx]
        e = gate.errors[idx]
        total += prob * ((1.0 - e) if maj_out != value else e)
    return total


def _compute_error(
    gate: NoisyGate, v_a: int, v_b: int, p_a: float, p_b: float, shared_b: bool
) -> float:
    """Output-wire error of XNAND(a, b1, b2) against NAND(v_a, v_b).

    The two b copies are independent draws from the same bundle; with a
    width-1 bundle they are the same wire (``shared_b``).
    """
    want = 1 - (v_a & v_b)
    total = 0.0
    for e_a in (0, 1):
        pa = p_a if e_a else 1.0 - p_a
        if shared_b:
            patterns = [((e_b, e_b), p_b if e_b else 1.0 - p_b) for e_b in (0, 1)]
        else:
            patterns = [
                (
                    (e1, e2),
                    (p_b if e1 else 1.0 - p_b) * (p_b if e2 else 1.0 - p_b),
                )
                for e1 in (0, 1)
                for e2 in (0, 1)
            ]
        for (e1, e2), pb in patterns:
            bits = (v_a ^ e_a) | ((v_b ^ e1) << 1) | ((v_b ^ e2) << 2)
            out = gate.target.table[bits]
            e = gate.errors[bits]
            total += pa * pb * ((1.0 - e) if out != want else e)
    return total


def _majority_readout_error(width: int, p: float) -> float:
    """P(majority vote over the bundle is wrong); ties count as wrong."""
    return float(binom.sf(math.ceil(width / 2) - 1, width, p))


@dataclass(frozen=True)
class AnalyticResult:
    """One input's exact error propagation under the independence assumption."""

    x: tuple[int, ...]
    value: int
    wire_error: float
    logical_error: float
    trajectory: tuple[tuple[int, str, int, float], ...]  # (stage, kind, bundle, error)
    warnings: tuple[str, ...]


def simulate_analytic(circuit: ReliableCircuit, x: Sequence[int]) -> AnalyticResult:
    """Propagate per-bundle error probabilities stage by stage for one input.

    Within-bundle wires are treated as independent and identically
    distributed; compute stages flag operand bundles whose errors drifted
    apart beyond the equal-error slack of the voting analysis.
    """
    x = tuple(int(b) & 1 for b in x)
    vals = circuit.formula.evaluate_all(x)
    value: dict[int, int] = {}
    error: dict[int, float] = {}
    for i, b in enumerate(circuit.input_bundles):
        value[b] = vals[i]
        error[b] = 0.0
    warnings: list[str] = []
    trajectory: list[tuple[int, str, int, float]] = []
    for s_idx, stage in enumerate(circuit.stages):
        if isinstance(stage, RestoreStage):
            v = value[stage.source]
            p = _restore_error(circuit.kmaj, circuit.k, v, error[stage.source])
            value[stage.target] = v
            error[stage.target] = p
            trajectory.append((s_idx, "restore", stage.target, p))
        else:
            v_a, v_b = value[stage.a_source], value[stage.b_source]
            p_a, p_b = error[stage.a_source], error[stage.b_source]
            if abs(p_a - p_b) > EQUAL_ERROR_SLACK:
                warnings.append(
                    f"stage {s_idx}: operand errors {p_a:.4f} and {p_b:.4f} differ "
                    f"beyond the equal-error slack {EQUAL_ERROR_SLACK}"
                )
            p = _compute_error(
                circuit.xnand, v_a, v_b, p_a, p_b, shared_b=circuit.width == 1
            )
            value[stage.target] = 1 - (v_a & v_b)
            error[stage.target] = p
            trajectory.append((s_idx, "compute", stage.target, p))
    out = circuit.output_bundle
    wire_p = error[out]
    return AnalyticResult(
        x=x,
        value=value[out],
        wire_error=wire_p,
        logical_error=_majority_readout_error(circuit.width, wire_p),
        trajectory=tuple(trajectory),
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# Monte Carlo

@dataclass(frozen=True)
class MonteCarloResult:
    x: tuple[int, ...]
    trials: int
    seed: int
    empirical_error: float
    ci_halfwidth: float


def simulate_monte_carlo(
    circuit: ReliableCircuit, x: Sequence[int], trials: int, seed: int
) -> MonteCarloResult:
    """Sample every wire with the circuit's fixed wiring; exact given the seed.

    Trial t draws from its own stream keyed by (seed, input, t), one block
    per stage in declaration order, so results are independent of batching
    and of the total trial count.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    x = tuple(int(b) & 1 for b in x)
    x_key = sum(b << i for i, b in enumerate(x))
    w = circuit.width
    n_stages = len(circuit.stages)
    true_value = circuit.formula.evaluate(x)

    kmaj_errs = np.asarray(circuit.kmaj.errors, dtype=np.float64)
    kmaj_table = np.asarray(circuit.kmaj.target.table, dtype=np.uint8)
    xn_errs = np.asarray(circuit.xnand.errors, dtype=np.float64)
    xn_table = np.asarray(circuit.xnand.target.table, dtype=np.uint8)

    restore_wiring = {
        i: np.asarray(st.wiring, dtype=np.intp)
        for i, st in enumerate(circuit.stages)
        if isinstance(st, RestoreStage)
    }
    wrong = 0
    for start in range(0, trials, MC_CHUNK):
        count = min(MC_CHUNK, trials - start)
        draws = np.stack(
            [
                np.random.default_rng([seed, x_key, t]).random((n_stages, w))
                for t in range(start, start + count)
            ]
        )
        bundles: dict[int, np.ndarray] = {}
        for i, b in enumerate(circuit.input_bundles):
            bundles[b] = np.full((count, w), x[i], dtype=np.uint8)
        for s_idx, stage in enumerate(circuit.stages):
            u = draws[:, s_idx, :]
            if isinstance(stage, RestoreStage):
                votes = bundles[stage.source][:, restore_wiring[s_idx]]  # (count, k, w)
                idx = np.zeros((count, w), dtype=np.intp)
                for j in range(circuit.k):
                    idx |= votes[:, j, :].astype(np.intp) << j
                out = kmaj_table[idx] ^ (u < kmaj_errs[idx])
            else:
                a = bundles[stage.a_source]
                b_src = bundles[stage.b_source]
                b1 = b_src[:, np.asarray(stage.sigma1, dtype=np.intp)]
                b2 = b_src[:, np.asarray(stage.sigma2, dtype=np.intp)]
                idx = (
                    a.astype(np.intp)
                    | (b1.astype(np.intp) << 1)
                    | (b2.astype(np.intp) << 2)
                )
                out = xn_table[idx] ^ (u < xn_errs[idx])
            bundles[stage.target] = out.astype(np.uint8)
        wrong_wires = (bundles[circuit.output_bundle] != true_value).sum(axis=1)
        wrong += int(np.count_nonzero(2 * wrong_wires >= w))
    p_hat = wrong / trials
    ci = 1.96 * math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / trials)
    return MonteCarloResult(
        x=x, trials=trials, seed=seed, empirical_error=p_hat, ci_halfwidth=ci
    )


# ---------------------------------------------------------------------------
# reports and certification

@dataclass(frozen=True)
class InputRow:
    x: tuple[int, ...]
    analytic_error: float
    empirical_error: float | None = None
    ci_halfwidth: float | None = None


@dataclass(frozen=True)
class SimulationReport:
    """Worst-input summary over all assignments, with optional Monte Carlo."""

    rows: tuple[InputRow, ...]
    delta: float
    worst_input: tuple[int, ...]
    margin: float
    reliable: bool
    warnings: tuple[str, ...]

    def summary(self) -> dict:
        return {
            "delta": self.delta,
            "worst_input": "".join(str(b) for b in self.worst_input),
            "margin": self.margin,
            "reliable": self.reliable,
            "warnings": list(self.warnings),
        }


def certify(report: SimulationReport, margin: float) -> bool:
    """Reliable iff the worst-input error stays below 1/2 by the margin.

    Uses the analytic delta; rows carrying Monte Carlo results must also
    keep their upper confidence bound below the line.
    """
    if not 0.0 < margin < 0.5:
        raise ValueError(f"margin {margin} outside (0, 1/2)")
    line = 0.5 - margin
    if report.delta > line:
        return False
    for row in report.rows:
        if row.empirical_error is not None:
            if row.empirical_error + (row.ci_halfwidth or 0.0) > line:
                return False
    return True


def build_report(
    circuit: ReliableCircuit,
    *,
    margin: float = 0.05,
    trials: int | None = None,
    seed: int | None = None,
    mc_inputs: str | Iterable[Sequence[int]] = "worst",
) -> SimulationReport:
    """Analytic sweep over all inputs, optionally backed by Monte Carlo.

    ``mc_inputs`` selects which assignments get sampled when ``trials`` is
    set: "worst" (the analytic worst case), "all", or an explicit list.
    """
    n = circuit.formula.n_inputs
    analytic: dict[tuple[int, ...], AnalyticResult] = {}
    warnings: set[str] = set(circuit.warnings)
    for idx in range(1 << n):
        x = tuple((idx >> j) & 1 for j in range(n))
        res = simulate_analytic(circuit, x)
        analytic[x] = res
        warnings.update(res.warnings)

    worst_x = max(analytic, key=lambda x: analytic[x].logical_error)
    mc: dict[tuple[int, ...], MonteCarloResult] = {}
    if trials is not None:
        if seed is None:
            raise ValueError("a seed is mandatory for Monte Carlo runs")
        if mc_inputs == "worst":
            selected = [worst_x]
        elif mc_inputs == "all":
            selected = sorted(analytic)
        else:
            selected = [tuple(int(b) & 1 for b in x) for x in mc_inputs]
        for x in selected:
            mc[x] = simulate_monte_carlo(circuit, x, trials, seed)

    rows = tuple(
        InputRow(
            x=x,
            analytic_error=analytic[x].logical_error,
            empirical_error=mc[x].empirical_error if x in mc else None,
            ci_halfwidth=mc[x].ci_halfwidth if x in mc else None,
        )
        for x in sorted(analytic)
    )
    delta = analytic[worst_x].logical_error
    report = SimulationReport(
        rows=rows,
        delta=delta,
        worst_input=worst_x,
        margin=margin,
        reliable=False,
        warnings=tuple(sorted(warnings)),
    )
    return SimulationReport(
        rows=rows,
        delta=delta,
        worst_input=worst_x,
        margin=margin,
        reliable=certify(report, margin),
        warnings=tuple(sorted(warnings)),
    )
