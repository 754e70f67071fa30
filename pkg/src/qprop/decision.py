"""
Decision circuits built on the two-qubit engine.

Two yes/no questions are modelled as rotated measurement bases: question A
(the context question) lives on qubit 1, question B (the decision) on
qubit 2, and bit 0 means "yes". Asking A first runs
cnot(1) . (R_theta x R_phi) on |00>; asking B first flips the control wire
and substitutes the angles, cnot(2) . (R_phi x R_(theta-phi)). The wire
assignment is the same in both orders, so |00> is always "yes to A, yes to
B".

The closed forms used for cross-checks are the squared projections of the
equivalent one-qubit protocol: measure after the first rotation, feed the
collapsed state through the second. That sequential protocol and the
entangled circuit agree event by event for any unitary pair, because
unitarity forces |b12|^2 = |b21|^2 and |b11|^2 = |b22|^2; the intermediate
amplitudes differ, the final probabilities do not.
"""
from __future__ import annotations

import math
from dataclasses import astuple, dataclass
from enum import Enum

import numpy as np

from .qubits import (
    Gate,
    apply,
    cnot,
    initial_state,
    measure_collapse,
    probabilities,
    rotation_gate,
    tensor,
)

EVENT_LABELS = ("A+B+", "A+B-", "A-B+", "A-B-")
EVENT_SUM_TOL = 1e-12
CLOSED_FORM_TOL = 1e-12
REVERSAL_COST_RATIO = 3.0


class QuestionOrder(Enum):
    A_THEN_B = "ab"
    B_THEN_A = "ba"


@dataclass(frozen=True)
class DecisionScenario:
    """Angles of the two measurement bases plus the asking order."""

    theta: float
    phi: float
    order: QuestionOrder = QuestionOrder.A_THEN_B

    def __post_init__(self) -> None:
        if not (math.isfinite(self.theta) and math.isfinite(self.phi)):
            raise ValueError("angles must be finite")
        if not isinstance(self.order, QuestionOrder):
            raise ValueError("order must be a QuestionOrder")


@dataclass(frozen=True)
class EventDistribution:
    """Joint probabilities of the four answer pairs, "yes" outcomes first."""

    p_yes_yes: float
    p_yes_no: float
    p_no_yes: float
    p_no_no: float

    def __post_init__(self) -> None:
        probs = self.as_tuple()
        if any(p < -EVENT_SUM_TOL or p > 1.0 + EVENT_SUM_TOL for p in probs):
            raise ValueError("event probabilities must lie in [0, 1]")
        if abs(sum(probs) - 1.0) > EVENT_SUM_TOL:
            raise ValueError("event probabilities must sum to 1")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_yes_yes, self.p_yes_no, self.p_no_yes, self.p_no_no)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(EVENT_LABELS, self.as_tuple()))

    @property
    def a_yes(self) -> float:
        return self.p_yes_yes + self.p_yes_no

    @property
    def a_no(self) -> float:
        return self.p_no_yes + self.p_no_no

    @property
    def b_yes(self) -> float:
        return self.p_yes_yes + self.p_no_yes

    @property
    def b_no(self) -> float:
        return self.p_yes_no + self.p_no_no


@dataclass(frozen=True)
class Marginals:
    """Single-question yes/no probabilities under one asking order."""

    a_yes: float
    a_no: float
    b_yes: float
    b_no: float


@dataclass(frozen=True)
class OrderEffectSummary:
    """Marginals for both asking orders at one (theta, phi)."""

    theta: float
    phi: float
    a_then_b: Marginals
    b_then_a: Marginals


@dataclass(frozen=True)
class EquivalenceReport:
    """Event-by-event comparison of the sequential and entangled routes."""

    sequential: EventDistribution
    entangled: EventDistribution
    max_abs_deviation: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class ReversalDecision:
    """Outcome of the cost-ratio switching rule."""

    x1: float
    x2: float
    ratio: float
    switches: bool


def order_effect_circuit(scenario: DecisionScenario) -> EventDistribution:
    """Run the two-question circuit and read off the four answer events."""
    if scenario.order is QuestionOrder.A_THEN_B:
        rotations = tensor(rotation_gate(scenario.theta), rotation_gate(scenario.phi))
        entangler = cnot(control=1)
    else:
        rotations = tensor(rotation_gate(scenario.phi),
                           rotation_gate(scenario.theta - scenario.phi))
        entangler = cnot(control=2)
    final = apply(entangler, apply(rotations, initial_state(2)))
    probs = probabilities(final).probabilities
    return EventDistribution(*(float(p) for p in probs))


def _a_then_b_marginals(theta: float, phi: float) -> Marginals:
    ct, st = math.cos(theta) ** 2, math.sin(theta) ** 2
    cp, sp = math.cos(phi) ** 2, math.sin(phi) ** 2
    return Marginals(ct, st, ct * cp + st * sp, ct * sp + st * cp)


def _b_then_a_marginals(theta: float, phi: float) -> Marginals:
    cd, sd = math.cos(theta - phi) ** 2, math.sin(theta - phi) ** 2
    cp, sp = math.cos(phi) ** 2, math.sin(phi) ** 2
    return Marginals(cd * cp + sd * sp, cd * sp + sd * cp, cd, sd)


def order_effect_summary(theta: float, phi: float) -> OrderEffectSummary:
    """Yes/no marginals for both asking orders.

    Values come from the circuit and are cross-checked against the closed
    forms; a disagreement beyond 1e-12 means the engine is broken and raises
    RuntimeError.
    """
    closed = {
        QuestionOrder.A_THEN_B: _a_then_b_marginals(theta, phi),
        QuestionOrder.B_THEN_A: _b_then_a_marginals(theta, phi),
    }
    rows: dict[QuestionOrder, Marginals] = {}
    for order, expected in closed.items():
        dist = order_effect_circuit(DecisionScenario(theta, phi, order))
        got = Marginals(dist.a_yes, dist.a_no, dist.b_yes, dist.b_no)
        dev = max(abs(g - e) for g, e in zip(astuple(got), astuple(expected)))
        if dev > CLOSED_FORM_TOL:
            raise RuntimeError(
                f"circuit marginals deviate from closed forms by {dev:g}")
        rows[order] = got
    return OrderEffectSummary(theta, phi,
                              rows[QuestionOrder.A_THEN_B],
                              rows[QuestionOrder.B_THEN_A])


def unmeasured_b_yes(theta: float, phi: float) -> float:
    """P(B yes) when B is decided directly, without settling A first."""
    return math.cos(theta - phi) ** 2


def measured_b_yes(theta: float, phi: float) -> float:
    """P(B yes) after A has been answered and the state has collapsed."""
    return (math.cos(theta) ** 2 * math.cos(phi) ** 2
            + math.sin(theta) ** 2 * math.sin(phi) ** 2)


def interference_term(theta: float, phi: float) -> float:
    """Gap between deciding B with and without first settling A.

    Equals sin(2 theta) sin(2 phi) / 2; it vanishes whenever either angle is
    a multiple of pi/2, which is when the two questions are compatible.
    """
    return unmeasured_b_yes(theta, phi) - measured_b_yes(theta, phi)


def order_effect_magnitude(theta: float, phi: float) -> float:
    """P(B yes | A then B) minus P(B yes | B then A).

    The negated interference term: a nonzero value means the asking order
    changes the answer statistics.
    """
    return -interference_term(theta, phi)


def _coerce_gate(gate: Gate | np.ndarray) -> Gate:
    return gate if isinstance(gate, Gate) else Gate(np.asarray(gate, dtype=np.complex128))


def sequential_measurement(a_gate: Gate | np.ndarray,
                           b_gate: Gate | np.ndarray) -> EventDistribution:
    """Event probabilities of the one-qubit measure-then-continue protocol.

    Collapsing after gate A leaves a basis state, so every path probability
    is a product of squared entries: |a11 b11|^2, |a11 b21|^2, |a21 b12|^2
    and |a21 b22|^2.
    """
    a = _coerce_gate(a_gate)
    b = _coerce_gate(b_gate)
    if a.dim != 2 or b.dim != 2:
        raise ValueError("sequential measurement is defined for single-qubit gates")
    am, bm = a.entries, b.entries
    return EventDistribution(
        abs(am[0, 0] * bm[0, 0]) ** 2,
        abs(am[0, 0] * bm[1, 0]) ** 2,
        abs(am[1, 0] * bm[0, 1]) ** 2,
        abs(am[1, 0] * bm[1, 1]) ** 2,
    )


def sequential_measurement_sampled(a_gate: Gate | np.ndarray,
                                   b_gate: Gate | np.ndarray,
                                   trials: int,
                                   rng: np.random.Generator) -> EventDistribution:
    """Monte Carlo estimate of ``sequential_measurement``.

    Each trial genuinely collapses the qubit after gate A and feeds the
    collapsed state through gate B; use it to validate the analytic table.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    a = _coerce_gate(a_gate)
    b = _coerce_gate(b_gate)
    after_a = apply(a, initial_state(1))
    counts = [0, 0, 0, 0]
    for _ in range(trials):
        first, collapsed = measure_collapse(after_a, rng)
        second, _ = measure_collapse(apply(b, collapsed), rng)
        counts[2 * int(first) + int(second)] += 1
    return EventDistribution(*(c / trials for c in counts))


def entangled_circuit(a_gate: Gate | np.ndarray,
                      b_gate: Gate | np.ndarray) -> EventDistribution:
    """Event probabilities of the two-qubit circuit cnot(1) . (A x B) |00>."""
    a = _coerce_gate(a_gate)
    b = _coerce_gate(b_gate)
    final = apply(cnot(control=1), apply(tensor(a, b), initial_state(2)))
    probs = probabilities(final).probabilities
    return EventDistribution(*(float(p) for p in probs))


def equivalence_check(a_gate: Gate | np.ndarray,
                      b_gate: Gate | np.ndarray,
                      tol: float = 1e-12) -> EquivalenceReport:
    """Compare the sequential and entangled routes event by event.

    The two distributions agree for any unitary pair, so a failure at a sane
    tolerance indicates a bug rather than physics.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    seq = sequential_measurement(a_gate, b_gate)
    ent = entangled_circuit(a_gate, b_gate)
    dev = max(abs(x - y) for x, y in zip(seq.as_tuple(), ent.as_tuple()))
    return EquivalenceReport(seq, ent, dev, tol, dev <= tol)


def preference_reversal_switch(x1: float, x2: float) -> ReversalDecision:
    """Cost-ratio rule for switching to the initially less attractive option.

    ``x1`` is the cost of the less attractive option, ``x2`` the cost of the
    more attractive one; the switch happens only when x2/x1 strictly exceeds
    3, the ratio whose propensity change costs one quantum of energy.
    """
    if not (math.isfinite(x1) and math.isfinite(x2)):
        raise ValueError("costs must be finite")
    if x1 <= 0 or x2 <= 0:
        raise ValueError("costs must be positive")
    ratio = x2 / x1
    return ReversalDecision(float(x1), float(x2), ratio, ratio > REVERSAL_COST_RATIO)
