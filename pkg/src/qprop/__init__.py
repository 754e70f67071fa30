"""Quantum propensity toolkit.

Two-qubit decision circuits for question-order and interference effects,
and entropic propensity curves over log-price for transaction dynamics.
"""

__version__ = "0.1.0"

from .decision import (
    DecisionScenario,
    EquivalenceReport,
    EventDistribution,
    Marginals,
    OrderEffectSummary,
    QuestionOrder,
    ReversalDecision,
    entangled_circuit,
    equivalence_check,
    interference_term,
    order_effect_circuit,
    order_effect_magnitude,
    order_effect_summary,
    preference_reversal_switch,
    sequential_measurement,
    sequential_measurement_sampled,
)
from .propensity import (
    EntropicScale,
    GaussianCurve,
    JointPropensity,
    OscillatorParams,
    PointMassCurve,
    PointMassError,
    Provenance,
    ReversalEnergy,
    density,
    entropic_force,
    fixed_price_joint,
    ground_state_density,
    joint_propensity,
    log_density,
    oscillator_from_curve,
    reversal_energy,
    sample_prices,
    transaction_force,
    work,
)
from .qubits import (
    Gate,
    OutcomeDistribution,
    StateVector,
    apply,
    basis_labels,
    cnot,
    hadamard,
    initial_state,
    is_unitary,
    measure_collapse,
    probabilities,
    random_unitary_2x2,
    rotation_gate,
    tensor,
)

__all__ = [
    "__version__",
    "DecisionScenario",
    "EquivalenceReport",
    "EventDistribution",
    "Marginals",
    "OrderEffectSummary",
    "QuestionOrder",
    "ReversalDecision",
    "entangled_circuit",
    "equivalence_check",
    "interference_term",
    "order_effect_circuit",
    "order_effect_magnitude",
    "order_effect_summary",
    "preference_reversal_switch",
    "sequential_measurement",
    "sequential_measurement_sampled",
    "EntropicScale",
    "GaussianCurve",
    "JointPropensity",
    "OscillatorParams",
    "PointMassCurve",
    "PointMassError",
    "Provenance",
    "ReversalEnergy",
    "density",
    "entropic_force",
    "fixed_price_joint",
    "ground_state_density",
    "joint_propensity",
    "log_density",
    "oscillator_from_curve",
    "reversal_energy",
    "sample_prices",
    "transaction_force",
    "work",
    "Gate",
    "OutcomeDistribution",
    "StateVector",
    "apply",
    "basis_labels",
    "cnot",
    "hadamard",
    "initial_state",
    "is_unitary",
    "measure_collapse",
    "probabilities",
    "random_unitary_2x2",
    "rotation_gate",
    "tensor",
]
