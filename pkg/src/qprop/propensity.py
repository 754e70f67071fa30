"""
Propensity curves over log-price and their transaction dynamics.

A curve is a probability density over x = ln(price): either a Gaussian or
the degenerate point mass of a take-it-or-leave-it price. A Gaussian curve
feels the linear entropic force

    F(x) = gamma * P'(x) / P(x) = -k (x - mu),   k = gamma / sigma^2,

and maps onto a harmonic oscillator whose ground state reproduces it, with
mass m = hbar / (2 omega sigma^2) and energy scale gamma = hbar omega / 2.
Moving a mental price state from x1 to x2 against the force costs
gamma * ln(P(x2)/P(x1)).

The product of a buyer and a seller curve is again Gaussian up to a scale
factor (the overlap mass), and its force is the sum of the two parties'
forces. When one side fixes its price the joint collapses to a point mass
and the transaction force is the flexible party's alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

DENSITY_FLOOR = 1e-300
_LOG_ROOT_2PI = 0.5 * math.log(2.0 * math.pi)


class PointMassError(ValueError):
    """An operation that needs a finite density met a point-mass curve."""


@dataclass(frozen=True)
class GaussianCurve:
    """Normal propensity over log-price."""

    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma)):
            raise ValueError("curve parameters must be finite")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")


@dataclass(frozen=True)
class PointMassCurve:
    """Infinitely thin propensity pinned at one log-price."""

    point: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.point):
            raise ValueError("point must be finite")


PropensityCurve = Union[GaussianCurve, PointMassCurve]


class Provenance(Enum):
    """Where an energy scale gamma came from."""

    OSCILLATOR = "oscillator"
    DIRECT = "direct"


@dataclass(frozen=True)
class EntropicScale:
    """Energy scale gamma multiplying P'(x)/P(x)."""

    gamma: float
    provenance: Provenance = Provenance.DIRECT

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError("gamma must be positive and finite")

    @classmethod
    def direct(cls, gamma: float) -> "EntropicScale":
        return cls(float(gamma), Provenance.DIRECT)

    @classmethod
    def from_oscillator(cls, omega: float = 1.0, hbar: float = 1.0) -> "EntropicScale":
        """The oscillator scale gamma = hbar * omega / 2."""
        if omega <= 0 or hbar <= 0:
            raise ValueError("omega and hbar must be positive")
        return cls(0.5 * hbar * omega, Provenance.OSCILLATOR)


@dataclass(frozen=True)
class OscillatorParams:
    """Oscillator (hbar, omega, sigma) with its derived spring quantities."""

    omega: float
    sigma: float
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("omega", "sigma", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite")

    @property
    def mass(self) -> float:
        return self.hbar / (2.0 * self.omega * self.sigma ** 2)

    @property
    def gamma(self) -> float:
        return 0.5 * self.hbar * self.omega

    @property
    def force_constant(self) -> float:
        return self.gamma / self.sigma ** 2

    def scale(self) -> EntropicScale:
        return EntropicScale(self.gamma, Provenance.OSCILLATOR)


@dataclass(frozen=True)
class JointPropensity:
    """Two parties' curves with their normalized product and overlap mass."""

    buyer: PropensityCurve
    seller: PropensityCurve
    joint: PropensityCurve
    scale: float


@dataclass(frozen=True)
class ReversalEnergy:
    """Energy of a preference reversal, the factor-3 propensity change."""

    exact: float
    base_energy: float

    @property
    def relative_gap(self) -> float:
        return self.exact / self.base_energy - 1.0


def density(curve: PropensityCurve, x):
    """Density of ``curve`` at log-price ``x`` (scalar or array)."""
    if isinstance(curve, PointMassCurve):
        raise PointMassError("a point mass has no finite density")
    z = (np.asarray(x, dtype=np.float64) - curve.mu) / curve.sigma
    out = np.exp(-0.5 * z * z) / (curve.sigma * math.sqrt(2.0 * math.pi))
    return out if out.ndim else float(out)


def log_density(curve: PropensityCurve, x):
    """Natural log of ``density``; stays finite far into the tails."""
    if isinstance(curve, PointMassCurve):
        raise PointMassError("a point mass has no finite density")
    z = (np.asarray(x, dtype=np.float64) - curve.mu) / curve.sigma
    out = -0.5 * z * z - math.log(curve.sigma) - _LOG_ROOT_2PI
    return out if out.ndim else float(out)


def _require_positive_density(curve: GaussianCurve, x) -> None:
    d = np.asarray(density(curve, x))
    if np.any(d < DENSITY_FLOOR):
        raise ValueError(
            "density underflow: the point lies too far from the curve to carry meaning")


def entropic_force(curve: PropensityCurve, x, scale: EntropicScale):
    """gamma * P'(x)/P(x); for a Gaussian curve exactly -k (x - mu).

    Raises PointMassError for fixed-price curves (see ``fixed_price_joint``)
    and ValueError where the density has underflowed to zero.
    """
    if isinstance(curve, PointMassCurve):
        raise PointMassError(
            "a point mass exerts no entropic force; use fixed_price_joint")
    _require_positive_density(curve, x)
    k = scale.gamma / curve.sigma ** 2
    out = -k * (np.asarray(x, dtype=np.float64) - curve.mu)
    return out if out.ndim else float(out)


def oscillator_from_curve(curve: GaussianCurve, omega: float = 1.0,
                          hbar: float = 1.0) -> OscillatorParams:
    """The oscillator whose ground state reproduces ``curve``."""
    if isinstance(curve, PointMassCurve):
        raise PointMassError("only a Gaussian curve defines an oscillator")
    return OscillatorParams(omega=float(omega), sigma=curve.sigma, hbar=float(hbar))


def ground_state_density(params: OscillatorParams, mu: float, x):
    """|psi_0|^2 of the oscillator: a Gaussian with sigma^2 = hbar/(2 m omega)."""
    sigma = math.sqrt(params.hbar / (2.0 * params.mass * params.omega))
    return density(GaussianCurve(float(mu), sigma), x)


def joint_propensity(buyer: GaussianCurve, seller: GaussianCurve) -> JointPropensity:
    """Product of two Gaussian propensities: a scaled normal curve.

    ``joint`` is the normalized product, with precision the sum of the input
    precisions and mean their precision-weighted average; ``scale`` is the
    raw product's mass, the Gaussian overlap of the two curves.
    """
    if isinstance(buyer, PointMassCurve) or isinstance(seller, PointMassCurve):
        raise PointMassError("fixed prices go through fixed_price_joint")
    precision = 1.0 / buyer.sigma ** 2 + 1.0 / seller.sigma ** 2
    var = 1.0 / precision
    mu = var * (buyer.mu / buyer.sigma ** 2 + seller.mu / seller.sigma ** 2)
    overlap_sigma = math.sqrt(buyer.sigma ** 2 + seller.sigma ** 2)
    scale = density(GaussianCurve(seller.mu, overlap_sigma), buyer.mu)
    return JointPropensity(buyer, seller, GaussianCurve(mu, math.sqrt(var)), scale)


def fixed_price_joint(counterparty: GaussianCurve, price: float,
                      fixed_side: str = "seller") -> JointPropensity:
    """Joint propensity when one party fixes the price and will not move.

    The joint curve is the point mass at the fixed log-price and the overlap
    mass is the counterparty's density there. The fixed party defaults to
    the seller slot, the usual price-setting side.
    """
    if isinstance(counterparty, PointMassCurve):
        raise PointMassError("both sides fixed leaves nothing to negotiate")
    if fixed_side not in ("buyer", "seller"):
        raise ValueError("fixed_side must be 'buyer' or 'seller'")
    if not math.isfinite(price):
        raise ValueError("price must be finite")
    point = PointMassCurve(float(price))
    buyer, seller = ((point, counterparty) if fixed_side == "buyer"
                     else (counterparty, point))
    return JointPropensity(buyer, seller, point, float(density(counterparty, price)))


def transaction_force(joint: JointPropensity, x, scale: EntropicScale):
    """Entropic force driving the transaction price.

    For two Gaussians this is the joint curve's force, the sum of the buyer
    and seller forces; with a fixed price only the flexible party pulls.
    """
    if isinstance(joint.joint, GaussianCurve):
        return entropic_force(joint.joint, x, scale)
    flexible = joint.buyer if isinstance(joint.buyer, GaussianCurve) else joint.seller
    return entropic_force(flexible, x, scale)


def work(curve: GaussianCurve, x1: float, x2: float, scale: EntropicScale) -> float:
    """Energy to move a mental price state from x1 to x2.

    Equal to gamma * ln(P(x2)/P(x1)): path independent, positive toward the
    mean, and dependent only on the density ratio between the endpoints.
    """
    if isinstance(curve, PointMassCurve):
        raise PointMassError("work along a point mass is undefined")
    _require_positive_density(curve, [x1, x2])
    return scale.gamma * (log_density(curve, x2) - log_density(curve, x1))


def reversal_energy(omega: float = 1.0, hbar: float = 1.0) -> ReversalEnergy:
    """Energy to flip a preference between two options.

    A reversal needs a factor-3 propensity change, so the exact cost is
    (hbar omega / 2) ln 3. Because ln 3 is close to ln e = 1 this is nearly
    the oscillator base energy hbar omega / 2, reported as ``base_energy``;
    the relative gap is ln 3 - 1, about 9.9 percent.
    """
    if omega <= 0 or hbar <= 0:
        raise ValueError("omega and hbar must be positive")
    base = 0.5 * hbar * omega
    return ReversalEnergy(base * math.log(3.0), base)


def sample_prices(joint: JointPropensity, n: int,
                  rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` independent log-prices from the joint curve."""
    if n < 1:
        raise ValueError("need at least one draw")
    curve = joint.joint
    if isinstance(curve, PointMassCurve):
        return np.full(n, curve.point)
    return rng.normal(curve.mu, curve.sigma, size=n)
