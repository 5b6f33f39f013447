"""Problem descriptions: boundary data in transform space, source terms,
the full boundary-value problem, and evaluation grids.

Everything round-trips through plain-dict JSON so the CLI and the solver
agree on one wire format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

import numpy as np

from .errors import DomainError
from .fracops import HilferOrder, RieszFellerSymbol

KINDS = ("laplace", "poisson", "helmholtz", "wave", "wave_k")
VARIANTS = ("riesz_feller", "quantum")


@dataclass(frozen=True)
class BoundaryTransform:
    """Boundary datum given by its Fourier transform kappa -> f_hat(kappa).

    Presets:
      zero      f_hat = 0
      delta     f_hat = 1            (point mass at the origin)
      gaussian  f_hat = exp(-w^2 kappa^2 / 2), unit-mass spatial profile
      custom    caller-supplied callable
    """

    preset: str = "zero"
    width: float = 1.0
    fn: Optional[Callable[[float], complex]] = None

    def __post_init__(self):
        if self.preset not in ("zero", "delta", "gaussian", "custom"):
            raise DomainError("unknown boundary preset %r" % (self.preset,))
        if self.preset == "gaussian" and self.width <= 0:
            raise DomainError("gaussian width must be positive")
        if self.preset == "custom" and self.fn is None:
            raise DomainError("custom boundary needs a callable")

    def hat(self, kappa: float) -> complex:
        if self.preset == "zero":
            return 0.0 + 0.0j
        if self.preset == "delta":
            return 1.0 + 0.0j
        if self.preset == "gaussian":
            return complex(math.exp(-0.5 * (self.width * kappa) ** 2))
        return complex(self.fn(kappa))

    def spatial(self, x: float) -> float:
        """Physical-space profile, for presets with a usable closed form."""
        if self.preset == "zero":
            return 0.0
        if self.preset == "gaussian":
            w = self.width
            return math.exp(-0.5 * (x / w) ** 2) / (w * math.sqrt(2.0 * math.pi))
        raise DomainError("no pointwise profile for preset %r" % (self.preset,))

    def is_zero(self) -> bool:
        return self.preset == "zero"

    def to_json(self) -> dict:
        d = {"preset": self.preset}
        if self.preset == "gaussian":
            d["width"] = self.width
        return d

    @classmethod
    def from_json(cls, d: Optional[dict]) -> "BoundaryTransform":
        if d is None:
            return cls("zero")
        if d.get("preset") == "custom":
            raise DomainError("custom boundaries cannot come from JSON")
        return cls(d.get("preset", "zero"), float(d.get("width", 1.0)))


@dataclass(frozen=True)
class SourceSpec:
    """Forcing term.  delta_delta is a point source switched on instantly;
    delta_power spreads the same point source over the profile
    y^(-beta)/Gamma(1-beta) in the evolution variable (beta < 1)."""

    preset: str = "zero"
    beta: float = 0.0
    fn: Optional[Callable[[float, float], complex]] = None

    def __post_init__(self):
        if self.preset not in ("zero", "delta_delta", "delta_power", "custom"):
            raise DomainError("unknown source preset %r" % (self.preset,))
        if self.preset == "delta_power" and not self.beta < 1.0:
            raise DomainError("delta_power needs beta < 1")
        if self.preset == "custom" and self.fn is None:
            raise DomainError("custom source needs a callable")

    def is_zero(self) -> bool:
        return self.preset == "zero"

    def to_json(self) -> dict:
        d = {"preset": self.preset}
        if self.preset == "delta_power":
            d["beta"] = self.beta
        return d

    @classmethod
    def from_json(cls, d: Optional[dict]) -> "SourceSpec":
        if d is None:
            return cls("zero")
        if d.get("preset") == "custom":
            raise DomainError("custom sources cannot come from JSON")
        return cls(d.get("preset", "zero"), float(d.get("beta", 0.0)))


@dataclass(frozen=True)
class ProblemSpec:
    """A boundary-value problem for the fractional field equation family.

    kind selects the equation (laplace / poisson / helmholtz / wave /
    wave_k), variant the sign convention of the pseudo-differential term.
    The wave kinds always use the quantum sign; their evolution variable is
    time rather than the half-space coordinate, but the algebra is shared.
    """

    kind: str
    variant: str
    sym: RieszFellerSymbol
    ord: HilferOrder
    k: float = 0.0
    f_hat: BoundaryTransform = field(default_factory=BoundaryTransform)
    g_hat: BoundaryTransform = field(default_factory=BoundaryTransform)
    source: SourceSpec = field(default_factory=SourceSpec)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError("unknown problem kind %r" % (self.kind,))
        if self.variant not in VARIANTS:
            raise DomainError("unknown variant %r" % (self.variant,))
        if not (1.0 < self.sym.alpha <= 2.0):
            raise DomainError(
                "alpha=%r outside the supported range 1 < alpha <= 2"
                % (self.sym.alpha,))
        if not (1.0 < self.ord.mu <= 2.0):
            raise DomainError(
                "mu=%r outside the supported range 1 < mu <= 2"
                % (self.ord.mu,))
        if self.k < 0:
            raise DomainError("k must be nonnegative")
        if self.k != 0.0 and self.kind not in ("helmholtz", "wave_k"):
            raise DomainError("k != 0 only enters helmholtz and wave_k problems")
        if self.kind == "laplace" and not self.source.is_zero():
            raise DomainError("laplace problems carry no source term")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "variant": self.variant,
            "alpha": self.sym.alpha,
            "theta": self.sym.theta,
            "mu": self.ord.mu,
            "nu": self.ord.nu,
            "k": self.k,
            "f": self.f_hat.to_json(),
            "g": self.g_hat.to_json(),
            "source": self.source.to_json(),
        }

    @classmethod
    def from_json(cls, d: dict) -> "ProblemSpec":
        for key in ("kind", "variant", "alpha", "mu", "nu"):
            if key not in d:
                raise DomainError("problem JSON missing key %r" % (key,))
        return cls(
            kind=d["kind"],
            variant=d["variant"],
            sym=RieszFellerSymbol(float(d["alpha"]), float(d.get("theta", 0.0))),
            ord=HilferOrder(float(d["mu"]), float(d["nu"])),
            k=float(d.get("k", 0.0)),
            f_hat=BoundaryTransform.from_json(d.get("f")),
            g_hat=BoundaryTransform.from_json(d.get("g")),
            source=SourceSpec.from_json(d.get("source")),
        )


@dataclass(frozen=True)
class GridSpec:
    """Cartesian product of x and y evaluation points.

    JSON accepts either {"x": {"start", "stop", "count"}, "y": {...}} for
    linspace axes or {"x_list": [...], "y_list": [...]} for explicit points.
    """

    x: Tuple[float, ...]
    y: Tuple[float, ...]

    def __post_init__(self):
        if not self.x or not self.y:
            raise DomainError("grid axes must be nonempty")
        if any(v <= 0 for v in self.y):
            raise DomainError("y grid points must be positive")

    @classmethod
    def from_json(cls, d: dict) -> "GridSpec":
        def axis(name: str) -> Tuple[float, ...]:
            if name + "_list" in d:
                return tuple(float(v) for v in d[name + "_list"])
            if name in d:
                a = d[name]
                for key in ("start", "stop", "count"):
                    if key not in a:
                        raise DomainError(
                            "grid axis %r missing key %r" % (name, key))
                return tuple(np.linspace(float(a["start"]), float(a["stop"]),
                                         int(a["count"])).tolist())
            raise DomainError("grid JSON needs %r or %r" % (name, name + "_list"))

        return cls(axis("x"), axis("y"))

    def to_json(self) -> dict:
        return {"x_list": list(self.x), "y_list": list(self.y)}

    def points(self) -> List[Tuple[float, float]]:
        return [(x, y) for y in self.y for x in self.x]
