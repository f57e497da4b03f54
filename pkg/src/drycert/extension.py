"""Extension bundles ``0 -> pi^*E(-nD) -> V -> W(rD) -> 0`` with ``D = pi^* alpha``.

Two twists are supported. ``standard`` twists the sub and quotient by
``-nD`` and ``rD``. ``balanced`` (only for ``n == r``) twists by ``-D`` and
``D``. The relative twist between sub and quotient (``m = n + r`` resp. 2)
is what enters the Euler characteristic of ``pi^*F (x) W^*``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import ParityError, PolarizationError
from .picard import BaseSurface, DivClass, parse_rational
from .spectral import SpectralData, c2_W

STANDARD = "standard"
BALANCED = "balanced"
TWISTS = (STANDARD, BALANCED)


@dataclass(frozen=True)
class ExtensionConfig:
    n: int
    r: int
    two_lambda: int
    alpha: DivClass | None = None
    twist: str = STANDARD

    def __post_init__(self):
        if self.twist not in TWISTS:
            raise ValueError(f"twist must be one of {TWISTS}, got {self.twist!r}")
        if self.n < 1 or self.r < 1:
            raise ValueError("ranks n and r must be >= 1")

    @property
    def m(self) -> int:
        return self.n + self.r

    @property
    def label(self) -> str:
        return f"{self.twist}(n={self.n},r={self.r})"

    def with_alpha(self, alpha: DivClass) -> ExtensionConfig:
        return replace(self, alpha=alpha)

    def structure_ok(self) -> bool:
        """Rank relation for the twist (r >= n standard, r == n balanced)."""
        return self.r == self.n if self.twist == BALANCED else self.r >= self.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "two_lambda": self.two_lambda,
            "alpha": None if self.alpha is None else self.alpha.to_json(),
            "twist": self.twist,
        }

    @classmethod
    def from_json(cls, data: dict) -> ExtensionConfig:
        alpha = data.get("alpha")
        return cls(
            n=int(data["n"]),
            r=int(data["r"]),
            two_lambda=int(parse_rational(data["two_lambda"])),
            alpha=None if alpha is None else DivClass.from_json(alpha),
            twist=data.get("twist", STANDARD),
        )


@dataclass(frozen=True)
class PolarizationData:
    """Polarization data: ``H_B`` on B and ``H0 = x sigma + pi^* rho`` on X.

    ``h`` is the auxiliary ample class with ``h.alpha > 0`` and ``t`` the scaling
    step used to build ``rho``; both are kept for auditing only.
    """

    H_B: DivClass
    x: int
    rho: DivClass
    h: DivClass
    t: int

    def to_json(self) -> dict:
        return {"H_B": self.H_B.to_json(), "x": self.x, "rho": self.rho.to_json(), "h": self.h.to_json(), "t": self.t}

    @classmethod
    def from_json(cls, data: dict) -> PolarizationData:
        return cls(
            H_B=DivClass.from_json(data["H_B"]),
            x=int(data["x"]),
            rho=DivClass.from_json(data["rho"]),
            h=DivClass.from_json(data["h"]),
            t=int(data["t"]),
        )


def twist_gap(cfg: ExtensionConfig) -> int:
    return cfg.m if cfg.twist == STANDARD else 2


def _alpha_pairing_coeff(cfg: ExtensionConfig) -> Fraction:
    # coefficient of alpha^2 subtracted in c2(V)
    return Fraction(cfg.r * cfg.n * cfg.m, 2) if cfg.twist == STANDARD else Fraction(1)


def _require_parity(cfg: ExtensionConfig, eta: DivClass, base: BaseSurface) -> None:
    if not base.parity_admissible(cfg.n, eta, cfg.two_lambda):
        raise ParityError(f"(n={cfg.n}, eta={eta}, 2lambda={cfg.two_lambda}) is not parity admissible on {base.name}")


def index_IX(cfg: ExtensionConfig, eta: DivClass, base: BaseSurface) -> Fraction:
    """Euler characteristic ``r (-lambda eta + tau alpha).(eta - n c1)``."""
    _require_parity(cfg, eta, base)
    lam = Fraction(cfg.two_lambda, 2)
    return cfg.r * base.intersect(-lam * eta + twist_gap(cfg) * cfg.alpha, eta - cfg.n * base.c1)


def nonsplit_value(cfg: ExtensionConfig, eta: DivClass, base: BaseSurface) -> Fraction:
    _require_parity(cfg, eta, base)
    lam = Fraction(cfg.two_lambda, 2)
    return base.intersect(lam * eta - twist_gap(cfg) * cfg.alpha, eta - cfg.n * base.c1)


def nonsplit_ok(cfg: ExtensionConfig, eta: DivClass, base: BaseSurface) -> bool:
    return nonsplit_value(cfg, eta, base) > 0


def check_polarization(p: PolarizationData, alpha: DivClass, base: BaseSurface) -> bool:
    c1 = base.c1
    return (
        p.x > 0
        and base.is_ample(p.H_B)
        and base.intersect(alpha, p.H_B) == 0
        and base.is_ample(p.rho - p.x * c1)
        and base.intersect(2 * p.rho - p.x * c1, alpha) > 0
    )


def _least_positive_scale(base: BaseSurface, fixed: DivClass, step: DivClass) -> int:
    """Least integer ``T >= 1`` with ``fixed + T*step`` ample; step must be ample."""
    t = 1
    for g in base.mori_gens:
        a, s = base.intersect(fixed, g), base.intersect(step, g)
        # a + T s > 0  <=>  T > -a / s
        t = max(t, (-a // s) + 1)
    return int(t)


def build_polarization(alpha: DivClass, H_B: DivClass, base: BaseSurface) -> PolarizationData:
    """Deterministic ``(H_B, x, rho)`` with ``(2 rho - x c1).alpha > 0``.

    ``h = -alpha + T H_B`` with T minimal making h ample, so
    ``h.alpha = -alpha^2 > 0``; then ``t`` minimal with ``t h - c1`` ample and
    ``x = 2``, ``rho = t h + c1``, giving ``2 rho - x c1 = 2 t h``.
    """
    if alpha.is_zero():
        raise PolarizationError("alpha must be nonzero")
    if base.intersect(alpha, H_B) != 0:
        raise PolarizationError("alpha is not orthogonal to H_B")
    if not base.is_ample(H_B):
        raise PolarizationError("H_B is not ample")
    if base.square(alpha) >= 0:
        raise PolarizationError("alpha^2 >= 0: h.alpha > 0 cannot be arranged this way")
    T = _least_positive_scale(base, -alpha, H_B)
    h = -alpha + T * H_B
    c1 = base.c1
    t = _least_positive_scale(base, -c1, h)
    return PolarizationData(H_B=H_B, x=2, rho=t * h + c1, h=h, t=t)


def required_c2E(cfg: ExtensionConfig, s: SpectralData, omega_target: int, base: BaseSurface) -> Fraction:
    """c2(E) making the fiber part of c2(V) equal ``omega_target``."""
    _check_consistent(cfg, s)
    _, c2w = c2_W(s, base)
    return omega_target - c2w + _alpha_pairing_coeff(cfg) * base.square(cfg.alpha)


def c2_V(cfg: ExtensionConfig, s: SpectralData, c2E, base: BaseSurface) -> tuple[DivClass, Fraction]:
    _check_consistent(cfg, s)
    eta, c2w = c2_W(s, base)
    return eta, c2w + Fraction(c2E) - _alpha_pairing_coeff(cfg) * base.square(cfg.alpha)


def omega_min(cfg: ExtensionConfig, base: BaseSurface) -> int:
    """Least fiber class realizable by ``cfg`` given ``c2(E) >= r + 2``.

    Only defined for ``2 lambda = +-1``, where c2(W) has no eta-dependent part.
    """
    if abs(cfg.two_lambda) != 1:
        raise ValueError("omega_min needs 2*lambda = +-1")
    n = cfg.n
    value = -Fraction(n**3 - n, 24) * base.square(base.c1) + (cfg.r + 2) - _alpha_pairing_coeff(cfg) * base.square(cfg.alpha)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral omega_min {value} for {cfg.label} on {base.name}")
    return int(value)


def _check_consistent(cfg: ExtensionConfig, s: SpectralData) -> None:
    if cfg.n != s.n or cfg.two_lambda != s.two_lambda:
        raise ValueError("extension config and spectral data disagree on (n, 2lambda)")
    if cfg.alpha is None:
        raise ValueError("extension config has no alpha")
