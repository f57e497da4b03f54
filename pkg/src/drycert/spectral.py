"""Numerical data of rank-n spectral cover bundles W with c1(W) = 0.

A spectral bundle is recorded as ``(n, eta, 2*lambda)``: the spectral surface
lies in ``|n sigma + pi^* eta|`` and ``c1(L) = n(1/2 + lambda) sigma
+ (1/2 - lambda) eta + (1/2 + n lambda) c1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import ParityError
from .picard import BaseSurface, DivClass, parse_rational

BPF_CERTIFIED = "certified"
BPF_FAILED = "failed"
BPF_UNVERIFIED = "unverified"


@dataclass(frozen=True)
class SpectralData:
    n: int
    eta: DivClass
    two_lambda: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("spectral rank n must be >= 1")

    @property
    def lam(self) -> Fraction:
        return Fraction(self.two_lambda, 2)

    def to_json(self) -> dict:
        return {"n": self.n, "eta": self.eta.to_json(), "two_lambda": self.two_lambda}

    @classmethod
    def from_json(cls, data: dict) -> SpectralData:
        return cls(int(data["n"]), DivClass.from_json(data["eta"]), int(parse_rational(data["two_lambda"])))


class LineClass(NamedTuple):
    sigma_coeff: Fraction
    eta_coeff: Fraction
    c1_coeff: Fraction
    is_integral: bool


class SpectralCheck(NamedTuple):
    bpf: str
    effective: bool
    parity: bool

    @property
    def valid(self) -> bool:
        return self.bpf == BPF_CERTIFIED and self.effective and self.parity

    def failure_codes(self) -> list[str]:
        codes = []
        if not self.parity:
            codes.append("parity")
        if self.bpf == BPF_FAILED:
            codes.append("bpf_failed")
        elif self.bpf == BPF_UNVERIFIED:
            codes.append("bpf_unverified")
        if not self.effective:
            codes.append("not_effective")
        return codes


def line_class_coeffs(s: SpectralData, base: BaseSurface) -> LineClass:
    lam = s.lam
    half = Fraction(1, 2)
    sigma_c, eta_c, c1_c = s.n * (half + lam), half - lam, half + s.n * lam
    integral = sigma_c.denominator == 1 and s.eta.is_integral() and (eta_c * s.eta + c1_c * base.c1).is_integral()
    return LineClass(sigma_c, eta_c, c1_c, integral)


def bpf_status(base: BaseSurface, eta: DivClass) -> str:
    """Three-valued base-point-freeness verdict for ``|eta|``.

    Toric bases (P2, F_g): bpf iff nef. Del Pezzo bases: nef is necessary, and
    Reider's criterion on ``A = eta + c1`` (``A^2 >= 5``, ``A.C >= 2`` on every
    Mori generator) is sufficient; anything between is reported unverified.
    """
    if eta.is_zero():
        return BPF_CERTIFIED
    if not base.is_nef(eta):
        return BPF_FAILED
    if base.kind in ("P2", "F") or base.picard_rank == 1:
        return BPF_CERTIFIED
    a = eta + base.c1
    if base.square(a) >= 5 and all(v >= 2 for v in base.pairings(a)):
        return BPF_CERTIFIED
    return BPF_UNVERIFIED


def spectral_check(s: SpectralData, base: BaseSurface) -> SpectralCheck:
    return SpectralCheck(
        bpf=bpf_status(base, s.eta),
        effective=base.is_effective(s.eta - s.n * base.c1),
        parity=base.parity_admissible(s.n, s.eta, s.two_lambda),
    )


def spectral_valid(s: SpectralData, base: BaseSurface) -> bool:
    return spectral_check(s, base).valid


def c2_W(s: SpectralData, base: BaseSurface) -> tuple[DivClass, Fraction]:
    """``c2(W) = eta*sigma + fiber`` with the fiber part returned as a rational."""
    if not base.parity_admissible(s.n, s.eta, s.two_lambda):
        raise ParityError(f"(n={s.n}, eta={s.eta}, 2lambda={s.two_lambda}) is not parity admissible on {base.name}")
    n, lam, eta, c1 = s.n, s.lam, s.eta, base.c1
    fiber = -Fraction(n**3 - n, 24) * base.square(c1)
    fiber += (lam * lam - Fraction(1, 4)) * Fraction(n, 2) * base.intersect(eta, eta - n * c1)
    return eta, fiber
