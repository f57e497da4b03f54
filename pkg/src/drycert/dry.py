"""DRY membership of ``c = phi*sigma + omega`` via its base-level characterization.

A class is DRY iff for some ``b > 0`` the class ``phi - N(1/2 + b) c1`` is ample
and ``omega / N > omega0(b) = R + (c1^2 / 4)(b + q / b)``.  The admissible b form
the open interval ``(0, b_max)`` and ``omega0`` decreases on ``(0, b_max]``
(because ``b_max <= sqrt(q)``), so the test reduces to the strict inequality
``omega > N * omega0(b_max)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotDryFeasible
from .picard import BaseSurface, DivClass, format_rational, parse_rational


@dataclass(frozen=True)
class CandidateClass:
    """``c = phi*sigma + omega`` with rank N."""

    phi: DivClass
    omega: int
    N: int

    def __post_init__(self):
        if not self.phi.is_integral():
            raise ValueError("phi must be an integral class")
        if isinstance(self.omega, bool) or int(self.omega) != self.omega:
            raise ValueError("omega must be an integer")
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 1:
            raise ValueError("rank N must be an integer >= 1")
        object.__setattr__(self, "omega", int(self.omega))
        object.__setattr__(self, "N", int(self.N))

    def to_json(self, base: BaseSurface | None = None) -> dict:
        data = {"phi": [int(c) for c in self.phi], "omega": self.omega, "N": self.N}
        if base is not None:
            data = {"base": base.name, **data}
        return data

    @classmethod
    def from_json(cls, data: dict) -> CandidateClass:
        phi = DivClass.from_json(data["phi"])
        return cls(phi, int(parse_rational(data["omega"])), int(parse_rational(data["N"])))


@dataclass(frozen=True)
class DryEvaluation:
    R: Fraction
    q: Fraction
    phi_shift_ample: bool
    b_max: Fraction | None
    omega0_at_bmax: Fraction | None
    threshold: Fraction | None
    dry: bool

    def to_json(self) -> dict:
        def fmt(v):
            return None if v is None else format_rational(v)

        return {
            "dry": self.dry,
            "phi_shift_ample": self.phi_shift_ample,
            "R": fmt(self.R),
            "q": fmt(self.q),
            "b_max": fmt(self.b_max),
            "omega0_at_bmax": fmt(self.omega0_at_bmax),
            "threshold": fmt(self.threshold),
        }

    @classmethod
    def from_json(cls, data: dict) -> DryEvaluation:
        def read(key):
            v = data[key]
            return None if v is None else parse_rational(v)

        return cls(
            R=read("R"),
            q=read("q"),
            phi_shift_ample=bool(data["phi_shift_ample"]),
            b_max=read("b_max"),
            omega0_at_bmax=read("omega0_at_bmax"),
            threshold=read("threshold"),
            dry=bool(data["dry"]),
        )


def phi_shift(phi: DivClass, N: int, base: BaseSurface) -> DivClass:
    """phi - (N/2) c1."""
    return phi - Fraction(N, 2) * base.c1


def r_value(phi: DivClass, N: int, base: BaseSurface) -> Fraction:
    c1 = base.c1
    return base.intersect(phi, c1) / (2 * N) + base.square(c1) / 6 + Fraction(1, 2)


def q_value(phi: DivClass, N: int, base: BaseSurface) -> Fraction:
    return base.square(phi_shift(phi, N, base)) / (N * N * base.square(base.c1))


def b_max(phi: DivClass, N: int, base: BaseSurface) -> Fraction:
    """Supremum of the b with ``phi - N(1/2 + b) c1`` ample (ray shooting along -c1)."""
    shift = phi_shift(phi, N, base)
    if not base.is_ample(shift):
        raise NotDryFeasible(f"phi - (N/2) c1 = {shift} is not ample on {base.name}")
    return min(a / (N * b) for a, b in zip(base.pairings(shift), base.pairings(base.c1)))


def omega0(phi: DivClass, N: int, base: BaseSurface, b) -> Fraction:
    b = Fraction(b)
    if b <= 0:
        raise ValueError("b must be positive")
    q = q_value(phi, N, base)
    return r_value(phi, N, base) + base.square(base.c1) / 4 * (b + q / b)


def dry_threshold(phi: DivClass, N: int, base: BaseSurface) -> Fraction:
    """``N * omega0(b_max)``; the candidate is DRY iff omega exceeds it strictly."""
    return N * omega0(phi, N, base, b_max(phi, N, base))


def evaluate(c: CandidateClass, base: BaseSurface) -> DryEvaluation:
    """Full DRY report; emitted whether or not the class is DRY."""
    R = r_value(c.phi, c.N, base)
    q = q_value(c.phi, c.N, base)
    ample = base.is_ample(phi_shift(c.phi, c.N, base))
    if not ample:
        return DryEvaluation(R, q, False, None, None, None, False)
    bm = b_max(c.phi, c.N, base)
    w0 = omega0(c.phi, c.N, base, bm)
    threshold = c.N * w0
    return DryEvaluation(R, q, True, bm, w0, threshold, c.omega > threshold)


def is_dry(c: CandidateClass, base: BaseSurface) -> bool:
    return evaluate(c, base).dry


def corollary_lower_bound_holds(c: CandidateClass, base: BaseSurface) -> bool:
    """Necessary bound ``omega/N - R > (c1^2/2) sqrt(q)``, decided by squaring.

    ``(c1^2/2) sqrt(q) = sqrt(c1^2 * (phi - N/2 c1)^2) / (2N)``; both radicands
    are rational so the comparison is exact.
    """
    shift = phi_shift(c.phi, c.N, base)
    if not base.is_ample(shift):
        raise NotDryFeasible(f"phi - (N/2) c1 = {shift} is not ample on {base.name}")
    lhs = Fraction(c.omega, c.N) - r_value(c.phi, c.N, base)
    radicand = base.square(base.c1) * base.square(shift) / (4 * c.N * c.N)
    if lhs <= 0:
        return False
    return lhs * lhs > radicand
