"""Picard lattices of the base surfaces P2, F_g (g = 0, 1) and dP_k (k <= 8).

Bases are fixed:

* ``F_g``: ``(C0, F)`` with ``C0^2 = -g``, ``C0.F = 1``, ``F^2 = 0``;
  the anticanonical class is ``2 C0 + (g + 2) F``.
* ``dP_k``: ``(l, E1, ..., Ek)`` with ``l^2 = 1``, ``Ei.Ej = -delta_ij``;
  the anticanonical class is ``3 l - sum Ei``.
* ``P2`` (same lattice as ``dP0``): ``(l,)``.

Mori and effective cones of all these surfaces are rational polyhedral and
generated by the same finite list of curve classes, so ampleness is strict
positivity on that list (Kleiman) and effectiveness is exact cone membership.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .cone import in_cone, inertia
from .errors import DimensionMismatch

Rational = Fraction | int


def parse_rational(value) -> Fraction:
    """Parse an int, a Fraction or a string such as ``"-1/2"``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(value: Rational) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class DivClass:
    """A divisor class given by its coefficients in the standard basis."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(parse_rational(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        # integer numerators over a common denominator, for fast pairings
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        object.__setattr__(self, "_scaled", (tuple(int(c * den) for c in coeffs), den))

    @classmethod
    def zero(cls, rank: int) -> DivClass:
        return cls((0,) * rank)

    @classmethod
    def basis(cls, rank: int, i: int) -> DivClass:
        return cls(tuple(int(j == i) for j in range(rank)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def _check(self, other: DivClass):
        if not isinstance(other, DivClass):
            return NotImplemented
        if len(other) != len(self):
            raise DimensionMismatch(f"classes of length {len(self)} and {len(other)}")
        return other

    def __add__(self, other: DivClass) -> DivClass:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: DivClass) -> DivClass:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return DivClass(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> DivClass:
        return DivClass(-a for a in self.coeffs)

    def __mul__(self, scalar: Rational) -> DivClass:
        if isinstance(scalar, DivClass):
            return NotImplemented
        s = Fraction(scalar)
        return DivClass(s * a for a in self.coeffs)

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Iterable) -> DivClass:
        return cls(tuple(parse_rational(v) for v in data))

    def int_tuple(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError(f"{self} is not integral")
        return tuple(int(c) for c in self.coeffs)

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(c) for c in self.coeffs) + ")"


@lru_cache(maxsize=None)
def neg_one_curves(k: int) -> tuple[DivClass, ...]:
    """All classes ``d l - sum m_i E_i`` on dP_k with ``D^2 = -1`` and ``D.c1 = 1``.

    Exhaustive: Cauchy-Schwarz on ``sum m_i = 3d - 1`` and
    ``sum m_i^2 = d^2 + 1`` gives ``(3d - 1)^2 <= k (d^2 + 1)``, which bounds d,
    and each ``|m_i| <= sqrt(d^2 + 1)``.
    """
    if not 0 <= k <= 8:
        raise ValueError(f"del Pezzo index k must be in 0..8, got {k}")
    found = []
    if k == 0:
        return ()
    # (9-k) d^2 - 6 d + (1-k) <= 0; roots (3 +- sqrt(k(10-k))) / (9-k)
    root = math.isqrt(k * (10 - k)) + 1
    lo = (3 - root) // (9 - k) - 1
    hi = (3 + root) // (9 - k) + 1
    for d in range(lo, hi + 1):
        if (3 * d - 1) ** 2 > k * (d * d + 1):
            continue
        bound = math.isqrt(d * d + 1)

        def extend(prefix: list[int], rest_sum: int, rest_sq: int) -> None:
            left = k - len(prefix)
            if left == 0:
                if rest_sum == 0 and rest_sq == 0:
                    found.append(DivClass((d, *(-m for m in prefix))))
                return
            if rest_sq < 0 or rest_sum * rest_sum > left * rest_sq:
                return
            for m in range(-bound, bound + 1):
                prefix.append(m)
                extend(prefix, rest_sum - m, rest_sq - m * m)
                prefix.pop()

        extend([], 3 * d - 1, d * d + 1)
    return tuple(sorted(found))


_BASE_RE = re.compile(r"^(?:(P2)|F([0-9]+)|dP([0-9]+))$")


@dataclass(frozen=True)
class BaseSurface:
    """Picard lattice data of a base surface with ample anticanonical class."""

    kind: str  # "P2", "F" or "dP"
    param: int = 0  # g for F_g, k for dP_k
    gram: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    mori_gens: tuple[DivClass, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind == "P2" or (self.kind == "dP" and self.param == 0):
            gram = ((1,),)
            gens = (DivClass((1,)),)
        elif self.kind == "F":
            g = self.param
            if g not in (0, 1):
                raise ValueError(f"F_{g} has non-ample anticanonical class; only F0, F1 are supported")
            gram = ((-g, 1), (1, 0))
            gens = (DivClass((1, 0)), DivClass((0, 1)))
        elif self.kind == "dP":
            k = self.param
            if not 0 <= k <= 8:
                raise ValueError(f"dP_{k} is not a del Pezzo surface; k must be in 0..8")
            gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(k + 1)) for i in range(k + 1))
            if k == 1:
                gens = (DivClass((0, 1)), DivClass((1, -1)))
            else:
                gens = neg_one_curves(k)
        else:
            raise ValueError(f"unknown surface kind {self.kind!r}")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "mori_gens", gens)

    @classmethod
    def parse(cls, spec: str) -> BaseSurface:
        """Read ``"P2"``, ``"F0"``, ``"F1"`` or ``"dP0"`` .. ``"dP8"``."""
        match = _BASE_RE.match(spec.strip()) if isinstance(spec, str) else None
        if match is None:
            raise ValueError(f"malformed base surface {spec!r}; expected P2, F0, F1 or dP0..dP8")
        if match.group(1):
            return cls("P2")
        if match.group(2) is not None:
            return cls("F", int(match.group(2)))
        return cls("dP", int(match.group(3)))

    @property
    def name(self) -> str:
        return "P2" if self.kind == "P2" else f"{self.kind}{self.param}"

    def __str__(self) -> str:
        return self.name

    @property
    def picard_rank(self) -> int:
        return len(self.gram)

    @property
    def eff_gens(self) -> tuple[DivClass, ...]:
        # the effective cone is generated by the same curves as the Mori cone
        return self.mori_gens

    @property
    def basis_names(self) -> tuple[str, ...]:
        if self.kind == "F":
            return ("C0", "F")
        return ("l",) + tuple(f"E{i}" for i in range(1, self.picard_rank))

    def divisor(self, coeffs: Iterable) -> DivClass:
        d = DivClass(tuple(coeffs))
        if len(d) != self.picard_rank:
            raise DimensionMismatch(f"{self.name} has Picard rank {self.picard_rank}, got {len(d)} coefficients")
        return d

    def intersect(self, d1: DivClass, d2: DivClass) -> Fraction:
        n = self.picard_rank
        if len(d1) != n or len(d2) != n:
            raise DimensionMismatch(f"{self.name} has Picard rank {n}; got lengths {len(d1)}, {len(d2)}")
        (x, dx), (y, dy) = d1._scaled, d2._scaled
        total = sum(g * x[i] * y[j] for i, j, g in self._gram_entries)
        return Fraction(total, dx * dy)

    @cached_property
    def _gram_entries(self) -> tuple[tuple[int, int, int], ...]:
        return tuple((i, j, g) for i, row in enumerate(self.gram) for j, g in enumerate(row) if g)

    def pairings(self, d: DivClass) -> list[Fraction]:
        """``d.C`` for every Mori generator C, in generator order."""
        den = d._scaled[1]
        return [Fraction(v, den) for v in self._pairing_numerators(d)]

    def square(self, d: DivClass) -> Fraction:
        return self.intersect(d, d)

    @cached_property
    def c1(self) -> DivClass:
        """Anticanonical class c1(B) = -K_B."""
        if self.kind == "F":
            return DivClass((2, self.param + 2))
        return DivClass((3,) + (-1,) * (self.picard_rank - 1))

    def signature(self) -> tuple[int, int, int]:
        return inertia(self.gram)

    def _pairing_numerators(self, d: DivClass) -> Iterator[int]:
        # signs of these agree with d.C since every generator is integral
        if len(d) != self.picard_rank:
            raise DimensionMismatch(f"{self.name} has Picard rank {self.picard_rank}, got {len(d)}")
        x = d._scaled[0]
        row = [0] * len(x)
        for i, j, g in self._gram_entries:
            row[j] += g * x[i]
        for c in self.mori_gens:
            yield sum(r * b for r, b in zip(row, c._scaled[0]) if b)

    def is_ample(self, d: DivClass) -> bool:
        return all(v > 0 for v in self._pairing_numerators(d))

    def is_nef(self, d: DivClass) -> bool:
        return all(v >= 0 for v in self._pairing_numerators(d))

    def is_effective(self, d: DivClass) -> bool:
        if len(d) != self.picard_rank:
            raise DimensionMismatch(f"{self.name} has Picard rank {self.picard_rank}, got {len(d)}")
        if d.is_zero():
            return True
        # c1 is ample: a nonzero effective class pairs positively with it
        if self.intersect(d, self.c1) <= 0:
            return False
        # nef classes lie in the closed effective cone on these surfaces
        if self.is_nef(d):
            return True
        return in_cone([g.coeffs for g in self.eff_gens], d.coeffs)

    def parity_admissible(self, n: int, eta: DivClass, two_lambda: int) -> bool:
        """Integrality rules for c1(L) of a rank-n spectral cover with lambda = two_lambda / 2."""
        if n < 1:
            raise ValueError("spectral rank n must be >= 1")
        if not eta.is_integral():
            return False
        if n % 2 == 1:
            return two_lambda % 2 == 1
        if two_lambda % 2 == 0:
            return all((e - c) % 2 == 0 for e, c in zip(eta.coeffs, self.c1.coeffs))
        return all(c % 2 == 0 for c in self.c1.coeffs)


def mori_generators(base: BaseSurface) -> tuple[DivClass, ...]:
    return base.mori_gens


SUPPORTED_BASES = ("P2", "F0", "F1") + tuple(f"dP{k}" for k in range(9))


def all_bases() -> list[BaseSurface]:
    return [BaseSurface.parse(name) for name in SUPPORTED_BASES]
