"""Census of DRY classes that the extension construction leaves unrealized.

Every DRY class satisfies ``omega > phi.c1 / 2 + (N/6) c1^2 + N/2``, while the
construction realizes every ``omega >= min omega_min``.  Once ``phi.c1``
exceeds ``2 (min omega_min - (N/6) c1^2 - N/2)`` nothing can be missed, so
the sweep only visits the finitely many phi below that bound.

On dP_k (k >= 2) the Weyl group W(E_k) acts by isometries fixing c1 and
permuting the (-1)-curves. DRY thresholds are invariant under it, and so is
the verdict of ``realize``: nefness, Reider and effectivity are, and alpha
enters only through alpha^2, alpha.c1 = 0 and the sign rule, which makes the
nonsplit test equivalent to ``eta != n c1``. The sweep therefore works on
dominant representatives and expands their orbits only where exceptions occur.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

from .dry import CandidateClass, dry_threshold
from .errors import UnsupportedCase
from .extension import ExtensionConfig, omega_min
from .picard import BaseSurface, DivClass
from .witness import ExceptionCandidate, Realized, _base_alpha, case_table, realize


@dataclass(frozen=True)
class CensusEntry:
    phi: DivClass
    omegas: tuple[int, ...]
    failing_configs: tuple[tuple[str, ...], ...]  # one tuple of reason codes per omega

    def to_json(self) -> dict:
        return {
            "phi": [int(c) for c in self.phi],
            "omegas": list(self.omegas),
            "failing_configs": [list(codes) for codes in self.failing_configs],
        }

    @classmethod
    def from_json(cls, data: dict) -> CensusEntry:
        return cls(
            DivClass(tuple(data["phi"])),
            tuple(int(w) for w in data["omegas"]),
            tuple(tuple(codes) for codes in data["failing_configs"]),
        )


@dataclass(frozen=True)
class CensusReport:
    base: BaseSurface
    N: int
    phi_bound: int
    omega_min: int
    entries: tuple[CensusEntry, ...]
    complete: bool

    def to_json(self) -> dict:
        return {
            "base": self.base.name,
            "N": self.N,
            "phi_bound": self.phi_bound,
            "omega_min": self.omega_min,
            "complete": self.complete,
            "entries": [e.to_json() for e in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> CensusReport:
        return cls(
            base=BaseSurface.parse(data["base"]),
            N=int(data["N"]),
            phi_bound=int(data["phi_bound"]),
            omega_min=int(data["omega_min"]),
            entries=tuple(CensusEntry.from_json(e) for e in data["entries"]),
            complete=bool(data["complete"]),
        )

    def __len__(self) -> int:
        return sum(len(e.omegas) for e in self.entries)


def _table_or_raise(N: int, base: BaseSurface, table: list[ExtensionConfig] | None) -> list[ExtensionConfig]:
    if table is None:
        table = case_table(N, base)
    if not table:
        raise UnsupportedCase(f"no construction for N={N} on {base.name}")
    return table


def min_omega_min(N: int, base: BaseSurface, table: list[ExtensionConfig] | None = None) -> int:
    table = _table_or_raise(N, base, table)
    # omega_min depends on alpha only through alpha^2, so the sign is irrelevant
    return min(omega_min(t.with_alpha(_base_alpha(base, t)), base) for t in table)


def sweep_bound(N: int, base: BaseSurface, table: list[ExtensionConfig] | None = None) -> int:
    """Least integer P such that ``phi.c1 > P`` forces every DRY omega >= min omega_min."""
    wmin = min_omega_min(N, base, table)
    offset = Fraction(N, 6) * base.square(base.c1) + Fraction(N, 2)
    return max(0, math.floor(2 * (wmin - offset)))


def _nef_scale(base: BaseSurface, v: DivClass) -> int:
    """Least integer c >= 0 with ``c*c1 - v`` nef."""
    c = 0
    for g in base.mori_gens:
        # (c c1 - v).g >= 0  <=>  c >= v.g / c1.g
        c = max(c, math.ceil(base.intersect(v, g) / base.intersect(base.c1, g)))
    return c


def coordinate_box(N: int, base: BaseSurface, bound: int) -> list[tuple[int, int]] | None:
    """Per-coordinate integer ranges containing every phi of the region, or None if empty.

    For ample S and nef X, ``S.X >= 0``; with ``c*c1 -+ v`` nef this
    gives ``-c_minus S.c1 <= S.v <= c_plus S.c1`` for each dual basis vector v.
    """
    c1 = base.c1
    budget = bound - Fraction(N, 2) * base.square(c1)  # upper bound on S.c1
    if budget <= 0:
        return None
    rank = base.picard_rank
    # dual basis of the (unimodular, here also involutive up to sign) Gram form
    gram_inv = _inverse(base.gram)
    ranges = []
    for j in range(rank):
        v = DivClass(tuple(gram_inv[j]))
        centre = Fraction(N, 2) * base.intersect(c1, v)
        hi = centre + _nef_scale(base, v) * budget
        lo = centre - _nef_scale(base, -v) * budget
        ranges.append((math.ceil(lo), math.floor(hi)))
    return ranges


def _inverse(matrix) -> list[list[Fraction]]:
    n = len(matrix)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _in_region(phi: DivClass, N: int, base: BaseSurface, bound: int) -> bool:
    return base.intersect(phi, base.c1) <= bound and base.is_ample(phi - Fraction(N, 2) * base.c1)


def enumerate_phis_bruteforce(N: int, base: BaseSurface, bound: int) -> list[DivClass]:
    """Filter every lattice point of the coordinate box; slow but symmetry-free."""
    box = coordinate_box(N, base, bound)
    if box is None:
        return []
    out = []
    for coeffs in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        phi = DivClass(coeffs)
        if _in_region(phi, N, base, bound):
            out.append(phi)
    return out


def simple_roots(base: BaseSurface) -> list[tuple[int, ...]]:
    """Simple roots of W(E_k) on dP_k: ``E_i - E_{i+1}`` and ``l - E1 - E2 - E3``."""
    if base.kind != "dP" or base.param < 2:
        return []
    k = base.param
    roots = []
    for i in range(1, k):
        r = [0] * (k + 1)
        r[i], r[i + 1] = 1, -1
        roots.append(tuple(r))
    if k >= 3:
        roots.append((1, -1, -1, -1) + (0,) * (k - 3))
    return roots


def _dp_dot(x, y) -> int:
    return x[0] * y[0] - sum(a * b for a, b in zip(x[1:], y[1:]))


def weyl_orbit(phi: tuple[int, ...], roots: list[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Orbit of an integral dP_k class under the reflections ``x -> x + (x.r) r``."""
    seen = {phi}
    queue = deque([phi])
    while queue:
        x = queue.popleft()
        for r in roots:
            t = _dp_dot(x, r)
            if t:
                y = tuple(a + t * b for a, b in zip(x, r))
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return seen


def _dominant_representatives(N: int, base: BaseSurface, bound: int) -> Iterator[tuple[int, ...]]:
    """Region classes ``(d, -m_1, ..., -m_k)`` with ``m`` non-increasing and ``d >= m1+m2+m3``."""
    box = coordinate_box(N, base, bound)
    if box is None:
        return
    k = base.param
    (dlo, dhi), e_ranges = box[0], box[1:]
    if k >= 3:
        # m1 + m2 + m3 <= d and m_i <= m3 for i > 3 give phi.c1 >= d (9 - k) / 3
        dhi = min(dhi, 3 * bound // (9 - k))
    # coordinates are the coefficients b_i = -m_i of E_i
    mlo = max(N // 2 + 1, max(-hi for lo, hi in e_ranges))
    mhi = min(-lo for lo, hi in e_ranges)

    def best_total(d: int, prefix: list[int], m: int) -> int:
        """Largest sum of all m_i once m is appended to prefix."""
        i = len(prefix)
        if k < 3 or i >= 2:
            return sum(prefix) + m * (k - i)
        if i == 0:
            m3 = min(m, (d - m) // 2)
            return m + min(2 * m, d - m) + (k - 3) * m3
        m3 = min(m, d - prefix[0] - m)
        return prefix[0] + m + m3 + (k - 3) * m3

    def rec(d: int, prefix: list[int], total: int) -> Iterator[tuple[int, ...]]:
        i = len(prefix)
        if i == k:
            if 3 * d - total <= bound:
                yield (d, *(-m for m in prefix))
            return
        top = prefix[-1] if prefix else mhi
        if k >= 3:
            top = min(top, d - sum(prefix[:2]) - (2 - i) * mlo if i < 3 else top)
        for m in range(top, mlo - 1, -1):
            if 3 * d - best_total(d, prefix, m) > bound:
                if i >= 2 or k < 3:
                    break  # monotone in m from here on
                continue
            prefix.append(m)
            yield from rec(d, prefix, total + m)
            prefix.pop()

    for d in range(dlo, dhi + 1):
        for rep in rec(d, [], 0):
            if _in_region(DivClass(rep), N, base, bound):
                yield rep


def region_orbits(N: int, base: BaseSurface, bound: int) -> Iterator[tuple[DivClass, callable]]:
    """Yield ``(representative, expand)``; ``expand()`` lists the whole orbit."""
    roots = simple_roots(base)
    if not roots:
        for phi in enumerate_phis_bruteforce(N, base, bound):
            yield phi, (lambda phi=phi: [phi])
        return
    for rep in _dominant_representatives(N, base, bound):
        yield DivClass(rep), (lambda rep=rep: [DivClass(x) for x in weyl_orbit(rep, roots)])


def enumerate_phis(N: int, base: BaseSurface, bound: int) -> list[DivClass]:
    """All integral phi with ``phi - (N/2) c1`` ample and ``phi.c1 <= bound``, sorted."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    out = []
    for _, expand in region_orbits(N, base, bound):
        out.extend(expand())
    return sorted(out)


def exception_census(
    N: int,
    base: BaseSurface,
    bound: int | None = None,
    table: list[ExtensionConfig] | None = None,
) -> CensusReport:
    """Every DRY ``(phi, omega)`` of the sweep region that ``realize`` leaves unrealized.

    ``complete`` certifies that all DRY classes outside the listed entries are
    realized: the region reaches the sweep bound and, for every phi in it, the
    least DRY omega at or above ``min omega_min`` is realized (realizability is
    monotone in omega because c2(E) grows with it).
    """
    table = _table_or_raise(N, base, table)
    wmin = min_omega_min(N, base, table)
    needed = sweep_bound(N, base, table)
    if bound is None:
        bound = needed
    complete = bound >= needed
    entries = []
    for rep, expand in region_orbits(N, base, bound):
        lowest = math.floor(dry_threshold(rep, N, base)) + 1
        tail = realize(CandidateClass(rep, max(lowest, wmin), N), base, table)
        if not isinstance(tail, Realized):
            complete = False
        omegas, codes = [], []
        for omega in range(lowest, wmin):
            verdict = realize(CandidateClass(rep, omega, N), base, table)
            if isinstance(verdict, ExceptionCandidate):
                omegas.append(omega)
                codes.append(tuple(verdict.failure_codes()))
        if omegas:
            entries.extend(CensusEntry(phi, tuple(omegas), tuple(codes)) for phi in expand())
    entries.sort(key=lambda e: e.phi.coeffs)
    return CensusReport(base, N, bound, wmin, tuple(entries), complete)


CSV_COLUMNS = ("base", "N", "phi", "omega", "failing_configs")


def emit(report: CensusReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_json(), indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for e in report.entries:
            phi = ";".join(str(int(c)) for c in e.phi)
            for omega, codes in zip(e.omegas, e.failing_configs):
                writer.writerow((report.base.name, report.N, phi, omega, "|".join(codes)))
        return buf.getvalue().encode()
    raise ValueError(f"unknown format {fmt!r}; expected json or csv")


def parse_report(data: bytes) -> CensusReport:
    return CensusReport.from_json(json.loads(data))
