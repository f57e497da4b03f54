"""Realization certificates: DRY class -> numerical data of a stable extension bundle.

``realize`` follows a fixed case table of extension configurations and returns
one of four verdicts. ``verify_witness`` re-derives every field of a
certificate from scratch and never trusts the stored condition report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import dry
from .dry import CandidateClass, DryEvaluation
from .errors import DryCertError, PolarizationError, UnsupportedCase
from .extension import (
    BALANCED,
    STANDARD,
    ExtensionConfig,
    PolarizationData,
    build_polarization,
    c2_V,
    check_polarization,
    index_IX,
    nonsplit_ok,
    required_c2E,
)
from .picard import BaseSurface, DivClass, format_rational, parse_rational
from .spectral import SpectralData, spectral_check, spectral_valid

# Order matters: it is the order in which condition_report is serialized.
CONDITIONS = (
    "parity",
    "bpf",
    "effective",
    "alpha_nonzero",
    "orthogonality",
    "polarization",
    "nonsplit",
    "c2E_integral",
    "artamkin",
)


def _is_f0(base: BaseSurface) -> bool:
    return base.kind == "F" and base.param == 0


def case_table(N: int, base: BaseSurface) -> list[ExtensionConfig]:
    """Extension templates (alpha unset) in preference order; empty if unsupported.

    Balanced ``n = r = N/2`` first: it has the lowest realizable fiber class.
    Even n needs c1 even for ``2 lambda = 1``, which among our bases holds only on F0.
    """
    if N < 4 or base.picard_rank == 1:
        return []
    table = []
    if N % 2 == 0:
        n = N // 2
        if n % 2 == 1 or _is_f0(base):
            table.append(ExtensionConfig(n, n, 1, twist=BALANCED))
    if N >= 6:
        table.append(ExtensionConfig(3, N - 3, 1, twist=STANDARD))
    elif _is_f0(base):
        table.append(ExtensionConfig(2, N - 2, 1, twist=STANDARD))
    return table


def _base_alpha(base: BaseSurface, cfg: ExtensionConfig) -> DivClass:
    if base.picard_rank == 1:
        raise UnsupportedCase(f"{base.name}: no nonzero class is orthogonal to an ample class")
    if base.kind == "F":
        return DivClass((-1, 1))
    k = base.param
    if cfg.twist == BALANCED:
        return DivClass((1, -3) + (0,) * (k - 1))
    return DivClass((k,) + (-3,) * k)


def select_alpha(base: BaseSurface, eta: DivClass, cfg: ExtensionConfig) -> DivClass:
    """Candidate alpha, negated if needed so that ``alpha.(eta - n c1) <= 0``."""
    alpha = _base_alpha(base, cfg)
    if base.intersect(alpha, eta - cfg.n * base.c1) > 0:
        return -alpha
    return alpha


def select_HB(base: BaseSurface, cfg: ExtensionConfig | None = None) -> DivClass:
    if base.picard_rank == 1:
        raise UnsupportedCase(f"{base.name}: no nonzero class is orthogonal to an ample class")
    if base.kind == "F":
        return DivClass((1, base.param + 1))
    return base.c1


@dataclass(frozen=True)
class Witness:
    eta: DivClass
    cfg: ExtensionConfig
    c2E: int
    polarization: PolarizationData
    dry_report: DryEvaluation
    condition_report: dict
    index_IX: Fraction
    recomputed_c2V: tuple[DivClass, int]

    def to_json(self) -> dict:
        sigma, fiber = self.recomputed_c2V
        return {
            "eta": self.eta.to_json(),
            "config": self.cfg.to_json(),
            "c2E": self.c2E,
            "polarization": self.polarization.to_json(),
            "dry_report": self.dry_report.to_json(),
            "condition_report": {k: self.condition_report[k] for k in CONDITIONS},
            "index_IX": format_rational(self.index_IX),
            "recomputed_c2V": {"sigma": sigma.to_json(), "fiber": fiber},
        }

    @classmethod
    def from_json(cls, data: dict) -> Witness:
        c2v = data["recomputed_c2V"]
        return cls(
            eta=DivClass.from_json(data["eta"]),
            cfg=ExtensionConfig.from_json(data["config"]),
            c2E=int(parse_rational(data["c2E"])),
            polarization=PolarizationData.from_json(data["polarization"]),
            dry_report=DryEvaluation.from_json(data["dry_report"]),
            condition_report={k: bool(v) for k, v in data["condition_report"].items()},
            index_IX=parse_rational(data["index_IX"]),
            recomputed_c2V=(DivClass.from_json(c2v["sigma"]), int(parse_rational(c2v["fiber"]))),
        )


@dataclass(frozen=True)
class Realized:
    witness: Witness
    verdict = "realized"

    def to_json(self) -> dict:
        return {"witness": self.witness.to_json()}


@dataclass(frozen=True)
class NotDry:
    dry_report: DryEvaluation
    verdict = "not_dry"

    def to_json(self) -> dict:
        return {"dry_report": self.dry_report.to_json()}


@dataclass(frozen=True)
class ExceptionCandidate:
    dry_report: DryEvaluation
    failures: tuple[tuple[str, tuple[str, ...]], ...]
    verdict = "exception_candidate"

    def failure_codes(self) -> list[str]:
        return [f"{label}:{code}" for label, codes in self.failures for code in codes]

    def to_json(self) -> dict:
        return {
            "dry_report": self.dry_report.to_json(),
            "failures": [{"config": label, "reasons": list(codes)} for label, codes in self.failures],
        }


@dataclass(frozen=True)
class Unsupported:
    reason: str
    dry_report: DryEvaluation
    verdict = "unsupported"

    def to_json(self) -> dict:
        return {"reason": self.reason, "dry_report": self.dry_report.to_json()}


Verdict = Realized | NotDry | ExceptionCandidate | Unsupported


def verdict_to_json(verdict: Verdict, c: CandidateClass, base: BaseSurface) -> dict:
    return {"verdict": verdict.verdict, "base": base.name, "candidate": c.to_json(), **verdict.to_json()}


def _attempt(template: ExtensionConfig, c: CandidateClass, base: BaseSurface, report: DryEvaluation):
    """Try one configuration; return ``(failure codes, witness or None)``."""
    eta = c.phi
    cfg = template.with_alpha(select_alpha(base, eta, template))
    H_B = select_HB(base, cfg)
    s = SpectralData(cfg.n, eta, cfg.two_lambda)
    check = spectral_check(s, base)
    codes = check.failure_codes()
    cond = dict.fromkeys(CONDITIONS, False)
    cond.update(parity=check.parity, bpf=check.bpf == "certified", effective=check.effective)
    cond["alpha_nonzero"] = not cfg.alpha.is_zero()
    cond["orthogonality"] = base.intersect(cfg.alpha, H_B) == 0
    if not cond["orthogonality"]:
        codes.append("orthogonality")
    try:
        pol = build_polarization(cfg.alpha, H_B, base)
        cond["polarization"] = check_polarization(pol, cfg.alpha, base)
    except PolarizationError:
        pol = None
    if not cond["polarization"]:
        codes.append("polarization")
    if not check.parity:
        return codes, None

    cond["nonsplit"] = nonsplit_ok(cfg, eta, base)
    if not cond["nonsplit"]:
        codes.append("nonsplit")
    c2E = required_c2E(cfg, s, c.omega, base)
    cond["c2E_integral"] = c2E.denominator == 1
    if not cond["c2E_integral"]:
        codes.append("c2E_nonintegral")
    cond["artamkin"] = c2E >= cfg.r + 2
    if not cond["artamkin"]:
        codes.append("artamkin")
    if codes or not all(cond.values()):
        return codes, None

    c2E = int(c2E)
    sigma, fiber = c2_V(cfg, s, c2E, base)
    witness = Witness(
        eta=eta,
        cfg=cfg,
        c2E=c2E,
        polarization=pol,
        dry_report=report,
        condition_report=cond,
        index_IX=index_IX(cfg, eta, base),
        recomputed_c2V=(sigma, int(fiber)),
    )
    return [], witness


def realize(c: CandidateClass, base: BaseSurface, table: list[ExtensionConfig] | None = None) -> Verdict:
    """Certify ``c`` as c2 of an extension bundle, or classify why not.

    ``table`` overrides the case table (used to study coverage of subsets).
    """
    report = dry.evaluate(c, base)
    if not report.dry:
        return NotDry(report)
    if table is None:
        table = case_table(c.N, base)
    if not table:
        return Unsupported(f"no construction for N={c.N} on {base.name}", report)
    failures = []
    for template in table:
        codes, witness = _attempt(template, c, base, report)
        if witness is not None:
            return Realized(witness)
        failures.append((template.label, tuple(codes)))
    return ExceptionCandidate(report, tuple(failures))


def audit_witness(w: Witness, c: CandidateClass, base: BaseSurface) -> list[str]:
    """Names of the checks the certificate fails (empty list: certificate holds)."""
    try:
        return _audit(w, c, base)
    except (DryCertError, ValueError, TypeError, ArithmeticError) as exc:
        return [f"malformed:{type(exc).__name__}"]


def _audit(w: Witness, c: CandidateClass, base: BaseSurface) -> list[str]:
    failed = []
    cfg, eta = w.cfg, w.eta

    def need(ok: bool, name: str) -> None:
        if not ok:
            failed.append(name)

    need(eta == c.phi, "eta_equals_phi")
    need(cfg.structure_ok(), "rank_relation")
    need(cfg.m == c.N, "rank_total")
    need(cfg.alpha is not None and cfg.alpha.is_integral() and not cfg.alpha.is_zero(), "alpha_nonzero")
    if "alpha_nonzero" in failed:
        return failed
    need(not any(v is False for v in w.condition_report.values()), "condition_report")
    need(set(w.condition_report) == set(CONDITIONS), "condition_report_fields")

    evaluation = dry.evaluate(c, base)
    need(evaluation.dry, "dry")
    need(evaluation == w.dry_report, "dry_report")

    parity = base.parity_admissible(cfg.n, eta, cfg.two_lambda)
    need(parity, "parity")
    s = SpectralData(cfg.n, eta, cfg.two_lambda)
    need(spectral_valid(s, base), "spectral")
    p = w.polarization
    need(base.intersect(cfg.alpha, p.H_B) == 0, "orthogonality")
    need(check_polarization(p, cfg.alpha, base), "polarization")
    need(w.c2E >= cfg.r + 2, "artamkin")
    if not parity:
        return failed
    need(nonsplit_ok(cfg, eta, base), "nonsplit")
    need(index_IX(cfg, eta, base) == w.index_IX, "index_IX")
    sigma, fiber = c2_V(cfg, s, w.c2E, base)
    need(sigma == c.phi and fiber == c.omega, "c2V")
    need(w.recomputed_c2V == (c.phi, c.omega), "recomputed_c2V")
    return failed


def verify_witness(w: Witness, c: CandidateClass, base: BaseSurface) -> bool:
    return not audit_witness(w, c, base)
