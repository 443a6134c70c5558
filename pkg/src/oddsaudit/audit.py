"""Audits a model against the assumptions behind odds-product updating.

The checked assumptions are: more than two hypotheses; a partition (built
into the representation); and conditional independence of every evidence
subset, both given each hypothesis and given its complement.  On top of the
assumption checks this module determines, per hypothesis, which evidence
propositions are *relevant* (able to move the posterior at all), and verifies
that no hypothesis has more than one relevant proposition — the structural
collapse that full two-sided independence forces on such models.

"Produces updating" is read as the marginal inequality
``P(E_j | H_i) != P(E_j)``.  For a non-degenerate hypothesis this is
equivalent to the likelihood ratio differing from 1; the equivalence is
asserted as a property by the test suite rather than assumed here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegeneratePriorError, SubsetCapError
from .model import DEFAULT_MAX_EVIDENCE, Model, Side

_PARTITION_NOTE = (
    "exhaustive and mutually exclusive by construction; atom masses total exactly 1"
)


@dataclass(frozen=True)
class IndependenceViolation:
    """One evidence subset whose joint conditional fails to factorize.

    ``joint`` is P(AND_{j in subset} E_j | side of H_i); ``product`` is the
    product of the singleton conditionals.  They differ, or this would not
    be a violation.
    """

    hypothesis: int
    side: Side
    subset: tuple[int, ...]
    joint: Fraction
    product: Fraction

    def describe(self) -> str:
        members = ",".join(f"E{j}" for j in self.subset)
        return (
            f"H{self.hypothesis} {self.side} {{{members}}}: "
            f"joint={self.joint} product={self.product}"
        )


@dataclass(frozen=True)
class TheoremOutcome:
    """Result of the at-most-one-updating-proposition check."""

    status: str  # "holds" | "violated" | "not-applicable"
    hypothesis: int | None = None
    evidence_pair: tuple[int, int] | None = None
    reason: str | None = None

    @property
    def holds(self) -> bool:
        return self.status == "holds"


@dataclass(frozen=True)
class PairIdentities:
    """Exact identities that two-sided independence forces on a pair (E_j, E_k).

    ``residuals[i]`` is the difference between the two sides of the linear
    relation

        P(Ej)P(Ek) - P(Ej)P(Ek,Hi) - P(Ej,Hi)P(Ek)
            = P(EjEk)(1 - P(Hi)) - P(EjEk,Hi)

    which must vanish for every hypothesis.  ``factorization_holds`` states
    whether P(Ej)P(Ek) = P(EjEk) unconditionally.  ``bracket_products[i]`` is
    [P(Ej) - P(Ej|Hi)]*[P(Ek) - P(Ek|Hi)], which must vanish because one of
    the two factors does.
    """

    residuals: dict[int, Fraction]
    factorization_holds: bool
    bracket_products: dict[int, Fraction]


@dataclass(frozen=True)
class AuditReport:
    """Structured audit verdicts; render with :func:`render_report`."""

    n: int
    m: int
    mode: str
    n_ok: bool
    partition_note: str
    independence_violations: tuple[IndependenceViolation, ...]
    relevance: dict[int, frozenset[int]]
    degenerate_hypotheses: frozenset[int]
    condition1_holds: bool | None  # None: the all-evidence conjunction has probability 0
    condition1_failures: tuple[int, ...] = ()
    theorem: TheoremOutcome = field(default=TheoremOutcome("not-applicable"))

    @property
    def theorem_holds(self) -> bool | None:
        if self.theorem.status == "not-applicable":
            return None
        return self.theorem.status == "holds"

    @property
    def clean(self) -> bool:
        """No violations and, where applicable, no multiple updating."""
        return not self.independence_violations and self.theorem.status != "violated"


def check_independence(
    model: Model,
    i: int,
    side: Side,
    *,
    pairwise: bool = False,
    max_full_evidence: int = DEFAULT_MAX_EVIDENCE,
) -> list[IndependenceViolation]:
    """All evidence subsets (|J| >= 2) whose conditional fails to factorize.

    In pairwise mode only |J| = 2 subsets are tested — a strictly weaker
    check, but linear in m**2 instead of exponential.  If the conditioning
    cell has probability zero there are no conditionals to audit and the
    result is empty; callers track degeneracy separately.
    """
    model.check_hypothesis(i)
    if not pairwise and model.m > max_full_evidence:
        raise SubsetCapError(
            f"full subset audit needs 2**{model.m} subsets (m={model.m} > cap "
            f"{max_full_evidence}); use pairwise mode or raise the cap"
        )
    mass = model.prior(i) if side is Side.GIVEN_H else 1 - model.prior(i)
    if mass == 0:
        return []
    singles = {j: model.cond({j: True}, i, side) for j in range(1, model.m + 1)}
    sizes = (2,) if pairwise else range(2, model.m + 1)
    violations = []
    for size in sizes:
        for subset in itertools.combinations(range(1, model.m + 1), size):
            joint = model.cond({j: True for j in subset}, i, side)
            product = math.prod((singles[j] for j in subset), start=Fraction(1))
            if joint != product:
                violations.append(IndependenceViolation(i, side, subset, joint, product))
    return violations


def relevant_evidence(model: Model, i: int) -> frozenset[int]:
    """Evidence indices able to update H_i: { j : P(E_j | H_i) != P(E_j) }.

    Degenerate hypotheses (prior 0 or 1) admit no updating and return the
    empty set.
    """
    model.check_hypothesis(i)
    prior = model.prior(i)
    if prior == 0 or prior == 1:
        return frozenset()
    return frozenset(
        j
        for j in range(1, model.m + 1)
        if model.cond({j: True}, i, Side.GIVEN_H) != model.event_prob({j: True})
    )


def _collect_violations(model: Model, pairwise: bool) -> tuple[IndependenceViolation, ...]:
    out: list[IndependenceViolation] = []
    for i in range(1, model.n + 1):
        for side in (Side.GIVEN_H, Side.GIVEN_NOT_H):
            out.extend(check_independence(model, i, side, pairwise=pairwise))
    return tuple(out)


def _theorem_outcome(
    n: int,
    violations: tuple[IndependenceViolation, ...],
    relevance: dict[int, frozenset[int]],
    degenerate: frozenset[int],
) -> TheoremOutcome:
    if n <= 2:
        return TheoremOutcome(
            "not-applicable", reason=f"needs more than two hypotheses, have n={n}"
        )
    if violations:
        return TheoremOutcome(
            "not-applicable",
            reason=f"{len(violations)} independence violation(s) present",
        )
    for i in sorted(relevance):
        if i in degenerate:
            continue
        updating = sorted(relevance[i])
        if len(updating) >= 2:
            return TheoremOutcome("violated", hypothesis=i, evidence_pair=(updating[0], updating[1]))
    return TheoremOutcome("holds")


def assert_theorem(model: Model, *, mode: str = "full") -> TheoremOutcome:
    """Check that no hypothesis has two or more updating evidence propositions.

    Not applicable when n <= 2 or when any independence violation exists (the
    structural claim only binds models that satisfy the assumptions).
    """
    pairwise = _parse_mode(mode)
    violations = _collect_violations(model, pairwise)
    degenerate = frozenset(
        i for i in range(1, model.n + 1) if model.prior(i) in (0, 1)
    )
    relevance = {i: relevant_evidence(model, i) for i in range(1, model.n + 1)}
    return _theorem_outcome(model.n, violations, relevance, degenerate)


def _parse_mode(mode: str) -> bool:
    if mode not in ("full", "pairwise"):
        raise ValueError(f"mode must be 'full' or 'pairwise', got {mode!r}")
    return mode == "pairwise"


def check_assumptions(model: Model, mode: str = "full") -> AuditReport:
    """Run every audit and collect the verdicts into one report."""
    pairwise = _parse_mode(mode)
    violations = _collect_violations(model, pairwise)
    degenerate = frozenset(i for i in range(1, model.n + 1) if model.prior(i) in (0, 1))
    relevance = {i: relevant_evidence(model, i) for i in range(1, model.n + 1)}

    all_true = {j: True for j in range(1, model.m + 1)}
    if model.event_prob(all_true) == 0:
        condition1: bool | None = None
        failures: tuple[int, ...] = ()
    else:
        failures = tuple(
            i
            for i in range(1, model.n + 1)
            if model.atom(i, (True,) * model.m) == 0
        )
        condition1 = not failures

    return AuditReport(
        n=model.n,
        m=model.m,
        mode=mode,
        n_ok=model.n > 2,
        partition_note=_PARTITION_NOTE,
        independence_violations=violations,
        relevance=relevance,
        degenerate_hypotheses=degenerate,
        condition1_holds=condition1,
        condition1_failures=failures,
        theorem=_theorem_outcome(model.n, violations, relevance, degenerate),
    )


def check_pair_identities(model: Model, j: int, k: int) -> PairIdentities:
    """Evaluate the forced identities for the evidence pair (E_j, E_k).

    Requires j != k and every hypothesis non-degenerate (the bracket factors
    condition on each H_i).  On a model that is fully independent given each
    cell and its complement, all residuals and bracket products are exactly 0
    and the marginals factorize.
    """
    if j == k:
        raise ValueError(f"need two distinct evidence indices, got j=k={j}")
    model.validate_event({j: True, k: True})
    priors = {i: model.prior(i) for i in range(1, model.n + 1)}
    for i, p in priors.items():
        if p == 0 or p == 1:
            raise DegeneratePriorError(
                f"pair identities need 0 < P(H{i}) < 1, got {p}"
            )
    p_j = model.event_prob({j: True})
    p_k = model.event_prob({k: True})
    p_jk = model.event_prob({j: True, k: True})
    residuals: dict[int, Fraction] = {}
    brackets: dict[int, Fraction] = {}
    for i in range(1, model.n + 1):
        lhs = p_j * p_k - p_j * model.joint_prob({k: True}, i) - model.joint_prob({j: True}, i) * p_k
        rhs = p_jk * (1 - priors[i]) - model.joint_prob({j: True, k: True}, i)
        residuals[i] = lhs - rhs
        brackets[i] = (p_j - model.cond({j: True}, i, Side.GIVEN_H)) * (
            p_k - model.cond({k: True}, i, Side.GIVEN_H)
        )
    return PairIdentities(
        residuals=residuals,
        factorization_holds=p_j * p_k == p_jk,
        bracket_products=brackets,
    )


def _hyp_list(indices) -> str:
    return ", ".join(f"H{i}" for i in sorted(indices))


def render_report(report: AuditReport) -> str:
    """Deterministic line-oriented text form of an :class:`AuditReport`."""
    lines = [
        f"hypotheses: {report.n}",
        f"evidence: {report.m}",
        f"hypothesis-count (n > 2): "
        + ("ok" if report.n_ok else f"failed (need n > 2, have n={report.n})"),
        f"partition: {report.partition_note}",
        f"independence-mode: {report.mode}",
    ]
    if report.independence_violations:
        lines.append(f"independence-violations: {len(report.independence_violations)}")
        lines.extend(f"  {v.describe()}" for v in report.independence_violations)
    else:
        lines.append("independence-violations: none")
    lines.append("relevance:")
    for i in sorted(report.relevance):
        members = sorted(report.relevance[i])
        shown = ", ".join(f"E{j}" for j in members) if members else "none"
        lines.append(f"  H{i}: {shown}")
    lines.append(
        "degenerate-hypotheses: "
        + (_hyp_list(report.degenerate_hypotheses) if report.degenerate_hypotheses else "none")
    )
    if report.condition1_holds is None:
        lines.append(
            "all-evidence-posteriors-nonzero: not-evaluable "
            "(the all-evidence conjunction has probability 0)"
        )
    elif report.condition1_holds:
        lines.append("all-evidence-posteriors-nonzero: yes")
    else:
        lines.append(
            f"all-evidence-posteriors-nonzero: no ({_hyp_list(report.condition1_failures)})"
        )
    outcome = report.theorem
    if outcome.status == "holds":
        lines.append("multiple-updating: none (at most one updating evidence item per hypothesis)")
    elif outcome.status == "violated":
        j1, j2 = outcome.evidence_pair
        lines.append(f"multiple-updating: FOUND (H{outcome.hypothesis} updated by E{j1} and E{j2})")
    else:
        lines.append(f"multiple-updating: not-applicable ({outcome.reason})")
    return "\n".join(lines) + "\n"
