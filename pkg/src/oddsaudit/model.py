"""Joint probability models over a hypothesis partition and binary evidence.

A :class:`Model` fixes ``n`` mutually exclusive, jointly exhaustive
hypotheses ``H_1..H_n`` and ``m`` binary evidence propositions ``E_1..E_m``,
and stores the exact probability of every atom ``H_i AND E_1^{s_1} AND ...
AND E_m^{s_m}`` (an atom pins the truth value of every proposition).  The
partition structure is therefore built in: exhaustiveness and exclusivity are
properties of the representation, not runtime checks, and the complement of a
hypothesis is always the union of the remaining cells.

All probabilities are exact rationals.  Conditioning on an event of
probability zero raises :class:`~oddsaudit.errors.ZeroProbabilityError`;
there is no sentinel value.

Conventions used throughout the package:

* hypothesis indices ``i`` and evidence indices ``j`` are 1-based;
* a sign vector is a ``tuple[bool, ...]`` of length ``m`` whose entry ``j-1``
  is the truth value of ``E_j`` in the atom;
* an event is a mapping ``{j: required_sign}``; the empty mapping is the
  sure event.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping

from .errors import InvalidModelError, ZeroProbabilityError

Signs = tuple[bool, ...]
AtomKey = tuple[int, Signs]
Event = Mapping[int, bool]

#: Models with more evidence propositions than this are refused by default:
#: the audit enumerates all 2**m evidence subsets.
DEFAULT_MAX_EVIDENCE = 16


class Side(enum.Enum):
    """Which partition cell an operation conditions on."""

    GIVEN_H = "given-H"
    GIVEN_NOT_H = "given-not-H"

    def __str__(self) -> str:
        return self.value


def bits_to_signs(bits: str) -> Signs:
    """Convert a ``{0,1}`` string to a sign vector; character k is E_{k+1}."""
    if not bits or any(ch not in "01" for ch in bits):
        raise ValueError(f"sign bitstring must be nonempty over {{0,1}}: {bits!r}")
    return tuple(ch == "1" for ch in bits)


def signs_to_bits(signs: Signs) -> str:
    return "".join("1" if s else "0" for s in signs)


def sign_vectors(m: int) -> Iterator[Signs]:
    """All 2**m sign vectors, ordered by their bitstring read as a binary number."""
    for value in range(1 << m):
        yield tuple(bool((value >> (m - 1 - k)) & 1) for k in range(m))


def _exact(value, what: str) -> Fraction:
    if isinstance(value, float):
        raise InvalidModelError(f"{what} must be exact (int or Fraction), got float {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InvalidModelError(f"{what} is not a rational value: {value!r}") from exc


def _matches(signs: Signs, event: Event) -> bool:
    return all(signs[j - 1] == wanted for j, wanted in event.items())


@dataclass(frozen=True)
class Model:
    """Exact joint distribution over ``n`` hypotheses and ``m`` evidence bits.

    ``atoms`` maps ``(i, signs)`` to the atom probability; omitted atoms are
    zero.  Construction validates nonnegativity and that the total mass is
    exactly 1, then normalises the mapping (zero entries dropped, values
    coerced to ``Fraction``) and freezes it.
    """

    n: int
    m: int
    atoms: Mapping[AtomKey, Fraction]
    max_evidence: int = field(default=DEFAULT_MAX_EVIDENCE, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidModelError(f"need at least one hypothesis, got n={self.n!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise InvalidModelError(f"need at least one evidence proposition, got m={self.m!r}")
        if self.m > self.max_evidence:
            raise InvalidModelError(
                f"m={self.m} exceeds the evidence cap {self.max_evidence} "
                f"(audits enumerate 2**m subsets; raise max_evidence to override)"
            )
        clean: dict[AtomKey, Fraction] = {}
        for key, raw in self.atoms.items():
            try:
                i, signs = key
            except (TypeError, ValueError) as exc:
                raise InvalidModelError(f"atom key must be (i, signs): {key!r}") from exc
            if not isinstance(i, int) or not 1 <= i <= self.n:
                raise InvalidModelError(f"hypothesis index out of range 1..{self.n}: {i!r}")
            signs = tuple(bool(s) for s in signs)
            if len(signs) != self.m:
                raise InvalidModelError(
                    f"sign vector {signs!r} has length {len(signs)}, expected m={self.m}"
                )
            value = _exact(raw, f"atom probability for ({i}, {signs_to_bits(signs)})")
            if value < 0:
                raise InvalidModelError(
                    f"negative atom probability {value} for ({i}, {signs_to_bits(signs)})"
                )
            if (i, signs) in clean:
                raise InvalidModelError(f"duplicate atom ({i}, {signs_to_bits(signs)})")
            if value:
                clean[(i, signs)] = value
        total = sum(clean.values(), Fraction(0))
        if total != 1:
            raise InvalidModelError(f"atom probabilities total {total}, expected exactly 1")
        object.__setattr__(self, "atoms", MappingProxyType(clean))

    def __repr__(self) -> str:
        return f"Model(n={self.n}, m={self.m}, {len(self.atoms)} nonzero atoms)"

    # -- lookups ---------------------------------------------------------

    def check_hypothesis(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.n:
            raise IndexError(f"hypothesis index out of range 1..{self.n}: {i!r}")

    def validate_event(self, event: Event) -> None:
        for j, sign in event.items():
            if not isinstance(j, int) or not 1 <= j <= self.m:
                raise ValueError(f"evidence index out of range 1..{self.m}: {j!r}")
            if not isinstance(sign, bool):
                raise ValueError(f"evidence sign for E{j} must be a bool, got {sign!r}")

    def atom(self, i: int, signs: Signs) -> Fraction:
        """P(H_i AND the full conjunction described by ``signs``)."""
        return self.atoms.get((i, tuple(signs)), Fraction(0))

    # -- marginals and conditionals --------------------------------------

    def prior(self, i: int) -> Fraction:
        """P(H_i): total mass of the hypothesis' column."""
        self.check_hypothesis(i)
        return sum((v for (k, _), v in self.atoms.items() if k == i), Fraction(0))

    def event_prob(self, event: Event) -> Fraction:
        """P(event): mass of all atoms consistent with every literal."""
        self.validate_event(event)
        return sum(
            (v for (_, signs), v in self.atoms.items() if _matches(signs, event)),
            Fraction(0),
        )

    def joint_prob(self, event: Event, i: int) -> Fraction:
        """P(event AND H_i)."""
        self.check_hypothesis(i)
        self.validate_event(event)
        return sum(
            (v for (k, signs), v in self.atoms.items() if k == i and _matches(signs, event)),
            Fraction(0),
        )

    def cond(self, event: Event, i: int, side: Side) -> Fraction:
        """P(event | H_i) or P(event | not-H_i), per ``side``.

        The complement cell is the union of the other hypotheses, so its mass
        is exactly ``1 - P(H_i)``.
        """
        if not isinstance(side, Side):
            raise ValueError(f"side must be a Side member, got {side!r}")
        prior = self.prior(i)
        joint = self.joint_prob(event, i)
        if side is Side.GIVEN_H:
            mass, top = prior, joint
        else:
            mass, top = 1 - prior, self.event_prob(event) - joint
        if mass == 0:
            raise ZeroProbabilityError(
                f"cannot condition on {'H' if side is Side.GIVEN_H else 'not-H'}{i}: "
                f"it has probability 0"
            )
        return top / mass

    def posterior(self, event: Event, i: int) -> Fraction:
        """P(H_i | event) computed directly from the atom table."""
        self.check_hypothesis(i)
        p_event = self.event_prob(event)
        if p_event == 0:
            raise ZeroProbabilityError("cannot condition on an event of probability 0")
        return self.joint_prob(event, i) / p_event
