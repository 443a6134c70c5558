"""The line-oriented text format for models.

Grammar (UTF-8, ``#`` starts a comment to end of line, blank lines ignored)::

    hypotheses <n>
    evidence <m>
    atom <i> <bitstring> <rational>

The two header lines come first, in that order.  ``<bitstring>`` has length
``m``; its k-th character gives the sign of ``E_{k+1}``.  ``<rational>`` is
``p/q`` or an integer.  Atoms omitted from the file are zero; repeating an
``(i, bitstring)`` pair is an error.

Canonical output orders atoms by ascending ``i``, then by the bitstring read
as a binary number, and omits zero atoms, so writing is byte-deterministic.
"""

from __future__ import annotations

import os
from pathlib import Path

from .errors import ModelFormatError
from .model import DEFAULT_MAX_EVIDENCE, Model, bits_to_signs, signs_to_bits
from .rational import format_rational, parse_rational


def loads(text: str, *, max_evidence: int = DEFAULT_MAX_EVIDENCE) -> Model:
    """Parse the model format.  Raises :class:`ModelFormatError` on grammar
    violations and :class:`InvalidModelError` on distribution violations."""
    n = m = None
    atoms = {}
    seen: set[tuple[int, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0]

        def fail(message: str):
            raise ModelFormatError(f"line {lineno}: {message}")

        if keyword == "hypotheses":
            if n is not None:
                fail("duplicate 'hypotheses' header")
            if m is not None or atoms:
                fail("'hypotheses' must be the first directive")
            n = _positive_int(tokens, fail)
        elif keyword == "evidence":
            if n is None:
                fail("'evidence' must follow the 'hypotheses' header")
            if m is not None:
                fail("duplicate 'evidence' header")
            if atoms:
                fail("'evidence' must precede atom lines")
            m = _positive_int(tokens, fail)
        elif keyword == "atom":
            if n is None or m is None:
                fail("atom line before the 'hypotheses'/'evidence' headers")
            if len(tokens) != 4:
                fail(f"expected 'atom <i> <bitstring> <rational>', got {line!r}")
            try:
                i = int(tokens[1])
            except ValueError:
                fail(f"hypothesis index is not an integer: {tokens[1]!r}")
            if not 1 <= i <= n:
                fail(f"hypothesis index {i} out of range 1..{n}")
            bits = tokens[2]
            if len(bits) != m or any(ch not in "01" for ch in bits):
                fail(f"bitstring {bits!r} must have length {m} over {{0,1}}")
            if (i, bits) in seen:
                fail(f"duplicate atom ({i}, {bits})")
            seen.add((i, bits))
            try:
                value = parse_rational(tokens[3])
            except ValueError as exc:
                fail(str(exc))
            atoms[(i, bits_to_signs(bits))] = value
        else:
            fail(f"unknown directive {keyword!r}")
    if n is None or m is None:
        raise ModelFormatError("missing 'hypotheses'/'evidence' headers")
    return Model(n=n, m=m, atoms=atoms, max_evidence=max_evidence)


def _positive_int(tokens, fail):
    if len(tokens) != 2:
        fail(f"expected '{tokens[0]} <count>'")
    try:
        value = int(tokens[1])
    except ValueError:
        fail(f"count is not an integer: {tokens[1]!r}")
    if value < 1:
        fail(f"count must be positive, got {value}")
    return value


def dumps(model: Model) -> str:
    """Canonical text form; stable byte-for-byte for equal models."""
    lines = [f"hypotheses {model.n}", f"evidence {model.m}"]
    entries = sorted(
        ((i, signs_to_bits(signs), value) for (i, signs), value in model.atoms.items()),
        key=lambda entry: (entry[0], int(entry[1], 2)),
    )
    lines.extend(f"atom {i} {bits} {format_rational(value)}" for i, bits, value in entries)
    return "\n".join(lines) + "\n"


def load(path: str | os.PathLike, *, max_evidence: int = DEFAULT_MAX_EVIDENCE) -> Model:
    return loads(Path(path).read_text(encoding="utf-8"), max_evidence=max_evidence)


def dump(model: Model, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(model), encoding="utf-8")
