"""Verification reports with witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

import numpy as np

from . import scalar


@dataclass(frozen=True)
class Failure:
    """First violating basis tuple of one identity.

    ``index`` is 0-based; ``basis`` gives the 1-based labels used in output
    (``(1, 2)`` means the pair ``(e1, e2)``).
    """

    identity: str
    index: tuple[int, ...]
    lhs: Any
    rhs: Any
    count: int = 1

    @property
    def basis(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.index)

    def describe(self) -> str:
        where = ",".join(f"e{i}" for i in self.basis)
        return (
            f"{self.identity} fails at ({where}) [{self.count} violating tuple(s)]: "
            f"lhs={_fmt(self.lhs)} rhs={_fmt(self.rhs)}"
        )


def _fmt(value: Any) -> str:
    if isinstance(value, tuple):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return scalar.format_scalar(value)


@dataclass
class VerificationReport:
    """Outcome of checking a family of identities over all basis tuples.

    ``holds`` is true exactly when ``failures`` is empty; ``checked`` counts
    (identity, basis tuple) evaluations.
    """

    subject: str
    failures: list[Failure] = field(default_factory=list)
    checked: int = 0
    names: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures

    @property
    def checked_triples(self) -> int:
        return self.checked

    def __bool__(self) -> bool:
        return self.holds

    def failed(self, name: str) -> bool:
        return any(f.identity == name for f in self.failures)

    def failed_names(self) -> list[str]:
        return [f.identity for f in self.failures]

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            self.subject,
            self.failures + other.failures,
            self.checked + other.checked,
            self.names + other.names,
        )

    def render(self) -> str:
        lines = [
            f"check: {self.subject}",
            f"identities: {len(self.names)}  evaluations: {self.checked}",
            f"holds: {'true' if self.holds else 'false'}",
        ]
        lines.extend("  " + f.describe() for f in sorted(self.failures, key=lambda f: (f.index, f.identity)))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "holds": self.holds,
            "checked": self.checked,
            "identities": list(self.names),
            "failures": [
                {
                    "identity": f.identity,
                    "basis": list(f.basis),
                    "count": f.count,
                    "lhs": scalar.to_nested(np.array(f.lhs, dtype=object)),
                    "rhs": scalar.to_nested(np.array(f.rhs, dtype=object)),
                }
                for f in self.failures
            ],
        }


def compare(
    name: str, lhs: np.ndarray, rhs: np.ndarray, witness_axes: int, denominator: int = 1
) -> tuple[Failure | None, int]:
    """Compare two tensors whose leading ``witness_axes`` axes index basis tuples.

    Integer arrays may be passed together with a common ``denominator``.
    Returns the lexicographically first failure (or ``None``) and the number
    of tuples checked.
    """
    if lhs.shape != rhs.shape:
        raise ValueError(f"{name}: shape mismatch {lhs.shape} vs {rhs.shape}")
    lead = lhs.shape[:witness_axes]
    checked = int(np.prod(lead)) if lead else 1
    if lhs.size == 0:
        return None, checked
    if lhs.dtype == object or rhs.dtype == object:
        bad = np.array([a != b for a, b in zip(lhs.reshape(-1), rhs.reshape(-1))], dtype=bool)
        bad = bad.reshape(lhs.shape)
    else:
        bad = lhs != rhs
    if bad.ndim > witness_axes:
        bad = bad.reshape(lead + (-1,)).any(axis=-1)
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return None, checked
    idx = tuple(int(i) for i in hits[0])

    def witness(side):
        vals = np.asarray(side[idx], dtype=object)
        return scalar.to_tuple(np.vectorize(lambda v: Fraction(v) / denominator, otypes=[object])(vals))

    return Failure(name, idx, witness(lhs), witness(rhs), len(hits)), checked


def build_report(subject: str, checks: Iterable[tuple[str, np.ndarray, np.ndarray]], witness_axes: int) -> VerificationReport:
    rep = VerificationReport(subject)
    for name, lhs, rhs in checks:
        failure, n = compare(name, lhs, rhs, witness_axes)
        rep.names.append(name)
        rep.checked += n
        if failure is not None:
            rep.failures.append(failure)
    return rep
