"""Axiom systems as interpreted identity tables, decided over basis tuples.

By multilinearity, an identity in x, y, z holds on the whole space iff it
holds on every ordered triple of basis vectors, so checking all ``n**3``
triples is a complete decision procedure.
"""
from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Mapping

import numpy as np

from . import scalar
from .core import KIND_OPS, AlgebraError, MultiAlgebra, OpTensor, Recipe, combine_ops, parse_recipe
from .report import VerificationReport, compare


@dataclass(frozen=True)
class ExprTerm:
    """``coeff * outer(a, inner(b, c))`` (nesting "right"), ``coeff * outer(inner(a, b), c)``
    (nesting "left"), or ``coeff * outer(a, b)`` (depth one, ``inner`` is None)."""

    coeff: Fraction
    outer: str
    inner: str | None
    nesting: str
    variables: tuple[str, ...]

    def swap_xy(self) -> "ExprTerm":
        table = {"x": "y", "y": "x"}
        return ExprTerm(
            self.coeff, self.outer, self.inner, self.nesting,
            tuple(table.get(v, v) for v in self.variables),
        )

    def render(self) -> str:
        v = self.variables
        if self.inner is None:
            body = f"{v[0]} {self.outer} {v[1]}"
        elif self.nesting == "right":
            body = f"{v[0]} {self.outer} ({v[1]} {self.inner} {v[2]})"
        else:
            body = f"({v[0]} {self.inner} {v[1]}) {self.outer} {v[2]}"
        c = self.coeff
        if c == 1:
            return f"+ {body}"
        if c == -1:
            return f"- {body}"
        return f"{'+' if c > 0 else '-'} {abs(c)}*{body}"


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: tuple[ExprTerm, ...]
    rhs: tuple[ExprTerm, ...]
    variables: tuple[str, ...] = ("x", "y", "z")
    strong_form: bool = False

    def operations(self) -> set[str]:
        out = set()
        for t in self.lhs + self.rhs:
            out.add(t.outer)
            if t.inner:
                out.add(t.inner)
        return out

    def render(self) -> str:
        side = lambda ts: " ".join(t.render() for t in ts).lstrip("+ ") if ts else "0"
        return f"{side(self.lhs)} = {side(self.rhs)}"


@dataclass(frozen=True)
class AxiomSystem:
    name: str
    ops: tuple[str, ...]
    identities: tuple[Identity, ...]
    derived_ops: Mapping[str, Recipe] = field(default_factory=dict)

    @property
    def arity(self) -> int:
        return len(self.ops)

    def __post_init__(self):
        known = set(self.ops) | set(self.derived_ops)
        for ident in self.identities:
            missing = ident.operations() - known
            if missing:
                raise AlgebraError(f"{self.name}/{ident.name}: unknown operations {sorted(missing)}")


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+(?:/\d+)?|[A-Za-z_]\w*|[()+\-*=])")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise AlgebraError(f"unexpected character in {text!r} at offset {pos}")
        out.append(m.group(1))
        pos = m.end()
    return out


_VARS = ("x", "y", "z")


def _parse_side(tokens: list[str]) -> tuple[ExprTerm, ...]:
    if tokens == ["0"]:
        return ()
    terms, i = [], 0

    def expect_var():
        nonlocal i
        if i >= len(tokens) or tokens[i] not in _VARS:
            raise AlgebraError(f"expected a variable at token {i} of {' '.join(tokens)!r}")
        i += 1
        return tokens[i - 1]

    def expect_op():
        nonlocal i
        if i >= len(tokens) or not re.fullmatch(r"[A-Za-z_]\w*", tokens[i]) or tokens[i] in _VARS:
            raise AlgebraError(f"expected an operation at token {i} of {' '.join(tokens)!r}")
        i += 1
        return tokens[i - 1]

    def expect(tok):
        nonlocal i
        if i >= len(tokens) or tokens[i] != tok:
            raise AlgebraError(f"expected {tok!r} at token {i} of {' '.join(tokens)!r}")
        i += 1

    while i < len(tokens):
        sign = 1
        if tokens[i] in "+-":
            sign = -1 if tokens[i] == "-" else 1
            i += 1
        elif terms:
            raise AlgebraError(f"missing sign at token {i} of {' '.join(tokens)!r}")
        coeff = Fraction(1)
        if i < len(tokens) and re.fullmatch(r"\d+(?:/\d+)?", tokens[i]):
            coeff = Fraction(tokens[i])
            i += 1
            expect("*")
        if i < len(tokens) and tokens[i] == "(":
            i += 1
            a = expect_var()
            inner = expect_op()
            b = expect_var()
            expect(")")
            outer = expect_op()
            c = expect_var()
            terms.append(ExprTerm(sign * coeff, outer, inner, "left", (a, b, c)))
        else:
            a = expect_var()
            outer = expect_op()
            if i < len(tokens) and tokens[i] == "(":
                i += 1
                b = expect_var()
                inner = expect_op()
                c = expect_var()
                expect(")")
                terms.append(ExprTerm(sign * coeff, outer, inner, "right", (a, b, c)))
            else:
                b = expect_var()
                terms.append(ExprTerm(sign * coeff, outer, None, "flat", (a, b)))
    return tuple(terms)


def parse_identity(name: str, text: str, strong_form: bool = False) -> Identity:
    """Parse ``"x se (y se z) - (x star y) se z = ..."`` into an :class:`Identity`."""
    tokens = _tokenize(text)
    if tokens.count("=") != 1:
        raise AlgebraError(f"{name}: an identity needs exactly one '='")
    k = tokens.index("=")
    lhs, rhs = _parse_side(tokens[:k]), _parse_side(tokens[k + 1:])
    arities = {len(t.variables) for t in lhs + rhs}
    if len(arities) != 1:
        raise AlgebraError(f"{name}: mixed term depths")
    nvars = arities.pop()
    variables = _VARS[:nvars]
    for t in lhs + rhs:
        if sorted(t.variables) != list(variables):
            raise AlgebraError(f"{name}: term variables {t.variables} are not a permutation of {variables}")
    return Identity(name, lhs, rhs, variables, strong_form)


def _same_terms(a: tuple[ExprTerm, ...], b: tuple[ExprTerm, ...]) -> bool:
    return sorted(map(repr, a)) == sorted(map(repr, b))


def strong_identities(identities: tuple[Identity, ...]) -> tuple[Identity, ...]:
    """Split ``lhs = rhs`` into ``lhs = 0`` and ``rhs = 0``.

    When the right side is the left side with x and y exchanged the two
    conditions are equivalent, and only the left side is kept.
    """
    out = []
    for ident in identities:
        if _same_terms(ident.rhs, tuple(t.swap_xy() for t in ident.lhs)):
            out.append(Identity(ident.name, ident.lhs, (), ident.variables, True))
        else:
            out.append(Identity(f"{ident.name}.left", ident.lhs, (), ident.variables, True))
            out.append(Identity(f"{ident.name}.right", ident.rhs, (), ident.variables, True))
    return tuple(out)


@lru_cache(maxsize=1)
def _axiom_data() -> dict:
    text = resources.files("lquadri").joinpath("data/axioms.json").read_text(encoding="utf-8")
    return json.loads(text)


def builtin_system(tag: str) -> AxiomSystem:
    """The built-in axiom system of a structure class.

    >>> len(builtin_system("quadri").identities)
    9
    """
    data = _axiom_data()
    strong = data["strong_forms"]
    base_tag = strong.get(tag, tag)
    if base_tag not in data["systems"]:
        raise AlgebraError(f"no axiom system for {tag!r}")
    spec = data["systems"][base_tag]
    derived = {k: parse_recipe(v) for k, v in spec["derived"].items()}
    identities = tuple(parse_identity(d["name"], d["identity"]) for d in spec["identities"])
    if tag in strong:
        identities = strong_identities(identities)
    ops = tuple(spec["ops"])
    if ops != KIND_OPS[tag]:
        raise AlgebraError(f"axiom table for {tag!r} disagrees with canonical operation names")
    return AxiomSystem(tag, ops, identities, derived)


# -- evaluation ------------------------------------------------------------------

def extended_table(alg: MultiAlgebra, system: AxiomSystem) -> dict[str, OpTensor]:
    table = alg.ops
    for name, recipe in system.derived_ops.items():
        table[name] = combine_ops(table, recipe)
    return table


def _term_tensor(term: ExprTerm, table: Mapping[str, np.ndarray], cache: dict) -> np.ndarray:
    """Integer tensor of one term (without its coefficient), axes ordered ``[x, y, (z,) k]``."""
    key = (term.outer, term.inner, term.nesting)
    if key not in cache:
        outer = table[term.outer]
        if term.inner is None:
            cache[key] = outer
        elif term.nesting == "right":
            # outer(a, inner(b, c))
            cache[key] = scalar.int_einsum("bcm,amk->abck", table[term.inner], outer)
        else:
            # outer(inner(a, b), c)
            cache[key] = scalar.int_einsum("abm,mck->abck", table[term.inner], outer)
    order = [term.variables.index(v) for v in sorted(term.variables)]
    return cache[key].transpose(order + [len(order)])


def _integer_sides(ident: Identity, table: Mapping[str, np.ndarray], den: int, n: int):
    """Both sides as integer arrays over a common denominator (returned last)."""
    shape = (n,) * (len(ident.variables) + 1)
    terms = ident.lhs + ident.rhs
    lcm = math.lcm(*(t.coeff.denominator for t in terms)) if terms else 1
    depth = 2 if ident.variables == _VARS else 1
    cache: dict = {}
    sides = []
    for side in (ident.lhs, ident.rhs):
        acc = np.zeros(shape, dtype=np.int64)
        for t in side:
            k = int(t.coeff * lcm)
            part = _term_tensor(t, table, cache)
            if acc.dtype != object and (
                abs(k) * scalar.max_abs(part) + scalar.max_abs(acc) >= scalar._INT64_SAFE
            ):
                acc = acc.astype(object)
            acc = acc + k * (part.astype(object) if acc.dtype == object else part)
        sides.append(acc)
    return sides[0], sides[1], lcm * den**depth


def identity_sides(ident: Identity, table: Mapping[str, np.ndarray], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Both sides as rational arrays indexed ``[x, y, (z,) k]``."""
    itable, den = scalar.integer_table(dict(table))
    lhs, rhs, d = _integer_sides(ident, itable, den, n)
    to_q = np.vectorize(lambda v: Fraction(v) / d, otypes=[object])
    return to_q(lhs), to_q(rhs)


def verify(alg: MultiAlgebra, system: AxiomSystem) -> VerificationReport:
    """Decide every identity of ``system`` on ``alg``, with first-failure witnesses."""
    if set(alg.ops) != set(system.ops):
        raise AlgebraError(
            f"{system.name} needs operations {list(system.ops)}, algebra has {sorted(alg.ops)}"
        )
    n = alg.dim
    table, den = scalar.integer_table({k: v.coeffs for k, v in extended_table(alg, system).items()})
    report = VerificationReport(system.name)
    for ident in system.identities:
        lhs, rhs, d = _integer_sides(ident, table, den, n)
        failure, checked = compare(ident.name, lhs, rhs, len(ident.variables), denominator=d)
        report.names.append(ident.name)
        report.checked += checked
        if failure is not None:
            report.failures.append(failure)
    return report


def verify_kind(alg: MultiAlgebra) -> VerificationReport:
    if alg.kind == "raw":
        raise AlgebraError("a raw algebra has no declared kind to verify")
    return verify(alg, builtin_system(alg.kind))


def verify_as(alg: MultiAlgebra, kind: str) -> VerificationReport:
    """Verify against ``kind`` regardless of the declared tag (same operation names)."""
    return verify(alg, builtin_system(kind))


def holds(alg: MultiAlgebra, kind: str | None = None) -> bool:
    return verify(alg, builtin_system(kind or alg.kind)).holds
