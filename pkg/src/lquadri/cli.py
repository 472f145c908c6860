"""Command-line interface: ``lquadri <command> ...``.

Exit codes: 0 when the checked statement holds, 1 when it is false (witnesses
are printed on standard output), 2 on usage or file-format errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import corpus, scalar
from .axioms import verify_as, verify_kind
from .bimodule import (
    DEFAULT_SEARCH_CAP,
    LQUADRI_BIMODULES,
    Bimodule,
    OOperator,
    PreconditionFailed,
    SHAPES,
    associated_ldend,
    dual_bimodule,
    dual_representation,
    induce,
    induce_on_image,
    lift_via_cocycle,
    lquadri_bimodule,
    rb_tower,
    regular_bimodule,
    search_rb,
    shape_of,
)
from .core import KIND_OPS, KINDS, AlgebraError, LinearMap
from .derived import FUNCTORS, apply_functor, named_products
from .forms import (
    DEFAULT_READING,
    INVARIANCE,
    check_cocycle_ldend,
    check_cocycle_lquadri,
    check_invariant_lquadri,
)
from .report import VerificationReport
from .serialize import AlgebraFile, FormatError, _array, dumps, wrap
from .yangbaxter import TensorPair, canonical_r, central_extension, check_cybe, check_ld_equation, check_lq_equation

#: default flavor when a functor is named without one
DEFAULT_FLAVOR = {"ldend_to_prelie": "horizontal", "lquadri_to_ldend": "horizontal", "lquadri_to_prelie": "circ"}

EQUATIONS = {"cybe": check_cybe, "ld": check_ld_equation, "lq": check_lq_equation}
EQUATION_KINDS = {"cybe": "lie", "ld": "l-dendriform", "lq": "l-quadri"}


class UsageError(AlgebraError):
    pass


# -- helpers ----------------------------------------------------------------------

def _emit_report(rep: VerificationReport, as_json: bool) -> int:
    if as_json:
        print(json.dumps(rep.to_dict(), indent=1))
    else:
        print(rep.render())
    return 0 if rep.holds else 1


def _emit_reports(reports: dict[str, VerificationReport], as_json: bool) -> int:
    if as_json:
        print(json.dumps({k: r.to_dict() for k, r in reports.items()}, indent=1))
    else:
        print("\n".join(r.render() for r in reports.values()))
    return 0 if all(r.holds for r in reports.values()) else 1


def _write(f: AlgebraFile, out: str | None) -> None:
    text = dumps(f)
    if out:
        Path(out).write_text(text, encoding="utf-8")
        print(f"wrote {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _named(section: dict, name: str, what: str, src: str):
    if name not in section:
        known = ", ".join(sorted(section)) or "none"
        raise UsageError(f"{src}: no {what} named {name!r} (available: {known})")
    return section[name]


def _functor_name(name: str) -> str:
    if name in FUNCTORS:
        return name
    if name in DEFAULT_FLAVOR:
        return f"{name}:{DEFAULT_FLAVOR[name]}"
    raise UsageError(f"unknown functor {name!r}; known: {', '.join(sorted(FUNCTORS))}")


def load_bimodule(ref: str, f: AlgebraFile) -> tuple[Bimodule, dict]:
    """Bimodule over the algebra of ``f``.

    ``ref`` is ``regular``, ``coregular`` (the dual of the regular bimodule, or
    the coadjoint representation of a Lie algebra), ``lquadri:<flavor>`` (the
    multiplication bimodule of a four-operation algebra over its horizontal,
    vertical or depth L-dendriform algebra), ``dual-lquadri:<flavor>``, or the
    path of a JSON bimodule file.  Returns the bimodule and any maps stored in
    the bimodule file.
    """
    alg = f.algebra
    if ref in ("regular", "coregular"):
        m = regular_bimodule(alg)
        if ref == "coregular":
            m = dual_representation(m) if m.shape == "lie" else dual_bimodule(m)
        return m, {}
    for prefix, dual in (("lquadri:", False), ("dual-lquadri:", True)):
        if ref.startswith(prefix):
            m = lquadri_bimodule(alg, ref[len(prefix):])
            return (dual_bimodule(m) if dual else m), {}
    try:
        data = json.loads(Path(ref).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FormatError(f"{ref}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{ref}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return bimodule_from_dict(data, f, ref)


BIMODULE_FIELDS = {"format", "shape", "base", "module_dim", "actions", "multiplications", "dual", "maps"}


def bimodule_from_dict(data: dict, f: AlgebraFile, where: str = "bimodule") -> tuple[Bimodule, dict]:
    """Bimodule file: either ``actions`` (name -> n x m x m array, with
    ``module_dim``) or ``multiplications`` (e.g. ``["L:se", "-L:nw", "L:ne", "-L:sw"]``)
    over the algebra of ``f``; ``base`` picks which L-dendriform algebra of a
    four-operation algebra acts; ``dual: true`` replaces the result by its dual;
    ``maps`` may carry operators ``V -> A``."""
    if not isinstance(data, dict):
        raise FormatError(f"{where}: top level must be an object")
    unknown = set(data) - BIMODULE_FIELDS
    if unknown:
        raise FormatError(f"{where}: unknown field(s): {', '.join(sorted(unknown))}")
    alg = f.algebra
    base = alg
    if "base" in data:
        flavor = data["base"]
        if flavor not in LQUADRI_BIMODULES:
            raise FormatError(f"{where}: base: unknown flavor {flavor!r}")
        base = associated_ldend(alg, flavor)
    shape = data.get("shape") or shape_of(base)
    if shape not in SHAPES:
        raise FormatError(f"{where}: shape: unknown shape {shape!r}")
    if ("actions" in data) == ("multiplications" in data):
        raise FormatError(f"{where}: give exactly one of actions and multiplications")
    if "multiplications" in data:
        specs = data["multiplications"]
        if not isinstance(specs, list) or not all(isinstance(s, str) for s in specs):
            raise FormatError(f"{where}: multiplications must be a list of strings")
        products = named_products(alg) if set(alg.ops) in ({*KIND_OPS["l-quadri"]}, {*KIND_OPS["l-dendriform"]}) else alg.ops
        m = Bimodule.from_multiplications(base, specs, products, shape)
    else:
        k = data.get("module_dim")
        if not isinstance(k, int) or isinstance(k, bool) or k < 0:
            raise FormatError(f"{where}: module_dim must be a non-negative integer")
        acts = data["actions"]
        if not isinstance(acts, dict):
            raise FormatError(f"{where}: actions must be an object")
        arrays = {name: _array(v, (base.dim, k, k), f"{where}: actions.{name}") for name, v in acts.items()}
        m = Bimodule(base, k, arrays, shape)
    if data.get("dual", False):
        m = dual_representation(m) if m.shape == "lie" else dual_bimodule(m)
    maps = {}
    for name, v in (data.get("maps") or {}).items():
        maps[name] = LinearMap(scalar.as_array(v))
    return m, maps


# -- commands ---------------------------------------------------------------------

def cmd_verify(args) -> int:
    f = corpus.resolve(args.file)
    rep = verify_as(f.algebra, args.kind) if args.kind else verify_kind(f.algebra)
    return _emit_report(rep, args.json)


def cmd_derive(args) -> int:
    f = corpus.resolve(args.file)
    name = _functor_name(args.functor)
    out = apply_functor(f.algebra, name)
    _write(wrap(out, f"{f.name}/{name}" if f.name else name, f"{name} applied to {f.name or args.file}"), args.output)
    return 0


def _maps_by_name(f: AlgebraFile, names: str, src: str) -> list[LinearMap]:
    return [_named(f.maps, n.strip(), "map", src) for n in names.split(",") if n.strip()]


def cmd_rb_tower(args) -> int:
    f = corpus.resolve(args.file)
    Rs = _maps_by_name(f, args.maps, args.file)
    out = rb_tower(f.algebra, Rs)
    _write(wrap(out, f"{f.name}/rb-tower", f"rb_tower with {args.maps} on {f.name or args.file}"), args.output)
    return 0


def cmd_induce(args) -> int:
    f = corpus.resolve(args.file)
    m, extra = load_bimodule(args.bimodule, f)
    T = _named({**f.maps, **extra}, args.map, "map", args.file)
    op = OOperator(T, m)
    if args.on_image:
        img = induce_on_image(op)
        out = img.algebra
    else:
        out = induce(op)
    _write(wrap(out, f"{f.name}/induced", f"induced by {args.map} on {f.name or args.file}"), args.output)
    return 0


def cmd_cocycle_lift(args) -> int:
    f = corpus.resolve(args.file)
    B = _named(f.forms, args.form, "form", args.file)
    out = lift_via_cocycle(f.algebra, B, reading=args.reading).lquadri
    _write(wrap(out, f"{f.name}/lift", f"lift_via_cocycle along {args.form} on {f.name or args.file}",
                forms={args.form: B}), args.output)
    return 0


def cmd_central_ext(args) -> int:
    f = corpus.resolve(args.file)
    B = _named(f.forms, args.form, "form", args.file)
    ext = central_extension(f.algebra, B)
    reports = {"extension": ext.extension, "conditions": ext.conditions, **{f"omega-{k}": r for k, r in ext.omega.items()}}
    code = _emit_reports(reports, args.json)
    if args.output:
        _write(wrap(ext.algebra, f"{f.name}/central-ext", f"central extension by {args.form}"), args.output)
    return 0 if ext.extension.holds else max(code, 1)


def cmd_canonical_r(args) -> int:
    f = corpus.resolve(args.file)
    c = canonical_r(f.algebra)
    amb = c.ambients[args.flavor]
    _write(wrap(amb, f"{f.name}/canonical-r-{args.flavor}",
                f"semidirect product over the dual {args.flavor} bimodule; r = sum e_i (x) e_i* - e_i* (x) e_i",
                forms={"B": c.form}, tensors={"r": c.r}), args.output)
    return 0


def cmd_check_r(args) -> int:
    f = corpus.resolve(args.file)
    r = TensorPair(f.algebra, _named(f.tensors, args.tensor, "tensor", args.file))
    kind = EQUATION_KINDS[args.equation]
    if set(f.algebra.ops) != set(KIND_OPS[kind]):
        raise UsageError(f"--equation {args.equation} needs kind {kind}; {args.file} has operations "
                         f"{', '.join(sorted(f.algebra.ops))}")
    return _emit_report(EQUATIONS[args.equation](f.algebra, r), args.json)


def cmd_check_form(args) -> int:
    f = corpus.resolve(args.file)
    alg, B = f.algebra, _named(f.forms, args.form, "form", args.file)
    four = set(alg.ops) == set(KIND_OPS["l-quadri"])
    if args.condition == "invariant":
        if not four:
            raise UsageError("invariance needs a four-operation algebra")
        rep = check_invariant_lquadri(alg, B, args.reading)
    elif four:
        rep = check_cocycle_lquadri(alg, B)
    elif set(alg.ops) == set(KIND_OPS["l-dendriform"]):
        rep = check_cocycle_ldend(alg, B)
    else:
        raise UsageError(f"no 2-cocycle condition for operations {sorted(alg.ops)}")
    return _emit_report(rep, args.json)


def cmd_search_rb(args) -> int:
    f = corpus.resolve(args.file)
    try:
        entries = [scalar.parse_scalar(v.strip()) for v in args.entries.split(",")]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--entries: {exc}") from None
    found = search_rb(f.algebra, entries, max_results=args.max_results, diagonal=args.diagonal, cap=args.cap)
    if args.json:
        print(json.dumps([scalar.to_nested(R.matrix) for R in found]))
    else:
        print(f"{len(found)} Rota-Baxter operator(s)")
        for i, R in enumerate(found, 1):
            rows = "; ".join(" ".join(scalar.format_scalar(v) for v in row) for row in R.matrix)
            print(f"R{i}: [{rows}]")
    return 0


def cmd_corpus(args) -> int:
    if args.action == "list":
        for name in corpus.names():
            f = corpus.get(name)
            print(f"{name:22s} {f.algebra.kind:13s} dim {f.algebra.dim}")
        return 0
    if not args.name:
        raise UsageError("corpus show needs a name")
    f = corpus.get(args.name)
    if args.raw:
        sys.stdout.write(corpus.text(args.name))
        return 0
    print(f"name: {f.name or args.name}")
    print(f"kind: {f.algebra.kind}  dim: {f.algebra.dim}")
    for label, section in (("maps", f.maps), ("forms", f.forms), ("tensors", f.tensors)):
        if section:
            print(f"{label}: {', '.join(sorted(section))}")
    print(f"provenance: {f.provenance}")
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lquadri", description="Exact verification and constructions for "
                                "Lie, pre-Lie, dendriform, quadri and octo type algebras.")
    sub = p.add_subparsers(dest="command", required=True)
    file_help = "algebra file, or corpus:<name> for a bundled example"

    def common(sp, output=False):
        sp.add_argument("file", help=file_help)
        sp.add_argument("--json", action="store_true", help="structured output")
        if output:
            sp.add_argument("-o", "--output", help="write the result here instead of standard output")
        return sp

    sp = common(sub.add_parser("verify", help="check the axioms of a kind"))
    sp.add_argument("--as", dest="kind", choices=[k for k in KINDS if k != "raw"], help="kind to check against")
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("derive", help="apply a derived-structure functor"), output=True)
    sp.add_argument("--functor", required=True,
                    help="e.g. lquadri_to_ldend:vertical, subadjacent_lie, transpose, symmetry:a")
    sp.set_defaults(func=cmd_derive)

    cons = sub.add_parser("construct", help="build a new algebra").add_subparsers(dest="construction", required=True)
    sp = common(cons.add_parser("rb-tower", help="Rota-Baxter tower"), output=True)
    sp.add_argument("--maps", required=True, help="comma-separated map names from the file, e.g. R,R,R")
    sp.set_defaults(func=cmd_rb_tower)
    sp = common(cons.add_parser("induce", help="structure induced by an O-operator"), output=True)
    sp.add_argument("--bimodule", required=True,
                    help="regular, coregular, lquadri:<flavor>, dual-lquadri:<flavor> or a bimodule file")
    sp.add_argument("--map", required=True, help="map name (algebra file or bimodule file)")
    sp.add_argument("--on-image", action="store_true", help="transport to the image of the map")
    sp.set_defaults(func=cmd_induce)
    sp = common(cons.add_parser("cocycle-lift", help="four-operation lift along a skew 2-cocycle"), output=True)
    sp.add_argument("--form", required=True)
    sp.add_argument("--reading", choices=sorted(INVARIANCE), default=DEFAULT_READING)
    sp.set_defaults(func=cmd_cocycle_lift)
    sp = common(cons.add_parser("central-ext", help="one-dimensional central extension"), output=True)
    sp.add_argument("--form", required=True)
    sp.set_defaults(func=cmd_central_ext)
    sp = common(cons.add_parser("canonical-r", help="canonical solution on the double"), output=True)
    sp.add_argument("--flavor", choices=sorted(LQUADRI_BIMODULES), default="horizontal",
                    help="which dual bimodule builds the ambient algebra")
    sp.set_defaults(func=cmd_canonical_r)

    sp = common(sub.add_parser("check-r", help="check a tensor equation"))
    sp.add_argument("--tensor", required=True)
    sp.add_argument("--equation", required=True, choices=sorted(EQUATIONS))
    sp.set_defaults(func=cmd_check_r)

    sp = common(sub.add_parser("check-form", help="check a bilinear-form condition"))
    sp.add_argument("--form", required=True)
    sp.add_argument("--condition", required=True, choices=["cocycle", "invariant"])
    sp.add_argument("--reading", choices=sorted(INVARIANCE), default=DEFAULT_READING)
    sp.set_defaults(func=cmd_check_form)

    sp = common(sub.add_parser("search-rb", help="exhaustive Rota-Baxter search"))
    sp.add_argument("--entries", default="-1,0,1", help="comma-separated entry values")
    sp.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP, help="largest search space allowed")
    sp.add_argument("--max-results", type=int, default=None)
    sp.add_argument("--diagonal", action="store_true")
    sp.set_defaults(func=cmd_search_rb)

    sp = sub.add_parser("corpus", help="bundled examples")
    sp.add_argument("action", choices=["list", "show"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("--raw", action="store_true", help="print the file itself")
    sp.set_defaults(func=cmd_corpus)
    return p


def _join_value_flags(argv: list[str]) -> list[str]:
    """``--entries -1,0,1`` would read as an option; pass it as ``--entries=-1,0,1``."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--entries" and i + 1 < len(argv):
            out.append(f"--entries={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_value_flags(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PreconditionFailed as exc:
        print(f"false: {exc}")
        return 1
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
