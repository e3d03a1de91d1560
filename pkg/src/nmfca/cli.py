"""Command-line interface.

Exit codes: 0 success, 1 a query does not hold under ``--assert``, 2 usage or
input errors, 3 an ``--oracle`` cross-check disagreed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Sequence, TextIO

from . import oracle
from .conditional import ARITY, LLEMode, VerifyMode, check_postulate, consequences, holds, verify_klm
from .context import FormalContext, load_context, models_implication, respects_implication
from .errors import ContextParseError, FCAError, UnknownNameError
from .lattice import ConceptLattice, FormalConcept, enumerate_concepts, lattice_from_json, lattice_to_json, to_dot
from .preference import ExtendedContext, PreferenceOrder, load_preferences
from .query import parse_query, split_names
from .typicality import enumerate_typical, is_valid_order, typical_meet_semilattice

COMMANDS = (
    "lattice", "derive", "implication", "conditional",
    "typical", "semilattice", "validate-order", "klm-check",
)
NEEDS_PREFS = {"conditional", "typical", "semilattice", "validate-order"}
ORACLE_SAMPLES = 200


class UsageError(Exception):
    pass


class OracleMismatch(Exception):
    pass


class QueryFailed(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("context", help="context file (.cxt, .csv, or lattice .json)")
    common.add_argument("--prefs", help="preference file with 'NAME < NAME' lines")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    common.add_argument("--assert", dest="assert_", action="store_true",
                        help="exit 1 when the answer is negative")

    parser = argparse.ArgumentParser(prog="nmfca", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("lattice", parents=[common], help="enumerate the concept lattice")
    p = sub.add_parser("derive", parents=[common], help="derive a concept from names")
    p.add_argument("query", help="comma-separated attribute (or object) names")
    p.add_argument("--objects", action="store_true", help="names are objects, not attributes")
    p = sub.add_parser("implication", parents=[common], help="evaluate 'A -> B' or 'A -> !B'")
    p.add_argument("query")
    p = sub.add_parser("conditional", parents=[common], help="evaluate 'A ~> B' or 'A ~> !B'")
    p.add_argument("query")
    sub.add_parser("typical", parents=[common], help="list typical concepts")
    sub.add_parser("semilattice", parents=[common], help="typical meet-semilattice diagnostics")
    sub.add_parser("validate-order", parents=[common], help="check the order is valid")
    p = sub.add_parser("klm-check", parents=[common], help="verify the KLM postulates")
    p.add_argument("--mode", choices=[m.value for m in VerifyMode], default="exhaustive")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lle", choices=[m.value for m in LLEMode], default="semantic")
    p.add_argument("--max-attributes", type=int, default=6)
    return parser


def _load_context(path: str) -> tuple[FormalContext, ConceptLattice | None]:
    if Path(path).suffix.lower() == ".json":
        lat = lattice_from_json(Path(path).read_text(encoding="utf-8"))
        return lat.context, lat
    return load_context(path), None


def _names(ctx: FormalContext, concept: FormalConcept) -> dict:
    return {"extent": ctx.object_names(concept.extent), "intent": ctx.attribute_names(concept.intent)}


def _fmt_set(names: list[str]) -> str:
    return "{" + ", ".join(names) + "}"


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _emit(out: TextIO, fmt: str, payload: dict, text: str) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


@contextmanager
def _source(path: str):
    """Tag parse errors raised inside the block with the file they came from."""
    try:
        yield
    except (ContextParseError, FCAError, ValueError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from exc


class InputError(Exception):
    pass


class Runner:
    def __init__(self, args: argparse.Namespace, out: TextIO):
        self.args = args
        self.out = out
        with _source(args.context):
            self.ctx, self.lat = _load_context(args.context)
        self.ext: ExtendedContext | None = None
        if args.prefs:
            with _source(args.prefs):
                self.ext = ExtendedContext(self.ctx, load_preferences(args.prefs, self.ctx))
        elif args.command in NEEDS_PREFS:
            raise UsageError(f"'{args.command}' needs --prefs")
        if args.format == "dot" and args.command != "lattice":
            raise UsageError("--format dot is only available for 'lattice'")

    @property
    def lattice(self) -> ConceptLattice:
        if self.lat is None:
            self.lat = enumerate_concepts(self.ctx)
        return self.lat

    def check(self, ok: bool, what: str) -> None:
        if self.args.oracle and not ok:
            raise OracleMismatch(what)

    def run(self) -> None:
        getattr(self, "cmd_" + self.args.command.replace("-", "_"))()

    def cmd_lattice(self) -> None:
        ctx, lat = self.ctx, self.lattice
        if self.args.oracle:
            self.check(set(lat.concepts) == set(oracle.brute_concepts(ctx)), "concept set differs from brute force")
        marks = enumerate_typical(self.ext, lat).concepts if self.ext else ()
        if self.args.format == "dot":
            self.out.write(to_dot(lat, marks))
            return
        lines = []
        for i, concept in enumerate(lat.concepts):
            star = " *" if i in marks else ""
            lines.append(f"c{i}: {_fmt_set(ctx.object_names(concept.extent))} "
                         f"{_fmt_set(ctx.attribute_names(concept.intent))}{star}")
        lines.append(f"top: c{lat.top}")
        lines.append(f"bottom: c{lat.bottom}")
        _emit(self.out, self.args.format, lattice_to_json(lat), "\n".join(lines))

    def cmd_derive(self) -> None:
        ctx = self.ctx
        names, columns = split_names(self.args.query, 0)
        kind = "object" if self.args.objects else "attribute"
        pool = ctx.objects if self.args.objects else ctx.attributes
        for name, col in zip(names, columns):
            if name not in pool:
                raise UnknownNameError(kind, name, col)
        indices = {pool.index(n) for n in names}
        payload: dict = {}
        if self.args.objects:
            derived = ctx.intent_mask(ctx.obj_mask(indices))
            closed = ctx.extent_mask(derived)
            payload["derivation"] = ctx.attribute_names(derived)
            payload["closure"] = ctx.object_names(closed)
            concept = FormalConcept.from_masks(closed, derived)
            if self.args.oracle:
                self.check(oracle.brute_derive_objects(ctx, indices) == concept.intent, "derivation differs")
        else:
            derived = ctx.extent_mask(ctx.attr_mask(indices))
            closed = ctx.intent_mask(derived)
            payload["derivation"] = ctx.object_names(derived)
            payload["closure"] = ctx.attribute_names(closed)
            concept = FormalConcept.from_masks(derived, closed)
            if self.args.oracle:
                self.check(oracle.brute_derive_attributes(ctx, indices) == concept.extent, "derivation differs")
            if self.ext is not None:
                minimal = self.ext.min_mask(ctx.attr_mask(indices))
                payload["min"] = ctx.object_names(minimal)
                payload["min_return"] = ctx.attribute_names(ctx.intent_mask(minimal))
                if self.args.oracle:
                    self.check(
                        set(ctx.object_names(oracle.brute_min(self.ext, indices))) == set(payload["min"]),
                        "minimised derivation differs",
                    )
        payload["concept"] = _names(ctx, concept)
        text = [f"derivation: {_fmt_set(payload['derivation'])}",
                f"closure: {_fmt_set(payload['closure'])}"]
        if "min" in payload:
            text += [f"min: {_fmt_set(payload['min'])}", f"min_return: {_fmt_set(payload['min_return'])}"]
        text.append(f"concept: {concept.describe(ctx)}")
        _emit(self.out, self.args.format, payload, "\n".join(text))

    def _query(self, defeasible: bool):
        query = parse_query(self.args.query)
        if query.defeasible != defeasible:
            want = "~>" if defeasible else "->"
            raise UsageError(f"'{self.args.command}' expects a '{want}' query")
        return query

    def _answer(self, query_text: str, result: bool, extra: dict | None = None) -> None:
        payload = {"query": query_text, "holds": result, **(extra or {})}
        lines = [f"holds: {_bool(result)}"]
        for key, value in (extra or {}).items():
            lines.append(f"{key}: {_fmt_set(value)}")
        _emit(self.out, self.args.format, payload, "\n".join(lines))
        if self.args.assert_ and not result:
            raise QueryFailed(query_text)

    def cmd_implication(self) -> None:
        query = self._query(defeasible=False)
        imp = query.implication(self.ctx)
        result = models_implication(self.ctx, imp)
        if self.args.oracle:
            brute = all(
                respects_implication(oracle.brute_derive_objects(self.ctx, [g]), imp)
                for g in range(self.ctx.n_objects)
            )
            self.check(brute == result, "implication differs from object-wise check")
        self._answer(str(query), result)

    def cmd_conditional(self) -> None:
        query = self._query(defeasible=True)
        cond = query.conditional(self.ctx)
        result = holds(self.ext, cond)
        if self.args.oracle:
            brute = oracle.brute_holds(self.ext, cond.premise, cond.conclusion, cond.negated)
            self.check(brute == result, "conditional differs from brute force")
        cn = self.ctx.attribute_names(consequences(self.ext, cond.premise))
        self._answer(str(query), result, {"consequences": cn})

    def _typical_report(self, semilattice: bool) -> None:
        ext, lat, ctx = self.ext, self.lattice, self.ctx
        if semilattice:
            ts = typical_meet_semilattice(ext, lat)
        else:
            base = enumerate_typical(ext, lat)
            valid, witness = is_valid_order(ext, lat)
            ts = type(base)(**{**base.__dict__, "valid_order": valid, "validity_witness": witness})
        if self.args.oracle:
            for i, concept in enumerate(lat.concepts):
                self.check(oracle.brute_is_typical(ext, concept) == (i in ts.concepts),
                           f"typicality of c{i} differs from brute force")
            if ctx.n_attributes <= oracle.BRUTE_VALIDITY_BOUND:
                self.check(oracle.brute_valid_order(ext) == ts.valid_order, "order validity differs")
        payload = ts.to_json(lat)
        lines = []
        if semilattice:
            lines.append(f"typical: {', '.join(f'c{i}' for i in ts.concepts)}")
            lines.append(f"meet_closed: {_bool(ts.meet_closed)}")
            if ts.meet_counterexample:
                i, j, k = ts.meet_counterexample
                lines.append(f"meet_counterexample: c{i} ^ c{j} = c{k} {lat.concept(k).describe(ctx)}")
            lines.append(f"has_top: {_bool(ts.has_top)}")
            if ts.join_counterexample:
                i, j = ts.join_counterexample
                k = lat.join(i, j)
                lines.append(f"join_counterexample: c{i} v c{j} = c{k} {lat.concept(k).describe(ctx)}")
            else:
                lines.append("join_counterexample: none")
        else:
            for i in ts.concepts:
                lines.append(f"c{i}: {lat.concept(i).describe(ctx)}")
        lines.append(f"valid_order: {_bool(ts.valid_order)}")
        if ts.validity_witness is not None:
            lines.append(f"validity_witness: {_fmt_set(ctx.attribute_names(ts.validity_witness))}")
        _emit(self.out, self.args.format, payload, "\n".join(lines))
        if self.args.assert_ and semilattice and not ts.meet_closed:
            raise QueryFailed("typical concepts are not meet-closed")

    def cmd_typical(self) -> None:
        self._typical_report(semilattice=False)

    def cmd_semilattice(self) -> None:
        self._typical_report(semilattice=True)

    def cmd_validate_order(self) -> None:
        ctx = self.ctx
        valid, witness = is_valid_order(self.ext, self.lattice)
        if self.args.oracle and ctx.n_attributes <= oracle.BRUTE_VALIDITY_BOUND:
            self.check(oracle.brute_valid_order(self.ext) == valid, "order validity differs from brute force")
        names = None if witness is None else ctx.attribute_names(witness)
        payload = {"valid_order": valid, "validity_witness": names}
        lines = [f"valid_order: {_bool(valid)}"]
        if names is not None:
            minimal = self.ext.min_mask(ctx.attr_mask(witness))
            closed = ctx.extent_mask(ctx.intent_mask(minimal))
            lines.append(f"validity_witness: {_fmt_set(names)}")
            lines.append(f"min: {_fmt_set(ctx.object_names(minimal))} closure: {_fmt_set(ctx.object_names(closed))}")
        _emit(self.out, self.args.format, payload, "\n".join(lines))
        if self.args.assert_ and not valid:
            raise QueryFailed("order is not valid")

    def cmd_klm_check(self) -> None:
        args = self.args
        ext = self.ext or ExtendedContext(self.ctx, PreferenceOrder.empty(self.ctx.n_objects))
        if args.mode == "sampled" and args.samples < 1:
            raise UsageError("--samples must be >= 1 in sampled mode")
        reports = verify_klm(ext, args.mode, args.samples, args.seed,
                             max_attributes=args.max_attributes, lle=args.lle)
        if args.oracle:
            self._cross_check_klm(ext, reports)
        payload = {"mode": args.mode, "seed": args.seed, "reports": [r.to_json(self.ctx) for r in reports]}
        lines = []
        for r in reports:
            lines.append(f"{r.postulate.value}: checked={r.checked} violations={len(r.violations)}")
            for w in r.violations[:3]:
                lines.append("  witness: " + " ".join(_fmt_set(self.ctx.attribute_names(s)) for s in w))
        _emit(self.out, args.format, payload, "\n".join(lines))
        if args.assert_ and any(r.violations for r in reports):
            raise QueryFailed("postulate violations found")

    def _cross_check_klm(self, ext: ExtendedContext, reports) -> None:
        syntactic = self.args.lle == "syntactic"
        m = self.ctx.n_attributes
        rng = random.Random(self.args.seed)
        for r in reports:
            name = r.postulate.value
            for w in r.violations:
                self.check(not oracle.brute_check_postulate(ext, name, w, syntactic),
                           f"{name} witness is not a real violation")
            for _ in range(ORACLE_SAMPLES):
                sets = [frozenset(j for j in range(m) if rng.random() < 0.5)
                        for _ in range(ARITY[r.postulate])]
                fast = check_postulate(ext, r.postulate, sets, lle=self.args.lle)
                self.check(fast == oracle.brute_check_postulate(ext, name, sets, syntactic),
                           f"{name} instance check differs from brute force")


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        Runner(args, out).run()
    except QueryFailed:
        return 1
    except OracleMismatch as exc:
        err.write(f"nmfca: oracle mismatch: {exc}\n")
        return 3
    except (UsageError, InputError, FCAError, ValueError, KeyError) as exc:
        err.write(f"nmfca: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"nmfca: {exc.strerror or exc}: {exc.filename}\n")
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
