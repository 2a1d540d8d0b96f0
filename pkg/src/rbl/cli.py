"""Command-line interface.

Exit codes: 0 success (Proved, valid, check passed), 1 refuted (countermodel
found, check failed), 2 unknown, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import sexpr
from .algebra import (FiniteRba, SizeLimit, check_basic_reduct, check_equality_criterion, check_product_laws,
                      check_rba_axioms, check_unit_remark, enumerate_rbas, eval_in_algebra)
from .hilbert import ProofFormatError, check_hilbert_proof, parse_hilbert_proof
from .kripke import BplModel, LanguageError, check_bpl_model, eval_bpl
from .lrbl import (MalformedProof, Proved, Refuted, SearchConfig, check_proof, eliminate_mix,
                   from_sexpr, prove, refute, to_sexpr)
from .simple_calc import SystemId, check_simple
from .simple_calc import from_sexpr as simple_from_sexpr
from .syntax import (ParseError, atoms, formula_depth, is_bpl, mu, parse_formula, parse_sequent, parse_simple_sequent,
                     parse_structure, print_formula, print_sequent, print_structure)
from .ternary import TernaryModel, check_ternary_model, eval_ternary, lift_bpl, sequent_counterstate

OK, REFUTED, UNKNOWN, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


class Out:
    """Collects the human text or the JSON document and writes it once."""

    def __init__(self, args):
        self.json = getattr(args, "json", False)
        self.lines: list[str] = []
        self.data: dict = {}

    def say(self, text: str):
        self.lines.append(text)

    def flush(self):
        if self.json:
            print(_dump(self.data))
        elif self.lines:
            print("\n".join(self.lines))


def _write(path: Optional[str], text: str):
    if path:
        Path(path).write_text(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(str(e)) from e


def _load_json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: {e}") from e


def _config(args) -> SearchConfig:
    return SearchConfig(profile=args.profile, depth_bound=args.depth, contraction_budget=args.contraction_budget,
                        countermodel_size=args.max_size)


def _verdict_json(v) -> dict:
    if isinstance(v, Proved):
        return {"verdict": "Proved", "proof": to_sexpr(v.proof), "size": v.proof.size(), "height": v.proof.height()}
    if isinstance(v, Refuted):
        return _refuted_json(v)
    return {"verdict": "Unknown", "report": v.report}


def _refuted_json(v: Refuted) -> dict:
    if isinstance(v.model, TernaryModel):
        return {"verdict": "Refuted", "kind": "ternary", "model": v.model.to_json(), "state": v.state,
                "base": v.base.to_json() if v.base is not None else None}
    return {"verdict": "Refuted", "kind": "algebra", "model": v.model.to_json(), "assignment": v.state}


def _verdict_code(v) -> int:
    return OK if isinstance(v, Proved) else REFUTED if isinstance(v, Refuted) else UNKNOWN


# ---------------------------------------------------------------------------
# commands


def cmd_parse(args, out: Out) -> int:
    kind = args.kind
    if kind == "formula":
        f = parse_formula(args.text)
        out.data = {"kind": kind, "text": print_formula(f), "depth": formula_depth(f),
                    "atoms": sorted(atoms(f)), "bpl": is_bpl(f)}
    elif kind == "structure":
        s = parse_structure(args.text)
        out.data = {"kind": kind, "text": print_structure(s), "mu": print_formula(mu(s))}
    elif kind == "simple":
        s = parse_simple_sequent(args.text)
        out.data = {"kind": kind, "text": f"{print_formula(s.lhs)} => {print_formula(s.rhs)}"}
    else:
        s = parse_sequent(args.text)
        out.data = {"kind": kind, "text": print_sequent(s), "mu": print_formula(mu(s.antecedent))}
    out.say(out.data["text"])
    return OK


def cmd_prove(args, out: Out) -> int:
    s = parse_sequent(args.sequent)
    v = prove(s, _config(args))
    out.data = {"sequent": print_sequent(s), "profile": args.profile, **_verdict_json(v)}
    out.say(type(v).__name__)
    if isinstance(v, Proved):
        text = to_sexpr(v.proof)
        out.say(text.rstrip())
        _write(args.out, text)
    elif isinstance(v, Refuted):
        doc = _refuted_json(v)
        out.say(_dump(doc))
        _write(args.out, _dump(doc) + "\n")
    else:
        out.say(_dump(v.report))
    return _verdict_code(v)


def cmd_countermodel(args, out: Out) -> int:
    s = parse_sequent(args.sequent)
    found = refute(s, _config(args))
    out.data = {"sequent": print_sequent(s)}
    if found is None:
        out.data["verdict"] = "NoCountermodel"
        out.say(f"no countermodel up to size {args.max_size}")
        return OK
    doc = _refuted_json(found)
    out.data.update(doc)
    out.say(_dump(doc))
    _write(args.out, _dump(doc) + "\n")
    return REFUTED


def cmd_check_proof(args, out: Out) -> int:
    t = from_sexpr(_read(args.file))
    res = check_proof(t, args.profile)
    out.data = {"ok": res.ok, "where": list(res.where), "rule": res.rule, "reason": res.reason,
                "conclusion": print_sequent(t.conclusion), "cut_free": t.is_cut_free()}
    out.say("ok" if res else f"fails at node {list(res.where)} ({res.rule}): {res.reason}")
    return OK if res else REFUTED


def cmd_eliminate_mix(args, out: Out) -> int:
    t = from_sexpr(_read(args.file))
    res = eliminate_mix(t)
    text = to_sexpr(res)
    out.data = {"conclusion": print_sequent(res.conclusion), "proof": text, "size_before": t.size(),
                "size_after": res.size()}
    out.say(text.rstrip())
    _write(args.out, text)
    return OK


def _eval_targets(args):
    if args.formula:
        return parse_formula(args.formula)
    return None


def cmd_check_model(args, out: Out) -> int:
    m = BplModel.from_json(_load_json(args.file))
    bad = check_bpl_model(m)
    out.data = {"worlds": m.worlds, "violations": [str(v) for v in bad]}
    if bad:
        out.say("\n".join(str(v) for v in bad))
        return REFUTED
    f = _eval_targets(args)
    if f is None:
        out.say("model ok")
        return OK
    worlds = [args.world] if args.world is not None else list(range(m.worlds))
    truth = {w: eval_bpl(m, w, f) for w in worlds}
    out.data["formula"] = print_formula(f)
    out.data["truth"] = {str(w): t for w, t in truth.items()}
    out.say(" ".join(f"{w}:{'T' if t else 'F'}" for w, t in truth.items()))
    return OK if all(truth.values()) else REFUTED


def cmd_check_ternary(args, out: Out) -> int:
    j = TernaryModel.from_json(_load_json(args.file))
    bad = check_ternary_model(j)
    out.data = {"states": j.states, "violations": bad}
    if bad:
        out.say("\n".join(bad))
        return REFUTED
    if args.sequent:
        s = parse_sequent(args.sequent)
        state = sequent_counterstate(j, s)
        out.data.update({"sequent": print_sequent(s), "counterstate": state})
        out.say("true" if state is None else f"false at state {state}")
        return OK if state is None else REFUTED
    f = _eval_targets(args)
    if f is None:
        out.say("model ok")
        return OK
    states = [args.world] if args.world is not None else list(range(j.states))
    truth = {a: eval_ternary(j, a, f) for a in states}
    out.data["formula"] = print_formula(f)
    out.data["truth"] = {str(a): t for a, t in truth.items()}
    out.say(" ".join(f"{a}:{'T' if t else 'F'}" for a, t in truth.items()))
    return OK if all(truth.values()) else REFUTED


def cmd_lift(args, out: Out) -> int:
    m = BplModel.from_json(_load_json(args.file))
    bad = check_bpl_model(m)
    if bad:
        raise InputError("not a transitive persistent model: " + "; ".join(str(v) for v in bad))
    doc = lift_bpl(m).to_json()
    out.data = doc
    out.say(_dump(doc))
    _write(args.out, _dump(doc) + "\n")
    return OK


def cmd_enumerate_algebras(args, out: Out) -> int:
    algs = list(enumerate_rbas(args.max_size))
    counts: dict[str, int] = {}
    for a in algs:
        counts[str(a.size)] = counts.get(str(a.size), 0) + 1
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        width = len(str(len(algs)))
        for i, a in enumerate(algs):
            (d / f"rba-{a.size}-{i:0{width}d}.json").write_text(_dump(a.to_json()) + "\n")
    out.data = {"max_size": args.max_size, "total": len(algs), "by_size": counts}
    out.say("\n".join(f"size {k}: {v}" for k, v in counts.items()))
    out.say(f"total: {len(algs)}")
    return OK


def cmd_validate_algebra(args, out: Out) -> int:
    alg = FiniteRba.from_json(_load_json(args.file))
    axioms = check_rba_axioms(alg)
    report = {"rba": [str(d) for d in axioms]}
    if not axioms:
        report["basic_reduct"] = [str(d) for d in check_basic_reduct(alg)]
        report["product_laws"] = [str(d) for d in check_product_laws(alg, literal_v=False)]
        report["product_laws_literal_v"] = [str(d) for d in check_product_laws(alg, literal_v=True)]
        report["unit_remark"] = [str(d) for d in check_unit_remark(alg)]
        report["equality_criterion"] = [str(d) for d in check_equality_criterion(alg)]
    out.data = {"size": alg.size, "checks": report}
    if args.formula:
        f = parse_formula(args.formula)
        val = {k: int(v) for k, v in json.loads(args.assign or "{}").items()}
        missing = sorted(atoms(f) - set(val))
        if missing:
            raise InputError(f"no value for {', '.join(missing)}")
        out.data["value"] = int(eval_in_algebra(alg, val, f))
    for k, v in report.items():
        out.say(f"{k}: {'ok' if not v else '; '.join(v)}")
    if "value" in out.data:
        out.say(f"value: {out.data['value']}")
    return OK if not any(report.values()) else REFUTED


def cmd_check_simple(args, out: Out) -> int:
    d = simple_from_sexpr(_read(args.file))
    sys_id = SystemId.SRBL if args.system == "srbl" else SystemId.SStarRBL
    res = check_simple(d, sys_id)
    out.data = {"ok": res.ok, "path": list(res.path), "rule": res.rule, "reason": res.reason,
                "system": sys_id.value}
    out.say("ok" if res else f"fails at {list(res.path)} ({res.rule}): {res.reason}")
    return OK if res else REFUTED


def cmd_check_hilbert(args, out: Out) -> int:
    p = parse_hilbert_proof(_read(args.file))
    goal = parse_formula(args.goal) if args.goal else p.steps[-1].formula
    res = check_hilbert_proof(p, goal)
    out.data = {"ok": res.ok, "step": res.step, "reason": res.reason, "goal": print_formula(goal)}
    out.say("ok" if res else f"fails at step {res.step}: {res.reason}")
    return OK if res else REFUTED


# ---------------------------------------------------------------------------
# corpus runner


def read_seq_file(path: Path) -> list[tuple[str, str]]:
    out = []
    for i, line in enumerate(path.read_text().splitlines(), 1):
        text = line.split("#", 1)[0].strip()
        if text:
            out.append((f"{path.name}:{i}", text))
    return out


def _run_one(item) -> tuple:
    name, text, cfg = item
    t0 = time.perf_counter()
    try:
        v = prove(parse_sequent(text), cfg)
    except ParseError as e:
        return name, "InputError", time.perf_counter() - t0, "", str(e)
    size = v.proof.size() if isinstance(v, Proved) else ""
    return name, type(v).__name__, time.perf_counter() - t0, size, ""


def run_corpus(directory: Path, cfg: SearchConfig, jobs: int = 1) -> list[tuple]:
    files = sorted(directory.glob("*.seq"))
    items = [(n, t, cfg) for f in files for n, t in read_seq_file(f)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_run_one, items, chunksize=8))
    return [_run_one(it) for it in items]


def cmd_corpus(args, out: Out) -> int:
    d = Path(args.dir)
    if not d.is_dir():
        raise InputError(f"{d} is not a directory")
    rows = run_corpus(d, _config(args), args.jobs)
    lines = ["name\tverdict\ttime\tproof_size"] + [f"{n}\t{v}\t{t:.4f}\t{s}" for n, v, t, s, _ in rows]
    tsv = "\n".join(lines) + "\n"
    _write(args.out, tsv)
    counts: dict[str, int] = {}
    for r in rows:
        counts[r[1]] = counts.get(r[1], 0) + 1
    out.data = {"total": len(rows), "counts": counts,
                "rows": [{"name": n, "verdict": v, "proof_size": s, "error": e} for n, v, _, s, e in rows]}
    out.say(tsv.rstrip())
    return INPUT_ERROR if counts.get("InputError") else OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="FILE", help="also write the main artifact here")
    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--profile", choices=["core", "lj", "top-imp"], default="core")
    search.add_argument("--depth", type=int, default=14)
    search.add_argument("--contraction-budget", type=int, default=2)
    search.add_argument("--max-size", type=int, default=8, help="largest countermodel (ternary states)")

    p = argparse.ArgumentParser(prog="rbl", description="Residuated basic logic toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", parents=[common], help="parse and pretty-print")
    s.add_argument("text")
    s.add_argument("--kind", choices=["formula", "structure", "sequent", "simple"], default="sequent")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("prove", parents=[common, search], help="search for a proof or a countermodel")
    s.add_argument("sequent")
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("countermodel", parents=[common, search], help="search for a countermodel only")
    s.add_argument("sequent")
    s.set_defaults(func=cmd_countermodel)

    s = sub.add_parser("check-proof", parents=[common], help="check a proof file")
    s.add_argument("file")
    s.add_argument("--profile", choices=["core", "lj", "top-imp"], default="core")
    s.set_defaults(func=cmd_check_proof)

    s = sub.add_parser("eliminate-mix", parents=[common], help="remove Cut and Mix from a proof file")
    s.add_argument("file")
    s.set_defaults(func=cmd_eliminate_mix)

    for name, func, help_text in [("check-model", cmd_check_model, "check a BPL model and evaluate"),
                                  ("check-ternary", cmd_check_ternary, "check a ternary model and evaluate")]:
        s = sub.add_parser(name, parents=[common], help=help_text)
        s.add_argument("file")
        s.add_argument("--formula")
        s.add_argument("--world", type=int, help="evaluate at this world or state only")
        if name == "check-ternary":
            s.add_argument("--sequent")
        s.set_defaults(func=func)

    s = sub.add_parser("lift", parents=[common], help="lift a BPL model to a ternary model")
    s.add_argument("file")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("enumerate-algebras", parents=[common], help="list finite algebras")
    s.add_argument("--max-size", type=int, default=3)
    s.set_defaults(func=cmd_enumerate_algebras)

    s = sub.add_parser("validate-algebra", parents=[common], help="run every algebra check")
    s.add_argument("file")
    s.add_argument("--formula")
    s.add_argument("--assign", help='JSON object, e.g. {"p": 1}')
    s.set_defaults(func=cmd_validate_algebra)

    s = sub.add_parser("check-simple", parents=[common], help="check a simple-sequent derivation")
    s.add_argument("file")
    s.add_argument("--system", choices=["srbl", "sstar"], default="srbl")
    s.set_defaults(func=cmd_check_simple)

    s = sub.add_parser("check-hilbert", parents=[common], help="check a Hilbert proof")
    s.add_argument("file")
    s.add_argument("--goal")
    s.set_defaults(func=cmd_check_hilbert)

    s = sub.add_parser("corpus", parents=[common, search], help="prove every sequent in a directory of .seq files")
    s.add_argument("dir")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_corpus)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return OK if e.code == 0 else INPUT_ERROR
    out = Out(args)
    try:
        code = args.func(args, out)
    except (InputError, ParseError, sexpr.SexprError, MalformedProof, ProofFormatError, SizeLimit,
            LanguageError, KeyError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    out.flush()
    return code


def main():  # pragma: no cover
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
