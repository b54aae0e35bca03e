"""Command line front end.

Exit status: 0 completed and positive, 1 negative verdict, 2 undetermined
(a budget ran out), 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .backtrace import (
    DEFAULT_MAX_LENGTH,
    classify_parity_vector,
    find_backtrace_to_class,
    greedy_backtrace,
    level_set,
    longest_zero_run,
    min_ones_fraction_at_ones,
)
from .duality import (
    DEFAULT_SEARCH_BUDGET,
    check_self_color_dual,
    folded_dot,
    power_of_two_exponent,
    unfold_sufficient_set,
    verify_fold,
)
from .gamma import DEFAULT_CYCLE_BUDGET, build_gamma, build_pruned_gamma, delete_nodes
from .group import DEFAULT_CLOSURE_BUDGET, affine_closure, gb_structure, generator_orders, verify_p_identity
from .parity import h_table, omega_table
from .sufficiency import (
    CRITERIA,
    CycleBoundConstants,
    check,
    default_threads,
    pruned_remainder,
    search,
    sparse_sufficient_set,
)
from .tables import TABLES, format_residue_set

SCHEMA_VERSION = 1
OK, NEGATIVE, UNDETERMINED, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Output:
    data: dict
    status: int = OK
    text: str | None = None
    rows: list[list] | None = None
    dot: str | None = None


@dataclass
class RunConfig:
    command: str
    fmt: str = "json"
    threads: int = 1
    cycle_budget: int = DEFAULT_CYCLE_BUDGET
    depth: int = DEFAULT_MAX_LENGTH
    closure_budget: int = DEFAULT_CLOSURE_BUDGET
    search_budget: int = DEFAULT_SEARCH_BUDGET
    constants: CycleBoundConstants = field(default_factory=CycleBoundConstants)
    args: dict = field(default_factory=dict)

    def metadata(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "command": self.command,
            "config": {k: v for k, v in sorted(self.args.items())},
            "budgets": {
                "cycles": self.cycle_budget,
                "backtrace_depth": self.depth,
                "closure": self.closure_budget,
                "isomorphism_search": self.search_budget,
            },
            "constants": {
                "max_cycle_period": self.constants.max_cycle_period,
                "verified_min": self.constants.verified_min,
            },
            "threads": self.threads,
        }


# reproduce_tables ---------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    table: int
    label: str
    criterion: str
    passed: bool | None


def _table_job(args):
    table, residues, d, criterion, constants, budget = args
    v = check(d, residues, criterion, constants, budget)
    return TableRow(table, format_residue_set(residues, d), criterion, v.passes(criterion))


def reproduce_tables(which=(1, 2, 3, 4), threads: int = 1,
                     constants: CycleBoundConstants | None = None,
                     budget: int = DEFAULT_CYCLE_BUDGET) -> list[TableRow]:
    """Run each transcribed row through the criterion its table claims."""
    constants = constants or CycleBoundConstants()
    jobs = []
    for t in which:
        if t not in TABLES:
            raise UsageError(f"no table {t}; choose from 1-4")
        criterion, rows = TABLES[t]
        jobs += [(t, residues, d, criterion, constants, budget) for residues, d in rows]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_table_job, jobs, chunksize=8))
    return [_table_job(j) for j in jobs]


# commands -----------------------------------------------------------------

def _residues(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"residues must be comma separated integers, got {text!r}")


def cmd_graph(cfg: RunConfig, a) -> Output:
    g = build_pruned_gamma(a.mod) if a.pruned else build_gamma(a.mod)
    if a.remove:
        g = pruned_remainder(a.mod, _residues(a.remove)) if a.prune_acyclic else \
            delete_nodes(g, _residues(a.remove))
    rows = [["from", "to", "color"]] + [[u, v, c.value] for u, v, c in g.sorted_edges()]
    text = "\n".join(f"{u} -> {v} {c.value}" for u, v, c in g.sorted_edges())
    return Output(g.to_dict(), rows=rows, dot=g.to_dot(), text=text)


def _verdict_status(v, criteria) -> int:
    vals = [v.passes(c) for c in criteria]
    if any(x is None for x in vals):
        return UNDETERMINED
    return OK if all(vals) else NEGATIVE


def cmd_check(cfg: RunConfig, a) -> Output:
    residues = _residues(a.residues)
    if a.criterion == "all":
        strong = check(a.mod, residues, "strong", cfg.constants)
        frac = check(a.mod, residues, "fractions", cfg.constants, cfg.cycle_budget)
        data = {"strong_criterion": strong.to_dict(), "fraction_criteria": frac.to_dict()}
        status = OK if strong.strong else _verdict_status(frac, ("forward", "backward", "cycle"))
        text = (f"{strong.label}: strong={strong.strong} forward={frac.forward} "
                f"backward={frac.backward} cycle={frac.cycle}")
        row = [strong.label, strong.strong, frac.forward, frac.backward, frac.cycle]
    else:
        v = check(a.mod, residues, a.criterion, cfg.constants, cfg.cycle_budget)
        data = v.to_dict()
        status = _verdict_status(v, (a.criterion,))
        text = f"{v.label}: {a.criterion}={v.passes(a.criterion)}"
        row = [v.label, v.strong, v.forward, v.backward, v.cycle]
    rows = [["set", "strong", "forward", "backward", "cycle"], row]
    dot = pruned_remainder(a.mod, residues).to_dot()
    return Output(data, status, text=text, rows=rows, dot=dot)


def cmd_search(cfg: RunConfig, a) -> Output:
    verdicts = search(a.mod, a.size, a.criterion, threads=cfg.threads,
                      constants=cfg.constants, budget=cfg.cycle_budget,
                      include_failures=a.all)
    items = [v.to_dict(with_certificate=False) for v in verdicts]
    rows = [["set", "strong", "forward", "backward", "cycle"]]
    rows += [[v.label, v.strong, v.forward, v.backward, v.cycle] for v in verdicts]
    text = "\n".join(v.label for v in verdicts)
    status = UNDETERMINED if any(v.undetermined for v in verdicts) else OK
    return Output({"criterion": a.criterion, "count": len(items), "sets": items},
                  status, text=text, rows=rows)


def cmd_group(cfg: RunConfig, a) -> Output:
    st = gb_structure(a.mod)
    data = st.to_dict()
    status = OK
    if a.verify:
        cl = affine_closure(a.mod, budget=cfg.closure_budget)
        orders = generator_orders(a.mod)
        data["closure_order"] = cl.order
        data["generator_orders"] = list(orders)
        data["p_identity"] = verify_p_identity(a.mod)
        if cl.order != st.order or not data["p_identity"]:
            status = NEGATIVE
    text = f"b={st.b} order={st.order} exact_order={st.exact_order}"
    rows = [list(data.keys()), [json.dumps(v) if isinstance(v, (list, dict)) else v
                                for v in data.values()]]
    return Output(data, status, text=text, rows=rows)


def cmd_backtrace(cfg: RunConfig, a) -> Output:
    r = find_backtrace_to_class(a.start, a.to_class, a.mod, max_length=cfg.depth)
    data = r.to_dict()
    if not r.found:
        status = UNDETERMINED
    elif a.bound_check and not r.within_bound:
        status = NEGATIVE
    else:
        status = OK
    text = (f"{r.vector} -> {r.value}, length {r.length}, bound {r.bound}"
            if r.found else f"no vector within {cfg.depth} odd steps")
    rows = [list(data.keys()), [json.dumps(v) if isinstance(v, list) else v for v in data.values()]]
    return Output(data, status, text=text, rows=rows)


def cmd_greedy(cfg: RunConfig, a) -> Output:
    tr = greedy_backtrace(a.start, a.steps)
    step_bits = tr.step_bits
    frac = min_ones_fraction_at_ones(step_bits)
    data = {
        "start": a.start, "steps": a.steps,
        "values": tr.values if a.values else None,
        "bits": "".join(map(str, tr.bits)),
        "longest_zero_run_steps": longest_zero_run(step_bits),
        "ones": sum(step_bits),
        "min_ones_fraction_at_ones": str(frac) if frac is not None else None,
    }
    rows = [["i", "value", "bit"]] + [[i, v, v & 1] for i, v in enumerate(tr.values)]
    return Output(data, text=data["bits"], rows=rows)


def cmd_levelset(cfg: RunConfig, a) -> Output:
    ys = sorted(level_set(a.x, a.k, coprime_to_3=a.coprime3))
    return Output({"x": a.x, "k": a.k, "size": len(ys), "members": ys},
                  text=" ".join(map(str, ys)), rows=[["member"]] + [[y] for y in ys])


def cmd_classify(cfg: RunConfig, a) -> Output:
    bits = [int(c) for c in a.bits if c in "01"]
    c = classify_parity_vector(bits, a.x)
    data = {"x": a.x, "bits": a.bits, "kind": c.kind.value, "period": c.period,
            "values": list(c.values)}
    return Output(data, text=c.kind.value, rows=[["kind", "period"], [c.kind.value, c.period]])


def cmd_duality(cfg: RunConfig, a) -> Output:
    r = check_self_color_dual(a.mod, budget=cfg.search_budget, search=a.search)
    status = UNDETERMINED if r.undetermined else (OK if r.self_dual else NEGATIVE)
    dot = None
    if r.witness:
        labels = {x: f"{x} ~ {y}" for x, y in enumerate(r.witness.permutation)}
        dot = build_gamma(a.mod).to_dot(labels=labels)
    rows = [["node", "image"]] + ([[x, y] for x, y in enumerate(r.witness.permutation)]
                                  if r.witness else [])
    return Output(r.to_dict(), status, text=f"self_dual={r.self_dual}", rows=rows, dot=dot)


def cmd_fold(cfg: RunConfig, a) -> Output:
    rep = verify_fold(a.n, a.k)
    rows = [["target", "fiber"]] + [[y, " ".join(map(str, xs))] for y, xs in sorted(rep.fibers.items())]
    return Output(rep.to_dict(), OK if rep.verified else NEGATIVE,
                  text=f"verified={rep.verified}", rows=rows, dot=folded_dot(a.n, a.k))


def cmd_unfold(cfg: RunConfig, a) -> Output:
    n = power_of_two_exponent(a.mod)
    if n is None:
        raise UsageError("unfold needs a power-of-two modulus")
    try:
        res = unfold_sufficient_set(_residues(a.residues), n, a.k, cfg.constants)
    except AssertionError as e:
        return Output({"error": str(e)}, NEGATIVE, text=str(e), rows=[["error"], [str(e)]])
    out = res.verdict
    return Output(res.to_dict(), text=out.label, rows=[["set"], [out.label]],
                  dot=out.certificate.graph.to_dot())


def cmd_tables(cfg: RunConfig, a) -> Output:
    which = (1, 2, 3, 4) if a.reproduce == "all" else (int(a.reproduce),)
    rows = reproduce_tables(which, cfg.threads, cfg.constants, cfg.cycle_budget)
    failed = [r for r in rows if r.passed is not True]
    data = {
        "tables": list(which),
        "rows": [{"table": r.table, "set": r.label, "criterion": r.criterion,
                  "passed": r.passed} for r in rows],
        "failed": [r.label for r in failed],
    }
    text = "\n".join(f"table {r.table} {r.label}: {'pass' if r.passed else 'FAIL'}" for r in rows)
    status = OK if not failed else (UNDETERMINED if all(r.passed is None for r in failed)
                                    else NEGATIVE)
    csv_rows = [["table", "set", "criterion", "passed"]]
    csv_rows += [[r.table, r.label, r.criterion, r.passed] for r in rows]
    return Output(data, status, text=text, rows=csv_rows)


def cmd_omega(cfg: RunConfig, a) -> Output:
    t = omega_table(a.n)
    return Output({"n": a.n, "table": list(t.table)}, rows=[["input", "output"]] +
                  [[x, y] for x, y in enumerate(t.table)])


def cmd_hmap(cfg: RunConfig, a) -> Output:
    t = h_table(a.n, a.k)
    return Output({"n": a.n, "k": a.k, "table": list(t.table)}, rows=[["input", "output"]] +
                  [[x, y] for x, y in enumerate(t.table)])


def cmd_sparse(cfg: RunConfig, a) -> Output:
    vals = sparse_sufficient_set(a.a, a.d, lambda n: a.slope * n + a.offset, a.count)
    return Output({"a": a.a, "d": a.d, "members": vals}, text=" ".join(map(str, vals)),
                  rows=[["member"]] + [[v] for v in vals])


COMMANDS = {
    "graph": cmd_graph, "check": cmd_check, "search": cmd_search, "group": cmd_group,
    "backtrace": cmd_backtrace, "greedy": cmd_greedy, "levelset": cmd_levelset,
    "classify": cmd_classify, "duality": cmd_duality, "fold": cmd_fold,
    "unfold": cmd_unfold, "tables": cmd_tables, "omega": cmd_omega, "hmap": cmd_hmap,
    "sparse": cmd_sparse,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "dot", "text"), default="json")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: $COLLATZ_THREADS or 1)")
    common.add_argument("--cycle-budget", type=int, default=DEFAULT_CYCLE_BUDGET)
    common.add_argument("--depth", type=int, default=DEFAULT_MAX_LENGTH,
                        help="most odd steps tried by back-tracing searches")
    common.add_argument("--closure-budget", type=int, default=DEFAULT_CLOSURE_BUDGET)
    common.add_argument("--search-budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    common.add_argument("--max-cycle-period", type=int, default=630_138_897)
    common.add_argument("--verified-min", type=int, default=2 ** 60)
    common.add_argument("-o", "--output", help="write here instead of stdout")

    p = _Parser(prog="collatz-suff", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("graph", parents=[common], help="export the graph mod d")
    s.add_argument("--mod", type=int, required=True)
    s.add_argument("--pruned", action="store_true", help="drop multiples of 3")
    s.add_argument("--remove", help="residues to delete, comma separated")
    s.add_argument("--prune-acyclic", action="store_true",
                   help="with --remove, also drop edges on no cycle")

    s = sub.add_parser("check", parents=[common], help="run a sufficiency criterion")
    s.add_argument("--mod", type=int, required=True)
    s.add_argument("--residues", required=True)
    s.add_argument("--criterion", choices=CRITERIA + ("all",), default="strong")

    s = sub.add_parser("search", parents=[common], help="test every k-subset mod d")
    s.add_argument("--mod", type=int, required=True)
    s.add_argument("--size", "--k", dest="size", type=int, required=True)
    s.add_argument("--criterion", choices=CRITERIA, default="strong")
    s.add_argument("--all", action="store_true", help="also list failing subsets")

    s = sub.add_parser("group", parents=[common], help="structure of the group mod b")
    s.add_argument("--mod", type=int, required=True)
    s.add_argument("--verify", action="store_true", help="compare with the BFS closure")

    s = sub.add_parser("backtrace", parents=[common], help="shortest back trace into a class")
    s.add_argument("--from", dest="start", type=int, required=True)
    s.add_argument("--to-class", type=int, required=True)
    s.add_argument("--mod", type=int, required=True)
    s.add_argument("--bound-check", action="store_true")

    s = sub.add_parser("greedy", parents=[common], help="greedy back tracing")
    s.add_argument("--start", type=int, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--values", action="store_true", help="include the values in JSON")

    s = sub.add_parser("levelset", parents=[common], help="integers reaching x in k steps")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--coprime3", action="store_true")

    s = sub.add_parser("classify", parents=[common], help="classify a back-tracing parity prefix")
    s.add_argument("--x", type=int, required=True)
    s.add_argument("--bits", required=True)

    s = sub.add_parser("duality", parents=[common], help="self colour duality mod d")
    s.add_argument("--mod", type=int, required=True)
    s.add_argument("--search", action="store_true", help="search even for powers of two")

    s = sub.add_parser("fold", parents=[common], help="fold the graph mod 2^n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=2)

    s = sub.add_parser("unfold", parents=[common], help="lift a strongly sufficient set")
    s.add_argument("--mod", type=int, required=True)
    s.add_argument("--residues", required=True)
    s.add_argument("--k", type=int, default=2)

    s = sub.add_parser("tables", parents=[common], help="re-check the published tables")
    s.add_argument("--reproduce", choices=("1", "2", "3", "4", "all"), default="all")

    s = sub.add_parser("omega", parents=[common], help="the involution mod 2^n")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("hmap", parents=[common], help="window-sum map mod 2^(n+k-1) -> 2^n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, default=2)

    s = sub.add_parser("sparse", parents=[common], help="members 2^f(n) (a + dn)")
    s.add_argument("--a", type=int, default=1)
    s.add_argument("--d", type=int, default=1)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--slope", type=int, default=1, help="f(n) = slope*n + offset")
    s.add_argument("--offset", type=int, default=0)
    return p


def _config(a: argparse.Namespace) -> RunConfig:
    budgets = (a.cycle_budget, a.depth + 1, a.closure_budget, a.search_budget)
    if min(budgets) < 1:
        raise UsageError("budgets must be positive")
    threads = a.threads if a.threads is not None else default_threads()
    if threads < 1:
        raise UsageError("--threads must be at least 1")
    skip = {"format", "output", "threads", "cycle_budget", "depth", "closure_budget",
            "search_budget", "max_cycle_period", "verified_min", "command"}
    return RunConfig(
        command=a.command, fmt=a.format, threads=threads,
        cycle_budget=a.cycle_budget, depth=a.depth, closure_budget=a.closure_budget,
        search_budget=a.search_budget,
        constants=CycleBoundConstants(a.max_cycle_period, a.verified_min),
        args={k: v for k, v in vars(a).items() if k not in skip},
    )


def render(cfg: RunConfig, out: Output) -> str:
    meta = cfg.metadata()
    if cfg.fmt == "json":
        return json.dumps({"meta": meta, "result": out.data}, indent=2, sort_keys=True) + "\n"
    header = json.dumps(meta, sort_keys=True)
    if cfg.fmt == "dot":
        if out.dot is None:
            raise UsageError(f"{cfg.command} has no DOT output")
        return f"// {header}\n" + out.dot
    if cfg.fmt == "csv":
        if out.rows is None:
            raise UsageError(f"{cfg.command} has no CSV output")
        buf = io.StringIO()
        buf.write(f"# {header}\n")
        csv.writer(buf, lineterminator="\n").writerows(out.rows)
        return buf.getvalue()
    body = out.text if out.text is not None else json.dumps(out.data, sort_keys=True)
    return f"# {header}\n{body}\n"


def run(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        cfg = _config(a)
        out = COMMANDS[a.command](cfg, a)
        text = render(cfg, out)
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return out.status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
