"""Command-line front end: file-based inputs, JSON reports.

Exit codes: 0 success, 1 a check or search came back negative,
2 bad input (unparseable files, violated preconditions, missing paths).
Reports are deterministic for a fixed config and seed: no timestamps,
multisets serialized sorted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import abelext, catalog, homology, kgroups, splitting, triples
from .errors import GassmannError, NotFoundWithinBudget, ParseError
from .lattice import parse_matrix_file
from .permgroup import (GroupLike, PermGroup, Subgroup, abelianization,
                        parse_group_file)

SCHEMA = 1

__all__ = ["RunConfig", "run", "main"]


@dataclass
class RunConfig:
    command: str
    group_path: str | None = None
    h1_path: str | None = None
    h2_path: str | None = None
    matrix_path: str | None = None
    fields: tuple[str, ...] = ()
    ns: tuple[int, ...] = ()
    q: int | None = None
    coeff_bound: int = 2
    budget: int = 20000
    seed: int = 0
    max_order: int = 120
    report_path: str | None = None
    out: str | None = None
    threads: int = 1

    def __post_init__(self) -> None:
        if self.threads < 1:
            raise ValueError("threads must be at least 1")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_group(path: str) -> PermGroup:
    return parse_group_file(_read(path), path=path)


def _load_subgroup(group: PermGroup, path: str) -> Subgroup:
    candidate = parse_group_file(_read(path), path=path)
    if candidate.degree != group.degree:
        raise ParseError(
            f"degree {candidate.degree} does not match "
            f"the ambient group's degree {group.degree}", path=path)
    return group.subgroup(candidate.generators)


def _load_pair(config: RunConfig) -> tuple[PermGroup, Subgroup, Subgroup]:
    for name in ("group_path", "h1_path", "h2_path"):
        if getattr(config, name) is None:
            raise ValueError(f"missing {name}")
    group = _load_group(config.group_path)
    return (group, _load_subgroup(group, config.h1_path),
            _load_subgroup(group, config.h2_path))


def _cmd_group_info(config: RunConfig) -> tuple[int, dict]:
    group = _load_group(config.group_path)
    ab = str(abelianization(group).structure)
    return 0, {
        "degree": group.degree,
        "order": group.order,
        "generators": [g.format() for g in group.generators],
        "num_classes": len(group.conjugacy_classes()),
        "class_sizes": sorted(c.size for c in group.conjugacy_classes()),
        "abelianization": ab,
    }


def _pair_summary(group: GroupLike, h1: GroupLike, h2: GroupLike) -> dict:
    return {
        "group_order": group.order,
        "h1_order": h1.order,
        "h2_order": h2.order,
        "gassmann": triples.is_gassmann(group, h1, h2),
        "conjugate": triples.are_conjugate(group, h1, h2),
    }


def _cmd_gassmann_check(config: RunConfig) -> tuple[int, dict]:
    group, h1, h2 = _load_pair(config)
    report = _pair_summary(group, h1, h2)
    report["index"] = group.order // h1.order
    report["character1"] = list(triples.permutation_character(group, h1))
    report["character2"] = list(triples.permutation_character(group, h2))
    return (0 if report["gassmann"] else 1), report


def _matrix_report(a) -> dict:
    return {"size": a.nrows, "rows": [list(row) for row in a.rows]}


def _cmd_gassmann_search(config: RunConfig) -> tuple[int, dict]:
    group, h1, h2 = _load_pair(config)
    base = {"coeff_bound": config.coeff_bound, "budget": config.budget,
            "seed": config.seed}
    try:
        found = triples.integral_search(group, h1, h2, config.coeff_bound,
                                        config.budget, seed=config.seed)
    except NotFoundWithinBudget as exc:
        base.update({
            "found": False,
            "trials": exc.trials,
            "exhausted": exc.exhausted,
            "basis_size": exc.basis_size,
        })
        return 1, base
    triple = triples.GassmannTriple(group, h1, h2)
    base.update({
        "found": True,
        "matrix": _matrix_report(found.A),
        "verification": triples.verify_integral_triple(triple, found),
    })
    return 0, base


def _cmd_gassmann_verify(config: RunConfig) -> tuple[int, dict]:
    group, h1, h2 = _load_pair(config)
    if config.matrix_path is None:
        raise ValueError("missing matrix_path")
    a = parse_matrix_file(_read(config.matrix_path), path=config.matrix_path)
    triple = triples.GassmannTriple(group, h1, h2)
    report = triples.verify_integral_triple(triple, a)
    return (0 if report["passed"] else 1), report


def _cmd_splitting_report(config: RunConfig) -> tuple[int, dict]:
    group, h1, h2 = _load_pair(config)
    table1 = splitting.splitting_table(group, h1)
    table2 = splitting.splitting_table(group, h2)
    rows = []
    for cls, s1, s2 in zip(group.conjugacy_classes(), table1, table2):
        rows.append({
            "class_rep": cls.representative.format(),
            "class_size": cls.size,
            "type1": list(s1),
            "type2": list(s2),
            "gcd1": s1.gcd(),
            "gcd2": s2.gcd(),
            "lcm1": s1.lcm(),
            "lcm2": s2.lcm(),
            "arithmetic": s1 == s2,
            "kronecker": s1.contains_one == s2.contains_one,
            "weak_kronecker": s1.gcd() == s2.gcd(),
            "ultra_coarse": s1.lcm() == s2.lcm(),
        })
    report = {
        "group_order": group.order,
        "h1_order": h1.order,
        "h2_order": h2.order,
        "rows": rows,
        "arithmetic": (all(r["arithmetic"] for r in rows)
                       if h1.order == h2.order else None),
        "kronecker": all(r["kronecker"] for r in rows),
        "weak_kronecker": all(r["weak_kronecker"] for r in rows),
        "ultra_coarse": all(r["ultra_coarse"] for r in rows),
    }
    return 0, report


def _cmd_abelext_demo(config: RunConfig) -> tuple[int, dict]:
    if config.matrix_path is None:
        raise ValueError("missing matrix_path")
    a = parse_matrix_file(_read(config.matrix_path), path=config.matrix_path)
    q = config.q if config.q is not None else abelext.choose_q(a)
    s1, s2, gcd1, gcd2 = abelext.notwkeq_construct(a, q)
    return 0, {
        "size": a.nrows,
        "q": q,
        "q_chosen": config.q is None,
        "S1": list(s1),
        "S2": list(s2),
        "gcd1": gcd1,
        "gcd2": gcd2,
        "weakly_kronecker": gcd1 == gcd2,
    }


def _cmd_kgroups(config: RunConfig) -> tuple[int, dict]:
    if len(config.fields) != 1:
        raise ValueError("exactly one --field is required")
    model = kgroups.FieldModel.parse(config.fields[0])
    entries = []
    for n in sorted(set(config.ns)):
        structure = kgroups.k_group(model, n)
        i = (n + 1) // 2
        entries.append({
            "n": n,
            "k_group": str(structure),
            "free_rank": structure.free_rank,
            "torsion": list(structure.invariant_factors),
            "w": kgroups.w_invariant(model, i).value,
        })
    return 0, {"field": model.describe(), "degree": model.degree,
               "entries": entries}


def _cmd_homology_sweep(config: RunConfig) -> tuple[int, dict]:
    corpus = catalog.standard_corpus(config.max_order)
    report = homology.conjugation_sweep(corpus, max_order=config.max_order)
    return (0 if report["passed"] else 1), report


def _cmd_scott(config: RunConfig) -> tuple[int, dict]:
    base = {"seed": config.seed, "budget": config.budget}
    try:
        triple = catalog.scott_triple(seed=config.seed, budget=config.budget)
    except NotFoundWithinBudget as exc:
        base.update({"found": False, "trials": exc.trials})
        return 1, base
    group = triple.group
    base.update({
        "found": True,
        "group_order": group.order,
        "index": triple.index,
        "h1_order": triple.h1.order,
        "h2_order": triple.h2.order,
        "conjugate": triples.are_conjugate(group, triple.h1, triple.h2),
        "gassmann": True,  # checked by the GassmannTriple constructor
    })
    return 0, base


_COMMANDS = {
    "group.info": _cmd_group_info,
    "gassmann.check": _cmd_gassmann_check,
    "gassmann.search": _cmd_gassmann_search,
    "gassmann.verify": _cmd_gassmann_verify,
    "splitting.report": _cmd_splitting_report,
    "abelext.demo": _cmd_abelext_demo,
    "kgroups": _cmd_kgroups,
    "homology.sweep": _cmd_homology_sweep,
    "scott": _cmd_scott,
}


def run(config: RunConfig) -> tuple[int, dict]:
    """Dispatch one subcommand; returns (exit code, report dict)."""
    handler = _COMMANDS.get(config.command)
    if handler is None:
        raise ValueError(f"unknown command: {config.command}")
    code, report = handler(config)
    report["schema"] = SCHEMA
    report["command"] = config.command
    if config.report_path is not None:
        Path(config.report_path).write_text(_render(report),
                                            encoding="utf-8")
    return code, report


def _render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gassmann",
        description="Gassmann triples, splitting equivalences, odd K-groups"
                    " and degree-one homology diagrams for finite groups.")
    parser.add_argument("--out", help="also write the JSON report here")
    parser.add_argument("--threads", type=int, default=1,
                        help="reserved; orchestration is single-threaded")
    top = parser.add_subparsers(dest="topic", required=True)

    group = top.add_parser("group", help="inspect a group file")
    group_sub = group.add_subparsers(dest="action", required=True)
    info = group_sub.add_parser("info", help="order, classes, abelianization")
    info.add_argument("group", help="group file")

    gm = top.add_parser("gassmann", help="Gassmann pair checks and searches")
    gm_sub = gm.add_subparsers(dest="action", required=True)
    for name, blurb in (("check", "equal permutation characters?"),
                        ("search", "look for a unimodular intertwiner"),
                        ("verify", "verify a supplied intertwiner")):
        sub = gm_sub.add_parser(name, help=blurb)
        sub.add_argument("group", help="ambient group file")
        sub.add_argument("--h1", required=True, help="first subgroup file")
        sub.add_argument("--h2", required=True, help="second subgroup file")
        if name == "search":
            sub.add_argument("--bound", type=int, default=2,
                             help="coefficient box half-width (default 2)")
            sub.add_argument("--budget", type=int, default=20000,
                             help="candidate limit (default 20000)")
            sub.add_argument("--seed", type=int, default=0)
        if name == "verify":
            sub.add_argument("--matrix", required=True,
                             help="candidate matrix file")

    sp = top.add_parser("splitting", help="splitting-type tables")
    sp_sub = sp.add_subparsers(dest="action", required=True)
    rep = sp_sub.add_parser("report",
                            help="per-class types and equivalence verdicts")
    rep.add_argument("group", help="ambient group file")
    rep.add_argument("--h1", required=True)
    rep.add_argument("--h2", required=True)

    ab = top.add_parser("abelext", help="local lattice separation pipeline")
    ab_sub = ab.add_subparsers(dest="action", required=True)
    demo = ab_sub.add_parser("demo", help="S1, S2 and their gcds")
    demo.add_argument("--matrix", required=True, help="unimodular matrix file")
    demo.add_argument("--q", type=int, default=None,
                      help="split prime; least valid prime when omitted")

    kg = top.add_parser("kgroups", help="odd K-groups of integer rings")
    kg.add_argument("--field", required=True, action="append",
                    help='"Q" or "abelian:m=5;H=1,4"')
    kg.add_argument("--n", required=True, action="append", type=int,
                    help="odd degree n >= 3; repeatable")

    hm = top.add_parser("homology", help="transfer diagram sweeps")
    hm_sub = hm.add_subparsers(dest="action", required=True)
    sweep = hm_sub.add_parser("sweep",
                              help="exhaustive conjugation-correspondence"
                                   " checks over the corpus")
    sweep.add_argument("--max-order", type=int, default=120)
    sweep.add_argument("--report", help="write the full JSON report here")

    sc = top.add_parser("scott",
                        help="non-conjugate A5 pair inside PSL(2,29)")
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--budget", type=int, default=200)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    topic = args.topic
    command = topic if topic in ("kgroups", "scott") \
        else f"{topic}.{args.action}"
    return RunConfig(
        command=command,
        group_path=getattr(args, "group", None),
        h1_path=getattr(args, "h1", None),
        h2_path=getattr(args, "h2", None),
        matrix_path=getattr(args, "matrix", None),
        fields=tuple(getattr(args, "field", None) or ()),
        ns=tuple(getattr(args, "n", None) or ()),
        q=getattr(args, "q", None),
        coeff_bound=getattr(args, "bound", 2),
        budget=getattr(args, "budget", 20000),
        seed=getattr(args, "seed", 0),
        max_order=getattr(args, "max_order", 120),
        report_path=getattr(args, "report", None),
        out=args.out,
        threads=args.threads,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        config = _config_from_args(args)
        code, report = run(config)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GassmannError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = _render(report)
    sys.stdout.write(text)
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
