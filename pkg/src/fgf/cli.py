"""Command-line interface: word arithmetic, automorphism algebra,
primitivity, canonical-form tools, the suite runner, and function encoding.

Output is fully deterministic: identical arguments and input files produce
byte-identical stdout and report files.  Timing goes to stderr only.
Precedence for settings is flags > config file > FGF_SEED > built-ins.
Exit codes: 0 success / positive decision, 1 failure or negative decision,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import harness, interpretation, involutions, maps, stallings, whitehead, words
from .errors import FgfError

DEFAULT_SEED = 2024
REPORT_SCHEMA = "fgf-report/1"


@dataclass
class CliConfig:
    rank: int | None = None
    max_image_length: int = 3
    samples: int = 200
    seed: int = DEFAULT_SEED
    floor: int = harness.DEFAULT_FLOOR
    report: str = "fgf-report.json"
    verbose: bool = False


def _load_config(path: str | None) -> CliConfig:
    config = CliConfig()
    env_seed = os.environ.get("FGF_SEED")
    if env_seed is not None:
        config.seed = int(env_seed)
    if path:
        raw = json.loads(Path(path).read_text())
        for key in ("rank", "max_image_length", "samples", "seed", "floor", "report"):
            if key in raw:
                setattr(config, key, raw[key])
    return config


def _context(args, config: CliConfig, fallback: int = 2) -> words.FreeGroupContext:
    rank = getattr(args, "rank", None) or config.rank or fallback
    return words.FreeGroupContext(rank)


def _read_map(path: str, context: words.FreeGroupContext) -> maps.GeneratorMap:
    return maps.parse_generator_map(Path(path).read_text(), context)


def _read_data(path: str, context: words.FreeGroupContext) -> involutions.CanonicalData:
    return involutions.parse_canonical_data(Path(path).read_text(), context)


def _graph_from(args, context) -> stallings.SubgroupGraph:
    gens = [words.parse_word(text, context) for text in args.gens]
    return stallings.build_graph(gens, context)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = _load_config(getattr(args, "config", None))
    try:
        return args.handler(args, config)
    except FgfError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fgf",
        description=(
            "Workbench for finite-rank free groups: reduced words, "
            "automorphisms, subgroup graphs, canonical-form involutions, "
            "verification suites, and finite-function encodings."
        ),
    )
    parser.add_argument("--config", help="JSON config file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name: str, help_text: str, handler):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--rank", type=int, default=None, help="ambient rank")
        return p

    p = cmd("reduce", "freely reduce a word", _cmd_reduce)
    p.add_argument("word")

    p = cmd("multiply", "product of two words", _cmd_multiply)
    p.add_argument("left")
    p.add_argument("right")

    p = cmd("invert-word", "inverse of a word", _cmd_invert_word)
    p.add_argument("word")

    p = cmd("root", "maximal root and exponent of a word", _cmd_root)
    p.add_argument("word")

    p = cmd("apply", "apply an automorphism file to a word", _cmd_apply)
    p.add_argument("--auto", required=True, help="generator map file")
    p.add_argument("word")

    p = cmd("compose", "compose two automorphism files (first after second)", _cmd_compose)
    p.add_argument("first")
    p.add_argument("second")

    p = cmd("invert-auto", "invert an automorphism file", _cmd_invert_auto)
    p.add_argument("--auto", required=True)

    p = cmd("order", "least power giving the identity, within a bound", _cmd_order)
    p.add_argument("--auto", required=True)
    p.add_argument("--bound", type=int, default=12)

    p = cmd("is-inner", "decide whether a map is a conjugation; print the witness", _cmd_is_inner)
    p.add_argument("--auto", required=True)

    p = cmd("is-primitive", "decide whether a word belongs to a basis", _cmd_is_primitive)
    p.add_argument("word")

    p = cmd("minimize", "shortest word in the automorphism orbit, with witness", _cmd_minimize)
    p.add_argument("word")

    p = cmd("two-primitives", "split a word into a product of two primitives", _cmd_two_primitives)
    p.add_argument("word")

    p = cmd("realize", "canonical involution from partition data", _cmd_realize)
    p.add_argument("data")

    p = cmd("classify", "conjugacy invariants of partition data", _cmd_classify)
    p.add_argument("data")

    p = cmd("conjugator", "basis permutation conjugating one involution to another", _cmd_conjugator)
    p.add_argument("first")
    p.add_argument("second")

    p = cmd("sqrt-bead", "square root for paired equal-size blocks", _cmd_sqrt_bead)
    p.add_argument("data")

    p = cmd("snake-cert", "no-square-root certificate for a single block", _cmd_snake_cert)
    p.add_argument("data")

    p = cmd(
        "decompose-inverted",
        "split an element the involution inverts into coboundary or block form",
        _cmd_decompose,
    )
    p.add_argument("data")
    p.add_argument("word")

    p = cmd("graph", "summary of the folded subgroup graph", _cmd_graph)
    p.add_argument("--gens", nargs="*", default=[], help="generating words")

    p = cmd("dump-graph", "edge list of the folded subgroup graph", _cmd_dump_graph)
    p.add_argument("--gens", nargs="*", default=[])

    p = cmd("member", "subgroup membership for a word", _cmd_member)
    p.add_argument("--gens", nargs="*", default=[])
    p.add_argument("word")

    p = cmd("rank", "free rank of the subgroup", _cmd_rank)
    p.add_argument("--gens", nargs="*", default=[])

    p = cmd("intersect", "intersection of two subgroups", _cmd_intersect)
    p.add_argument("--gens-a", nargs="*", default=[])
    p.add_argument("--gens-b", nargs="*", default=[])

    p = cmd("factor-rel", "does the first factor split as the other two?", _cmd_factor_rel)
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("third")

    p = cmd("extract-basis", "recover a basis of the paired factor at even rank", _cmd_extract_basis)

    p = cmd("encode-fn", "encode a finite function as an automorphism", _cmd_encode_fn)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--table", required=True, help="comma-separated values, e.g. 2,3,1")

    p = cmd("decode-fn", "decode a finite function from an automorphism file", _cmd_decode_fn)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--auto", required=True)

    p = cmd("verify", "run a verification suite (or all)", _cmd_verify)
    p.add_argument("suite", choices=sorted(harness.SUITES) + ["all"])
    p.add_argument("--len", type=int, default=None, dest="max_image_length")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--floor", type=int, default=None)
    p.add_argument("--report", default=None, help="report file path")

    return parser


def _cmd_reduce(args, config) -> int:
    context = _context(args, config)
    print(words.format_word(words.parse_word(args.word, context)))
    return 0


def _cmd_multiply(args, config) -> int:
    context = _context(args, config)
    product = words.multiply(
        words.parse_word(args.left, context), words.parse_word(args.right, context)
    )
    print(words.format_word(product))
    return 0


def _cmd_invert_word(args, config) -> int:
    context = _context(args, config)
    print(words.format_word(words.invert(words.parse_word(args.word, context))))
    return 0


def _cmd_root(args, config) -> int:
    context = _context(args, config)
    root, exponent = words.primitive_root(words.parse_word(args.word, context))
    print(f"{words.format_word(root)} ^ {exponent}")
    return 0


def _cmd_apply(args, config) -> int:
    context = _context(args, config)
    mapping = _read_map(args.auto, context)
    print(words.format_word(maps.apply(mapping, words.parse_word(args.word, context))))
    return 0


def _cmd_compose(args, config) -> int:
    context = _context(args, config)
    first = _read_map(args.first, context)
    second = _read_map(args.second, context)
    print(maps.format_generator_map(maps.compose(first, second)))
    return 0


def _cmd_invert_auto(args, config) -> int:
    context = _context(args, config)
    print(maps.format_generator_map(maps.inverse(_read_map(args.auto, context))))
    return 0


def _cmd_order(args, config) -> int:
    context = _context(args, config)
    order = maps.order_up_to(_read_map(args.auto, context), args.bound)
    if order is None:
        print(f"no order within bound {args.bound}")
        return 1
    print(order)
    return 0


def _cmd_is_inner(args, config) -> int:
    context = _context(args, config)
    witness = maps.is_inner(_read_map(args.auto, context))
    if witness is None:
        print("not inner")
        return 1
    print(words.format_word(witness))
    return 0


def _cmd_is_primitive(args, config) -> int:
    context = _context(args, config)
    if whitehead.is_primitive(words.parse_word(args.word, context)):
        print("primitive")
        return 0
    print("not primitive")
    return 1


def _cmd_minimize(args, config) -> int:
    context = _context(args, config)
    result = whitehead.minimize(words.parse_word(args.word, context))
    print(words.format_word(result.minimal))
    print(maps.format_generator_map(result.witness))
    return 0


def _cmd_two_primitives(args, config) -> int:
    context = _context(args, config)
    first, second = whitehead.product_of_two_primitives(
        words.parse_word(args.word, context)
    )
    print(words.format_word(first))
    print(words.format_word(second))
    return 0


def _cmd_realize(args, config) -> int:
    context = _context(args, config)
    print(maps.format_generator_map(involutions.realize(_read_data(args.data, context))))
    return 0


def _cmd_classify(args, config) -> int:
    context = _context(args, config)
    cls = involutions.classify(_read_data(args.data, context))
    sizes = ",".join(str(s) for s in cls.block_sizes) or "-"
    print(f"fixed_rank={cls.fixed_rank} swap_count={cls.swap_count} block_sizes={sizes}")
    return 0


def _cmd_conjugator(args, config) -> int:
    context = _context(args, config)
    sigma = involutions.build_conjugator(
        _read_data(args.first, context), _read_data(args.second, context)
    )
    print(maps.format_generator_map(sigma))
    return 0


def _cmd_sqrt_bead(args, config) -> int:
    context = _context(args, config)
    print(
        maps.format_generator_map(
            involutions.square_root_of_bead(_read_data(args.data, context))
        )
    )
    return 0


def _cmd_snake_cert(args, config) -> int:
    context = _context(args, config)
    certificate = involutions.snake_obstruction(_read_data(args.data, context))
    print(
        json.dumps(
            {
                "block_leader": certificate.block_leader,
                "eigenvalue": certificate.eigenvalue,
                "eigenline_dimension": certificate.eigenline_dimension,
                "conclusion": certificate.conclusion,
            },
            indent=2,
            sort_keys=True,
        )
    )
    return 0


def _cmd_decompose(args, config) -> int:
    context = _context(args, config)
    result = involutions.decompose_inverted(
        _read_data(args.data, context), words.parse_word(args.word, context)
    )
    if isinstance(result, involutions.Coboundary):
        print(f"coboundary w: {words.format_word(result.w)}")
    else:
        print(f"block w: {words.format_word(result.w)} leader: x{result.leader}")
    return 0


def _cmd_graph(args, config) -> int:
    context = _context(args, config)
    graph = _graph_from(args, context)
    print(
        f"vertices={graph.num_vertices} edges={len(graph.edges)} "
        f"rank={stallings.rank(graph)}"
    )
    return 0


def _cmd_dump_graph(args, config) -> int:
    context = _context(args, config)
    print(stallings.dump_graph(_graph_from(args, context)))
    return 0


def _cmd_member(args, config) -> int:
    context = _context(args, config)
    graph = _graph_from(args, context)
    if stallings.contains(graph, words.parse_word(args.word, context)):
        print("yes")
        return 0
    print("no")
    return 1


def _cmd_rank(args, config) -> int:
    context = _context(args, config)
    print(stallings.rank(_graph_from(args, context)))
    return 0


def _cmd_intersect(args, config) -> int:
    context = _context(args, config)
    first = stallings.build_graph(
        [words.parse_word(t, context) for t in args.gens_a], context
    )
    second = stallings.build_graph(
        [words.parse_word(t, context) for t in args.gens_b], context
    )
    meet = stallings.intersect(first, second)
    print(f"rank={stallings.rank(meet)}")
    print(stallings.dump_graph(meet))
    return 0


def _cmd_factor_rel(args, config) -> int:
    context = _context(args, config)
    handles = [
        interpretation.FreeFactorHandle(_read_data(path, context))
        for path in (args.first, args.second, args.third)
    ]
    if interpretation.free_factor_relation(*handles):
        print("yes")
        return 0
    print("no")
    return 1


def _cmd_extract_basis(args, config) -> int:
    context = _context(args, config, fallback=4)
    params = interpretation.canonical_extraction_parameters(context)
    for word in interpretation.extract_basis(*params):
        print(words.format_word(word))
    return 0


def _cmd_encode_fn(args, config) -> int:
    table = tuple(int(part) for part in args.table.split(","))
    fn = interpretation.FiniteFunction(args.m, table)
    split = interpretation.canonical_split(args.m)
    print(maps.format_generator_map(interpretation.encode_function(fn, split)))
    return 0


def _cmd_decode_fn(args, config) -> int:
    split = interpretation.canonical_split(args.m)
    mapping = _read_map(args.auto, split.context)
    fn = interpretation.decode_function(mapping, split)
    print(",".join(str(v) for v in fn.table))
    return 0


def _cmd_verify(args, config) -> int:
    names = sorted(harness.SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        cfg = harness.SampleConfig(
            rank=getattr(args, "rank", None)
            or config.rank
            or harness.SUITE_DEFAULT_RANK[name],
            max_image_length=args.max_image_length or config.max_image_length,
            sample_count=args.samples if args.samples is not None else config.samples,
            seed=args.seed if args.seed is not None else config.seed,
            floor=args.floor if args.floor is not None else config.floor,
        )
        report = harness.SUITES[name](cfg)
        reports.append(report)
        status = "PASS" if report.passed else "FAIL"
        print(f"[{status}] {report.suite}: {report.instances} instances checked")
        for counterexample in report.counterexamples:
            print(f"    counterexample: {counterexample}")
        print(f"    wall time: {report.wall_time:.3f}s", file=sys.stderr)

    payload: dict = {"schema": REPORT_SCHEMA}
    if len(reports) == 1:
        payload.update(reports[0].to_json_dict())
    else:
        payload["suites"] = [r.to_json_dict() for r in reports]
        payload["pass"] = all(r.passed for r in reports)
    report_path = args.report or config.report
    Path(report_path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n"
    )
    return 0 if all(r.passed for r in reports) else 1
