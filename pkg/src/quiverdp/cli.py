"""CLI entry point for quiverdp"""

import sys
from pathlib import Path

from quiverdp.core.errors import (
    CheckFailedError,
    QuiverDPError,
    QuiverParseError,
    QuiverValidationError,
)

USAGE_EXIT = 1


def main():
    """Entry point for the quiverdp command"""
    if len(sys.argv) < 2:
        print_usage()
        sys.exit(USAGE_EXIT)

    command = sys.argv[1]
    handlers = {
        "validate": handle_validate,
        "reduce": handle_reduce,
        "admissible": handle_admissible,
        "enumerate": handle_enumerate,
        "generate": handle_generate,
        "verify": handle_verify,
        "oracle": handle_oracle,
        "span": handle_span,
        "example-bilinear": handle_bilinear,
        "dp-suite": handle_dp_suite,
        "config": handle_config,
    }

    if command == "version":
        from quiverdp import __version__
        print(f"quiverdp v{__version__}")
    elif command in ("help", "--help", "-h"):
        print_usage()
    elif command in handlers:
        try:
            exit_code = handlers[command](sys.argv[2:])
        except QuiverDPError as e:
            print(f"Error: {e}", file=sys.stderr)
            for violation in getattr(e, "violations", []):
                print(f"  {violation}", file=sys.stderr)
            sys.exit(e.exit_code)
        sys.exit(exit_code or 0)
    else:
        print(f"Unknown command: {command}")
        print_usage()
        sys.exit(USAGE_EXIT)


def print_usage():
    """Print usage information"""
    print("""
quiverdp - semi-invariants of mixed quiver representations

Usage:
    quiverdp validate QUIVER                Check the mixed-quiver conditions
    quiverdp reduce QUIVER                  Reduce to zigzag form, write target and Φ table
    quiverdp admissible QUIVER --degrees D  Solve for the admissible weight
    quiverdp enumerate QUIVER --degrees D   List canonical admissible quintuples
    quiverdp generate QUIVER --degrees D    Generators of one multidegree
    quiverdp generate QUIVER --all --bounds R,C
    quiverdp verify QUIVER --degrees D      Invariance and weight of the generators
    quiverdp verify QUIVER --input FILE     ... of a saved generate output
    quiverdp oracle QUIVER --degrees D      Brute-force invariant dimension
    quiverdp span QUIVER --degrees D        Generator rank against the oracle
    quiverdp span QUIVER --bounds R,C       ... for every multidegree in range
    quiverdp example-bilinear [--d N] [--max-s N]
    quiverdp dp-suite --shape t,r,s [--trials N]
    quiverdp config [show|set KEY VALUE]
    quiverdp version
    quiverdp help

QUIVER is a .json/.toml file or @NAME for a built-in sample
(@example-mixed, @bilinear, @single-pair).

Options:
    --degrees "t:..;r:..;s:.."   Multidegree per X-, Y- and Z-arrow
    --char P                     0 for the rationals or an odd prime
    --limit N                    Truncate the quintuple stream (0 = all)
    --samples N                  Group samples per check
    --seed N                     Sampling seed
    --cap-size N                 Largest t+2r / t+2s evaluated
    --jobs N                     Worker processes (0 = all cores)
    --method NAME                derivations | random-kernel
    --format json|text           Output format of generate
    --out DIR                    Write artifacts into DIR
    --debug                      Debug logging

Exit codes:
    0 ok, 1 usage, 2 parse error, 3 invalid quiver, 4 cap exceeded,
    5 check failed, 6 unsupported in this characteristic

Examples:
    quiverdp admissible @bilinear --degrees "s:2"
    quiverdp generate @single-pair --degrees "t:2;r:;s:"
    quiverdp span @single-pair --bounds 4,4
""")


# ============================================================================
# Argument handling
# ============================================================================


VALUE_FLAGS = {
    "--degrees": "degrees",
    "--char": "characteristic",
    "--limit": "limit",
    "--samples": "samples",
    "--seed": "seed",
    "--cap-size": "cap_size",
    "--jobs": "jobs",
    "--out": "out_dir",
    "--method": "method",
    "--format": "format",
    "--bounds": "bounds",
    "--input": "input",
    "--A": "A",
    "--B": "B",
    "--d": "d",
    "--max-s": "max_s",
    "--shape": "shape",
    "--trials": "trials",
}
SWITCHES = {"--all": "all", "--debug": "debug"}
CONFIG_KEYS = ("characteristic", "limit", "samples", "seed", "cap_size", "jobs", "out_dir")
INT_KEYS = ("characteristic", "limit", "samples", "seed", "cap_size", "jobs", "d", "max_s", "trials")


def parse_args(args: list[str]) -> tuple[list[str], dict]:
    """Positional arguments and options; config-backed options override the config"""
    from quiverdp.core.config import override_config
    from quiverdp.core.logging import setup_logging

    positional: list[str] = []
    options: dict = {}
    i = 0
    while i < len(args):
        arg = args[i]
        if arg in VALUE_FLAGS:
            if i + 1 >= len(args):
                raise QuiverParseError(f"{arg} needs a value")
            options[VALUE_FLAGS[arg]] = args[i + 1]
            i += 2
        elif arg in SWITCHES:
            options[SWITCHES[arg]] = True
            i += 1
        elif arg.startswith("--"):
            raise QuiverParseError(f"Unknown option: {arg}")
        else:
            positional.append(arg)
            i += 1

    for key in INT_KEYS:
        if key in options:
            try:
                options[key] = int(options[key])
            except ValueError as e:
                raise QuiverParseError(f"--{key.replace('_', '-')} expects an integer") from e

    setup_logging(debug=options.get("debug", False))
    overrides = {k: options[k] for k in CONFIG_KEYS if k in options}
    if overrides:
        try:
            override_config(**overrides)
        except Exception as e:
            raise QuiverParseError(f"Bad option value: {e}") from e
    return positional, options


def _field():
    from quiverdp.algebra.scalars import ScalarField
    from quiverdp.core.config import get_config

    try:
        return ScalarField(get_config().characteristic)
    except ValueError as e:
        raise QuiverParseError(str(e)) from e


def _quiver(positional: list[str]):
    from quiverdp.quiver.io import load_quiver
    from quiverdp.quiver.samples import SAMPLES

    if not positional:
        raise QuiverParseError("Missing QUIVER argument")
    source = positional[0]
    if source.startswith("@"):
        factory = SAMPLES.get(source[1:])
        if factory is None:
            raise QuiverParseError(f"Unknown sample {source}; choose from {', '.join(SAMPLES)}")
        return factory()
    return load_quiver(source)


def _zigzag(quiver):
    """The quiver itself when in zigzag form, otherwise its reduction"""
    from quiverdp.core.logging import get_logger
    from quiverdp.quiver.model import classify_zigzag
    from quiverdp.quiver.reduction import reduce

    quiver.ensure_valid()
    try:
        return classify_zigzag(quiver)
    except QuiverValidationError:
        get_logger("cli").info("Quiver is not in zigzag form, reducing")
        return reduce(quiver).target


def _degree(options: dict, zq):
    from quiverdp.engine.admissible import parse_degrees

    if "degrees" not in options:
        raise QuiverParseError("--degrees is required")
    return parse_degrees(options["degrees"], zq.arrow_counts)


def _pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError as e:
        raise QuiverParseError(f"Expected two integers 'R,C', got {text!r}") from e
    return a, b


def _blocks(text: str, ground: int):
    from quiverdp.algebra.combinatorics import Distribution

    try:
        blocks = [[int(x) for x in chunk.split(",")] for chunk in text.split(";") if chunk.strip()]
        return Distribution.of(blocks, ground=ground)
    except ValueError as e:
        raise QuiverParseError(f"Bad block list {text!r}: {e}") from e


def _emit(report, options: dict, name: str) -> None:
    from quiverdp.core.config import get_config
    from quiverdp.core.report import encode_report, write_report

    if "out_dir" in options:
        path = Path(get_config().out_dir) / name
        write_report(report, path)
        print(f"Wrote {path}")
    else:
        sys.stdout.write(encode_report(report).decode())


# ============================================================================
# Commands
# ============================================================================


def handle_validate(args: list[str]) -> int:
    from quiverdp.quiver.model import classify_zigzag

    positional, _ = parse_args(args)
    quiver = _quiver(positional)
    violations = quiver.validate()
    if violations:
        print(f"invalid: {len(violations)} violation(s)")
        for v in violations:
            print(f"  {v}")
        return QuiverValidationError.exit_code
    try:
        zq = classify_zigzag(quiver)
        print(f"valid; zigzag form with l1={zq.l1}, l2={zq.l2}, arrows X/Y/Z={zq.arrow_counts}")
    except QuiverValidationError as e:
        print("valid; not in zigzag form")
        for v in e.violations:
            print(f"  {v}")
    return 0


def handle_reduce(args: list[str]) -> int:
    from quiverdp.core.config import get_config
    from quiverdp.core.report import encode_report, write_report
    from quiverdp.quiver.io import dump_quiver
    from quiverdp.quiver.reduction import reduce

    positional, options = parse_args(args)
    red = reduce(_quiver(positional))
    table = red.to_dict(_field())
    if "out_dir" not in options:
        sys.stdout.write(encode_report(table).decode())
        return 0
    stem = Path(positional[0].lstrip("@")).stem
    out = Path(get_config().out_dir)
    dump_quiver(red.target.quiver, out / f"{stem}_zigzag.json")
    write_report(table, out / f"{stem}_phi.json")
    print(f"Wrote {out / f'{stem}_zigzag.json'} and {out / f'{stem}_phi.json'}", file=sys.stderr)
    return 0


def handle_admissible(args: list[str]) -> int:
    from quiverdp.engine.admissible import solve_admissible

    positional, options = parse_args(args)
    zq = _zigzag(_quiver(positional))
    d = _degree(options, zq)
    weight = solve_admissible(zq, d)
    if weight is None or d.is_zero():
        print(f"{d}: not admissible")
        return 0
    print(f"{d}: admissible")
    print(f"  p = {list(weight.p)}")
    print(f"  q = {list(weight.q)}")
    print(f"  weight = {weight.epsilon}")
    return 0


def handle_enumerate(args: list[str]) -> int:
    from itertools import islice

    from quiverdp.core.config import get_config
    from quiverdp.engine.admissible import enumerate_quintuples, solve_admissible

    positional, options = parse_args(args)
    zq = _zigzag(_quiver(positional))
    d = _degree(options, zq)
    weight = solve_admissible(zq, d)
    if weight is None or d.is_zero():
        print(f"{d}: not admissible")
        return 0
    limit = get_config().limit
    stream = enumerate_quintuples(zq, d, weight)
    count = 0
    for quint in islice(stream, limit or None):
        count += 1
        a = " ".join("{" + ",".join(map(str, b)) + "}" for b in quint.A.blocks) or "-"
        b = " ".join("{" + ",".join(map(str, b)) + "}" for b in quint.B.blocks) or "-"
        print(f"{count:>4}  A: {a}  B: {b}")
    print(f"{count} quintuple(s)")
    return 0


def _text_batch(batch) -> str:
    lines = []
    for result in batch.results:
        rec = result.record()
        lines.append(f"# degree {rec.degree}  weight {tuple(rec.weight)}  sign {rec.sign:+d}")
        lines.append(f"# A {rec.A}  B {rec.B}")
        lines.append(rec.generator)
    if batch.zero_count:
        lines.append(f"# {batch.zero_count} zero generator(s) dropped")
    if batch.truncated:
        lines.append("# quintuple stream truncated by --limit")
    return "\n".join(lines) + "\n"


def handle_generate(args: list[str]) -> int:
    from quiverdp.engine.admissible import (
        AdmissibleQuintuple,
        degree_range,
        is_admissible_quintuple,
        solve_admissible,
    )
    from quiverdp.engine.generator import (
        GeneratorBatch,
        GeneratorResult,
        build_generator,
        generator_sign,
        generators_for_degree,
    )

    positional, options = parse_args(args)
    zq = _zigzag(_quiver(positional))
    field = _field()

    if options.get("all"):
        rows, cols = _pair(options.get("bounds", "4,4"))
        batches = [generators_for_degree(zq, d, field=field) for d in degree_range(zq, rows, cols)]
        batches = [b for b in batches if b.results]
    else:
        d = _degree(options, zq)
        if "A" in options or "B" in options:
            weight = solve_admissible(zq, d)
            if weight is None:
                print(f"{d}: not admissible")
                return 0
            t, r, s = d.totals
            quint = AdmissibleQuintuple(
                d, weight, A=_blocks(options.get("A", ""), t + 2 * r), B=_blocks(options.get("B", ""), t + 2 * s)
            )
            if not is_admissible_quintuple(zq, quint):
                raise QuiverParseError("The given A and B do not form an admissible quintuple")
            poly = build_generator(zq, quint, field)
            batch = GeneratorBatch(degree=d, weight=weight, quintuples=1)
            if poly.is_zero():
                batch.zero_count = 1
            else:
                batch.results.append(GeneratorResult(quint, poly, generator_sign(quint)))
            batches = [batch]
        else:
            batches = [generators_for_degree(zq, d, field=field)]

    if options.get("format", "json") == "text":
        data = "".join(_text_batch(b) for b in batches).encode()
        if "out_dir" in options:
            from quiverdp.core.config import get_config

            path = Path(get_config().out_dir) / "generators.txt"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
            print(f"Wrote {path}")
        else:
            sys.stdout.write(data.decode())
    else:
        payload = {"characteristic": field.characteristic, "batches": [b.to_dict() for b in batches]}
        _emit(payload, options, "generators.json")
    return 0


def _load_generators(path: str, field):
    import msgspec

    from quiverdp.algebra.polynomial import parse

    try:
        data = msgspec.json.decode(Path(path).read_bytes())
    except (OSError, msgspec.DecodeError) as e:
        raise QuiverParseError(f"Cannot read generator file {path}: {e}") from e
    items = []
    for batch in data.get("batches", []):
        for rec in batch.get("generators", []):
            items.append((rec, parse(rec["generator"], field)))
    return items


def handle_verify(args: list[str]) -> int:
    from quiverdp.core.report import CheckReport
    from quiverdp.engine.generator import generators_for_degree
    from quiverdp.verify.checks import check_invariance, check_weight

    positional, options = parse_args(args)
    zq = _zigzag(_quiver(positional))
    field = _field()
    if "input" in options:
        items = [(rec["A"], rec["B"], rec["weight"], poly) for rec, poly in _load_generators(options["input"], field)]
        title = f"verify {options['input']}"
    else:
        d = _degree(options, zq)
        batch = generators_for_degree(zq, d, field=field)
        items = [
            ([list(b) for b in r.quintuple.A.blocks], [list(b) for b in r.quintuple.B.blocks],
             list(r.quintuple.weight.epsilon), r.polynomial)
            for r in batch.results
        ]
        title = f"verify {d}"

    report = CheckReport(title=title)
    for k, (a, b, epsilon, poly) in enumerate(items, start=1):
        label = f"[{k}] A={a} B={b}"
        report.checks.append(check_invariance(poly, zq, field=field, name=f"invariance {label}"))
        report.checks.append(check_weight(poly, zq, epsilon, field=field, name=f"weight {label}"))
    _emit(report, options, "verify.json")
    return 0 if report.passed else CheckFailedError.exit_code


def handle_oracle(args: list[str]) -> int:
    from quiverdp.verify.oracle import oracle_dimension

    positional, options = parse_args(args)
    zq = _zigzag(_quiver(positional))
    d = _degree(options, zq)
    dim = oracle_dimension(zq, d, method=options.get("method"), field=_field())
    print(f"{d}: dimension {dim}")
    return 0


def handle_span(args: list[str]) -> int:
    from quiverdp.verify.oracle import span_sweep, spanning_check

    positional, options = parse_args(args)
    zq = _zigzag(_quiver(positional))
    field = _field()
    method = options.get("method")
    if "bounds" in options:
        rows, cols = _pair(options["bounds"])
        reports = span_sweep(zq, rows, cols, method=method, field=field)
    else:
        reports = [spanning_check(zq, _degree(options, zq), method=method, field=field)]
    payload = {"reports": [r.to_dict() for r in reports], "passed": all(r.passed for r in reports)}
    _emit(payload, options, "span.json")
    return 0 if payload["passed"] else CheckFailedError.exit_code


def handle_bilinear(args: list[str]) -> int:
    from quiverdp.verify.bilinear import bilinear_example_suite

    _, options = parse_args(args)
    report = bilinear_example_suite(d=options.get("d", 1), max_s=options.get("max_s", 3), field=_field())
    _emit(report, options, "bilinear.json")
    return 0 if report.passed else CheckFailedError.exit_code


def handle_dp_suite(args: list[str]) -> int:
    from quiverdp.core.config import get_config
    from quiverdp.engine.dp import dp_property_suite

    _, options = parse_args(args)
    shape = options.get("shape", "2,1,0")
    try:
        t, r, s = (int(x) for x in shape.split(","))
    except ValueError as e:
        raise QuiverParseError(f"--shape expects t,r,s, got {shape!r}") from e
    config = get_config()
    report = dp_property_suite(
        t, r, s, trials=options.get("trials", 10), seed=config.seed, field=_field(), cap=config.cap_size
    )
    _emit(report, options, "dp-suite.json")
    return 0 if report.passed else CheckFailedError.exit_code


def handle_config(args: list[str]) -> int:
    """Handle config subcommands"""
    from quiverdp.core.config import CONFIG_FILE, get_config, update_config

    if not args or args[0] == "show":
        config = get_config()
        print(f"Configuration file: {CONFIG_FILE}")
        for section, values in config.to_dict().items():
            print()
            print(f"[{section}]")
            for key, value in values.items():
                print(f"  {key} = {value}")

    elif args[0] == "set" and len(args) >= 3:
        key = args[1].split(".")[-1].replace("-", "_")
        value = args[2]
        try:
            update_config(**{key: int(value) if key != "out_dir" else value})
        except ValueError as e:
            print(f"Error: {e}")
            return USAGE_EXIT
        print(f"Set {key} = {value}")
        print(f"Saved to {CONFIG_FILE}")

    else:
        print("Usage: quiverdp config [show|set KEY VALUE]")
        return USAGE_EXIT
    return 0


if __name__ == "__main__":
    main()
