# File: main.py
import argparse
import logging
import sys
from typing import Dict, List, Optional

from pydantic import ValidationError

from tensorcert.copositivity.copositivity_checker import certify
from tensorcert.copositivity.nmin_search import nmin_grid_oracle
from tensorcert.core.exceptions.tensor_cert_error import TensorCertError
from tensorcert.core.exceptions.tensor_format_error import TensorFormatError
from tensorcert.core.exceptions.tensor_precondition_error import TensorPreconditionError
from tensorcert.core.sym_tensor import SymTensor, inner_product
from tensorcert.core.tensor_config import IterationConfig, SearchConfig
from tensorcert.io.generators import GeneratorKind, generate
from tensorcert.io.report import OracleSection, PairingSection, Report
from tensorcert.io.tensor_file import TensorFileParser, emit_tensor
from tensorcert.spectral.perron_iteration import lambda_max, lambda_min_ess_nonpos
from tensorcert.spectral.spectral_bounds import bounds_row_sums, lambda_min_bounds
from tensorcert.structure.tensor_structure import classify, weakly_irreducible_partition
from util.logging_mixin import setup_logging

logger = logging.getLogger("tensorcert_main")

EXIT_ERROR = 2


def _shared_options() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--tolerance", type=float, default=None,
                        help="Iteration stopping and refutation tolerance (defaults: 1e-10 / 1e-9).")
    shared.add_argument("--seed", type=int, default=None, help="Seed for restarts and generators (env TENSORCERT_SEED).")
    shared.add_argument("--restarts", type=int, default=None, help="Random starts of the simplex search.")
    shared.add_argument("--grid", type=int, default=None, help="Composition total of the grid oracle.")
    shared.add_argument("--max-iterations", type=int, default=None, dest="max_iterations",
                        help="Power iteration cap per block.")
    shared.add_argument("--shift", type=float, default=None, help="Diagonal shift used inside the power iteration.")
    shared.add_argument("--workers", type=int, default=None, help="Threads for independent blocks.")
    shared.add_argument("--json", action="store_true", help="Print the report as JSON.")
    shared.add_argument("--progress", action="store_true", help="Show progress bars.")
    shared.add_argument("--log-level", default=None, dest="log_level",
                        help="Logging level (env TENSORCERT_LOG_LEVEL, default WARNING).")
    return shared


def build_parser() -> argparse.ArgumentParser:
    shared = _shared_options()
    parser = argparse.ArgumentParser(prog="tensorcert",
                                     description="Spectral bounds and copositivity certificates for symmetric tensors.")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, text in (("info", "sign classes, row sums and diagonal statistics"),
                       ("partition", "weakly irreducible block partition"),
                       ("eigen", "lambda_max and/or lambda_min with residuals"),
                       ("bounds", "row-sum bounds on lambda_max / lambda_min"),
                       ("certify", "copositivity certificate with its evidence chain"),
                       ("oracle", "grid minimum of A x^k on the k-norm simplex")):
        command = commands.add_parser(name, parents=[shared], help=text)
        command.add_argument("tensor", help="Tensor file ('-' for stdin).")

    pair = commands.add_parser("pair", parents=[shared], help="inner product <A, B>")
    pair.add_argument("tensor", help="Tensor file A.")
    pair.add_argument("other", help="Tensor file B.")

    gen = commands.add_parser("gen", parents=[shared], help="write a generated tensor file")
    gen.add_argument("kind", choices=[kind.value for kind in GeneratorKind])
    gen.add_argument("--order", type=int, default=3)
    gen.add_argument("--dim", type=int, default=2)
    gen.add_argument("--diagonal", default=None, help="Diagonal values, e.g. '3,1,2'.")
    gen.add_argument("--factors", default=None, help="CP factors, e.g. '1,0;0,1'.")
    gen.add_argument("--edges", default=None, help="Hyperedges, e.g. '1,2,3;2,3,4'.")
    gen.add_argument("--regular-degree", type=int, default=None, dest="regular_degree",
                     help="Random regular hypergraph degree when --edges is not given.")
    gen.add_argument("--density", type=float, default=0.6)
    gen.add_argument("--scale", type=float, default=1.0)
    gen.add_argument("-o", "--output", default=None, help="Output file (default stdout).")
    return parser


def _only_given(**values) -> Dict[str, object]:
    return {name: value for name, value in values.items() if value is not None}


def iteration_config(args) -> IterationConfig:
    return IterationConfig(**_only_given(tolerance=args.tolerance, max_iterations=args.max_iterations,
                                         shift=args.shift, workers=args.workers),
                           show_progress=args.progress)


def search_config(args) -> SearchConfig:
    return SearchConfig(**_only_given(tolerance=args.tolerance, restarts=args.restarts,
                                      grid_resolution=args.grid, seed=args.seed),
                        show_progress=args.progress)


def _split_rows(text: Optional[str], cast, flag: str) -> Optional[List[List]]:
    if text is None:
        return None
    try:
        return [[cast(token) for token in row.split(",")] for row in text.split(";") if row.strip()]
    except ValueError:
        raise TensorFormatError(f"cannot parse {flag} value {text!r}")


def load_tensor(path: str) -> SymTensor:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    return TensorFileParser().parse(text).tensor


def run_info(args) -> Report:
    a = load_tensor(args.tensor)
    report = Report.for_tensor("info", a)
    report.add_classification(a, classify(a))
    return report


def run_partition(args) -> Report:
    a = load_tensor(args.tensor)
    report = Report.for_tensor("partition", a)
    report.add_partition(weakly_irreducible_partition(a))
    return report


def run_eigen(args) -> Report:
    a = load_tensor(args.tensor)
    structure = classify(a)
    if not (structure.essentially_nonnegative or structure.essentially_nonpositive):
        raise TensorPreconditionError("eigen needs an essentially nonnegative or essentially nonpositive tensor",
                                      requirement="sign_structure")
    cfg = iteration_config(args)
    report = Report.for_tensor("eigen", a)
    if structure.essentially_nonnegative:
        report.add_eigen("lambda_max", lambda_max(a, cfg))
    if structure.essentially_nonpositive:
        report.add_eigen("lambda_min", lambda_min_ess_nonpos(a, cfg))
    return report


def run_bounds(args) -> Report:
    a = load_tensor(args.tensor)
    structure = classify(a)
    report = Report.for_tensor("bounds", a)
    if structure.nonnegative or (structure.symmetric and structure.essentially_nonnegative):
        report.add_bounds("lambda_max", bounds_row_sums(a))
    if structure.essentially_nonpositive:
        report.add_bounds("lambda_min", lambda_min_bounds(a))
    if not report.bounds:
        raise TensorPreconditionError("no row-sum bound applies to this sign structure", requirement="sign_structure")
    return report


def run_certify(args) -> Report:
    a = load_tensor(args.tensor)
    report = Report.for_tensor("certify", a)
    report.add_certificate(a, certify(a, search_config(args)))
    return report


def run_oracle(args) -> Report:
    a = load_tensor(args.tensor)
    cfg = search_config(args)
    estimate = nmin_grid_oracle(a, cfg.grid_resolution)
    report = Report.for_tensor("oracle", a)
    report.oracle = OracleSection(value=estimate.value, argmin=estimate.argmin.tolist(),
                                  resolution=cfg.grid_resolution)
    return report


def run_pair(args) -> Report:
    a, b = load_tensor(args.tensor), load_tensor(args.other)
    tolerance = search_config(args).tolerance
    value = inner_product(a, b)
    report = Report.for_tensor("pair", a)
    report.pairing = PairingSection(inner_product=value, nonnegative=value >= -tolerance, tolerance=tolerance)
    return report


def run_gen(args) -> str:
    diagonal = _split_rows(args.diagonal, float, "--diagonal")
    parameters = {
        "order": args.order,
        "dim": args.dim,
        "diagonal": diagonal[0] if diagonal else None,
        "factors": _split_rows(args.factors, float, "--factors"),
        "edges": _split_rows(args.edges, int, "--edges"),
        "regular_degree": args.regular_degree,
        "density": args.density,
        "scale": args.scale,
    }
    seed = search_config(args).seed
    a = generate(args.kind, parameters, seed)
    text = emit_tensor(a, comments=[f"{args.kind} order {a.order} dim {a.dim} seed {seed}"])
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info("Wrote %s to %s", args.kind, args.output)
    return text


COMMANDS = {
    "info": run_info,
    "partition": run_partition,
    "eigen": run_eigen,
    "bounds": run_bounds,
    "certify": run_certify,
    "oracle": run_oracle,
    "pair": run_pair,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        if args.command == "gen":
            text = run_gen(args)
            if not args.output:
                sys.stdout.write(text)
            return 0
        report = COMMANDS[args.command](args)
    except TensorCertError as e:
        print(f"error: {type(e).__name__}: {e.message}", file=sys.stderr)
        logger.debug("%s failed", args.command, exc_info=True)
        return EXIT_ERROR
    except ValidationError as e:
        reason = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        print(f"error: ValidationError: {reason}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR

    print(report.model_dump_json(indent=2) if args.json else report.to_text())
    if report.certificate is not None:
        return report.certificate.exit_status
    return 0


if __name__ == "__main__":
    sys.exit(main())
