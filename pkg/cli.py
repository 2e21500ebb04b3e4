#!/usr/bin/env python3
"""
Command-line front end.

Usage:
    python main.py analyze majority.json --table
    python main.py corpus --n 3 --m 1 --count 256 --out corpus/n3
    python main.py code --n 4 --defining-set 1,2,4,8
    python main.py complement f.json --out fc.json
    python main.py keystream f.json --state 1 --length 14
    python main.py bm --bits 0010111
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from analysis import analyze_code, analyze_function, failed_checks
from app import configure_logging, create_session, load_settings
from bounds import CONVENTIONS
from codes import HT_CONVENTIONS
from complement import complement_vectorial
from corpus import generate_corpus
from errors import AnalysisError
from field import make_field
from function_files import dumps_function, load_function, read_bits, save_function
from models import AnalysisSettings
from seq import FilterGenerator, berlekamp_massey, keystream
from store import ResultStore

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_ERROR = 2


def _add_analysis_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget", type=int, help="Cap on rank tests and enumerated codewords")
    parser.add_argument("--ht-coprime", choices=HT_CONVENTIONS, help="Step coprimality for root patterns")
    parser.add_argument("--thm12-convention", "--bound-convention", dest="bound_convention", choices=CONVENTIONS,
                        help="Binomial sum start for distance-based LDA bounds")
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="output_format", action="store_const", const="json", help="JSON report")
    output.add_argument("--table", dest="output_format", action="store_const", const="table", help="Summary table")
    parser.add_argument("--seed", type=int, help="Seed for sampled codewords and corpora")
    parser.add_argument("--timings", action="store_const", const=True, help="Include wall time per stage")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Annihilators, algebraic immunity and cyclic codes of (n,m)-functions")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--config", help="JSON settings file")
    parser.add_argument("--db", dest="database_url", help="SQLAlchemy URL of the result store")
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser("analyze", help="Full report for a function file")
    analyze.add_argument("input", help="Function file")
    analyze.add_argument("--out", help="Write the report here instead of stdout")
    _add_analysis_flags(analyze)

    corpus = subparsers.add_parser("corpus", help="Generate a regression corpus with an oracle manifest")
    corpus.add_argument("--n", type=int, required=True)
    corpus.add_argument("--m", type=int, default=1)
    corpus.add_argument("--count", type=int, required=True)
    corpus.add_argument("--seed", type=int)
    corpus.add_argument("--out", required=True, help="Output directory")

    code = subparsers.add_parser("code", help="Code from an explicit defining set")
    code.add_argument("--n", type=int, required=True)
    code.add_argument("--defining-set", required=True, help="Comma-separated exponents mod 2^n - 1")
    _add_analysis_flags(code)

    complement = subparsers.add_parser("complement", help="Algebraic complement of a function file")
    complement.add_argument("input", help="Function file")
    complement.add_argument("--out", help="Write the complement function file here")
    complement.add_argument("--repr", choices=("tt", "anf", "uni"), default="tt")

    stream = subparsers.add_parser("keystream", help="Filter-generator keystream")
    stream.add_argument("input", help="Function file")
    stream.add_argument("--state", default="1", help="Non-zero initial state, hex")
    stream.add_argument("--length", type=int, required=True)
    stream.add_argument("--format", choices=("bits", "hex"), default="bits")
    stream.add_argument("--out", help="Write the stream here instead of stdout")

    bm = subparsers.add_parser("bm", help="Berlekamp-Massey linear complexity of a bit stream")
    source = bm.add_mutually_exclusive_group(required=True)
    source.add_argument("--bits", help="0/1 string")
    source.add_argument("--file", help="File of 0/1 characters")
    return parser


def _cli_values(args: argparse.Namespace) -> Dict[str, Any]:
    keys = ("budget", "ht_coprime", "bound_convention", "output_format", "seed", "timings", "database_url")
    return {key: getattr(args, key) for key in keys if getattr(args, key, None) is not None}


def _emit(text: str, out: Optional[str] = None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
        logging.info(f"Wrote {out}")
    else:
        sys.stdout.write(text + "\n")


def render_table(report: Dict[str, Any]) -> str:
    """Two-column summary of the headline values and the failed checks"""
    def show(item):
        if isinstance(item, dict) and "method" in item:
            value = item.get("value", item.get("bracket"))
            return f"{value} ({item['method']})"
        return str(item)

    rows = [
        ("digest", report["function"]["digest"][:16]),
        ("n, m", f"{report['function']['n']}, {report['function']['m']}"),
        ("algebraic immunity", show(report["algebraic_immunity"])),
        ("LDA (product)", show(report["lda_product"])),
        ("G_F degree", f"{len(report['g_f']['gen_coeffs']) - 1} ({report['g_f']['method']})"),
        ("spectral immunity", show(report["spectral_immunity"])),
    ]
    for section in report["codes"]:
        rows.append((f"code b={section['b']}",
                     f"dim {section['dimension']}, lcd {section['lcd']}, d {show(section['min_distance'])}"))
    failed = failed_checks(report)
    rows.append(("strict checks", "all passed" if not failed else "FAILED: " + ", ".join(failed)))
    width = max(len(label) for label, _ in rows)
    return "\n".join(f"{label.ljust(width)}  {value}" for label, value in rows)


def cmd_analyze(args: argparse.Namespace, settings: AnalysisSettings, store: Optional[ResultStore]) -> int:
    F = load_function(args.input)
    report = analyze_function(F, settings)
    if store is not None:
        store.record_analysis(F, settings.report_dict(), report, source=args.input)
    if settings.output_format == "table":
        _emit(render_table(report), args.out)
    else:
        _emit(json.dumps(report, indent=2), args.out)
    failed = failed_checks(report)
    if failed:
        logging.error(f"Strict checks failed: {', '.join(failed)}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_corpus(args: argparse.Namespace, settings: AnalysisSettings, store: Optional[ResultStore]) -> int:
    manifest = generate_corpus(args.n, args.m, args.count, settings.seed, args.out, store)
    _emit(str(manifest))
    return EXIT_OK


def _parse_exponents(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise AnalysisError(f"Defining set must be comma-separated integers, got '{text}'") from None


def cmd_code(args: argparse.Namespace, settings: AnalysisSettings, store: Optional[ResultStore]) -> int:
    report = analyze_code(make_field(args.n), _parse_exponents(args.defining_set), settings)
    _emit(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_complement(args: argparse.Namespace, settings: AnalysisSettings, store: Optional[ResultStore]) -> int:
    pair = complement_vectorial(load_function(args.input))
    if args.out:
        save_function(pair.Fc, args.out, args.repr)
        logging.info(f"Wrote complement to {args.out}")
    else:
        _emit(dumps_function(pair.Fc, args.repr))
    if not (pair.pointwise_holds() and pair.anf_complement_holds()):
        logging.error("Complement disagrees with F + Delta (1,...,1)")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_keystream(args: argparse.Namespace, settings: AnalysisSettings, store: Optional[ResultStore]) -> int:
    F = load_function(args.input)
    try:
        state = int(args.state, 16)
    except ValueError:
        raise AnalysisError(f"State must be a hex field element, got '{args.state}'") from None
    if not 0 <= state < F.spec.order:
        raise AnalysisError(f"State {args.state} is not an element of GF(2^{F.n})")
    stream = keystream(FilterGenerator(F.spec, F, state), args.length)
    _emit(stream.bits() if args.format == "bits" else stream.to_hex(F.m), args.out)
    logging.info(f"Keystream period {stream.period}")
    return EXIT_OK


def cmd_bm(args: argparse.Namespace, settings: AnalysisSettings, store: Optional[ResultStore]) -> int:
    text = args.bits if args.bits is not None else Path(args.file).read_text(encoding="utf-8")
    result = berlekamp_massey(read_bits(text))
    _emit(json.dumps(result.to_dict(), indent=2))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "corpus": cmd_corpus,
    "code": cmd_code,
    "complement": cmd_complement,
    "keystream": cmd_keystream,
    "bm": cmd_bm,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    session = None
    try:
        settings = load_settings(args.config, _cli_values(args))
        store = None
        if settings.database_url:
            session = create_session(settings.database_url)
            store = ResultStore(session)
        return COMMANDS[args.command](args, settings, store)
    except (AnalysisError, ValueError, OSError) as e:
        logging.error(f"{args.command} failed: {e}")
        return EXIT_ERROR
    finally:
        if session is not None:
            session.close()


if __name__ == "__main__":
    sys.exit(main())
