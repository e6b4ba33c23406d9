"""Command line entrypoint

    stssc-sim run --scheme stssc --code alamouti --snr 0:2:30 -o out.csv
    stssc-sim compare stssc.csv afost.csv -o table.csv
    stssc-sim dump-design c34
"""
import argparse
import logging
import sys
from typing import List, Optional

from stssc.channel.model import FADING_MODELS
from stssc.config.file import FromKeyValue
from stssc.core.errors import ConfigurationError, OutputError, StsscError
from stssc.decoder.joint import DECODER_MODES
from stssc.harness.config import SimConfig, canonical_keys, load_defaults, load_preset
from stssc.harness.output import METRICS, compare_runs, emit_csv, format_csv
from stssc.harness.run import run_sweep
from stssc.phy.constellation import CONSTELLATIONS
from stssc.phy.framing import NORMALIZATIONS
from stssc.schemes.common import SCHEME_NAMES
from stssc.stbc.design import DESIGN_NAMES, build_design, format_design

__all__ = ["ArgumentParser", "build_parser", "config_from_args", "main"]

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_OUTPUT = 2

# flag dest -> setting name, only flags given on the command line override
_RUN_FLAGS = (
    "scheme", "code", "sources", "relays", "modulation", "fading",
    "normalization", "snr_db", "packets", "packet_bits", "seed", "workers",
    "output", "decoder", "noiseless", "permute_relays", "phases_override",
    "stderr",
)


def _add_run_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--preset", help="named figure setup from the shipped config")
    parser.add_argument("--config", help="key=value file, flags override it")
    parser.add_argument("--scheme", choices=SCHEME_NAMES)
    parser.add_argument("--code", choices=DESIGN_NAMES)
    parser.add_argument("--sources", type=int, help="number of sources N")
    parser.add_argument("--relays", type=int, help="number of relays M")
    parser.add_argument("--mod", dest="modulation", choices=sorted(CONSTELLATIONS))
    parser.add_argument("--fading", choices=FADING_MODELS)
    parser.add_argument("--normalization", choices=NORMALIZATIONS)
    parser.add_argument("--snr", dest="snr_db", help="a:step:b or a,b,c in dB")
    parser.add_argument("--packets", type=int, help="packet-sets per SNR point")
    parser.add_argument("--packet-bits", type=int, help="bits per packet")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--workers", type=int)
    parser.add_argument("-o", "--output", help="CSV file, stdout when absent")
    parser.add_argument("--decoder", choices=DECODER_MODES)
    parser.add_argument("--noiseless", action="store_const", const=True,
                        help="no noise at relays or destinations")
    parser.add_argument("--permute-relays", action="store_const", const=True,
                        help="random forwarding order per block")
    parser.add_argument("--phases-override", type=int,
                        help="count P*T slots per block for every scheme")
    parser.add_argument("--stderr", action="store_const", const=True,
                        help="add standard-error columns")


class ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors are configuration errors

    Subcommand parsers inherit the class, so a bad choice or type anywhere
    exits with the configuration code instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        raise ConfigurationError(message)


def build_parser() -> ArgumentParser:
    """Parser with run, compare and dump-design subcommands"""
    parser = ArgumentParser(
        prog="stssc-sim",
        description="Cooperative relay link simulator")
    parser.add_argument("--dump-design", metavar="NAME", choices=DESIGN_NAMES,
                        help="print a design and exit")
    parser.add_argument("-q", "--quiet", action="store_true", help="only log warnings")
    subparsers = parser.add_subparsers(dest="command")

    run = subparsers.add_parser("run", help="simulate an SNR sweep")
    _add_run_arguments(run)

    compare = subparsers.add_parser("compare", help="overlay result files")
    compare.add_argument("inputs", nargs="+", help="CSV files written by run")
    compare.add_argument("-o", "--output", help="table file, stdout when absent")
    compare.add_argument("--metric", choices=METRICS, default="ber")

    dump = subparsers.add_parser("dump-design", help="print a design")
    dump.add_argument("name", choices=DESIGN_NAMES)
    return parser


def config_from_args(args: argparse.Namespace) -> SimConfig:
    """Layer defaults, preset, config file and flags into one config"""
    settings = load_defaults()
    if args.preset:
        settings.update(load_preset(args.preset))
    if args.config:
        settings.update(canonical_keys(FromKeyValue.from_path(args.config)))
    for name in _RUN_FLAGS:
        value = getattr(args, name)
        if value is not None:
            settings[name] = value
    return SimConfig.from_mapping(settings, base={})


def _run(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    LOGGER.info("config %s: %s", config.config_hash, config)
    records = run_sweep(config)
    if config.output:
        emit_csv(records, config.output, config.stderr)
        LOGGER.info("wrote %d points to %s", len(records), config.output)
    else:
        sys.stdout.write(format_csv(records, config.stderr))
    return EXIT_OK


def _compare(args: argparse.Namespace) -> int:
    table = compare_runs(args.inputs, args.output, args.metric)
    if args.output is None:
        sys.stdout.write(table.to_csv(index=False, float_format="%.17g", lineterminator="\n"))
    return EXIT_OK


def _dump(name: str) -> int:
    sys.stdout.write(format_design(build_design(name)) + "\n")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return its exit code

    0 on success, 1 for configuration errors, 2 for I/O errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ConfigurationError:
        return EXIT_CONFIG
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        if args.dump_design:
            return _dump(args.dump_design)
        if args.command == "run":
            return _run(args)
        if args.command == "compare":
            return _compare(args)
        if args.command == "dump-design":
            return _dump(args.name)
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG
    except ConfigurationError as exc:
        LOGGER.error("%s", exc)
        return EXIT_CONFIG
    except (OutputError, OSError) as exc:
        LOGGER.error("%s", exc)
        return EXIT_OUTPUT
    except StsscError as exc:
        LOGGER.error("%s", exc)
        return EXIT_CONFIG
