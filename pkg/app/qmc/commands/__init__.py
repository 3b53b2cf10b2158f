"""
Commands — Subcommand registration.

Each module exposes NAME, register(subparsers) and run(args). Subcommands
are registered in the order they appear in the help output.
"""

import argparse

from . import copula_bound, discrepancy, ftd, generate, history, verify
from .helpers import CLIParser

COMMANDS = {module.NAME: module for module in (generate, discrepancy, copula_bound, ftd, verify, history)}


def build_parser() -> argparse.ArgumentParser:
    parser = CLIParser(
        prog="qmc",
        description="Low-discrepancy sequences, exact discrepancy and copula integral bounds.",
    )
    parser.add_argument("--log-level", help="override LOG_LEVEL (DEBUG, INFO, WARNING, ...)")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CLIParser)
    for module in COMMANDS.values():
        sub = module.register(subparsers)
        sub.add_argument("--config", help="YAML file with flag values (explicit flags win)")
        sub.set_defaults(handler=module.run, _parser=sub)
    return parser
