"""`history` — Print or clear the run ledger."""

import argparse
import json

from app.qmc.commands.helpers import Outcome, safe_command
from app.qmc.database import clear_runs, list_runs

NAME = "history"


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(NAME, help="show recorded runs as JSON lines")
    parser.add_argument("--command-name", dest="command_name", help="only runs of this subcommand")
    parser.add_argument("--clear", action="store_true", help="delete all runs (a backup is kept)")
    return parser


@safe_command(NAME)
def run(args: argparse.Namespace) -> Outcome:
    if args.clear:
        removed = clear_runs()
        print(json.dumps({"cleared": removed}))
        return Outcome(0)
    for entry in list_runs(args.command_name):
        print(json.dumps(entry, ensure_ascii=False, default=str))
    return Outcome(0)
