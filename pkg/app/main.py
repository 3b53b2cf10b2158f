"""
Toolkit entrypoint — Command-line dispatch.

Run with: python -m app.main <command> [flags]
or through the `qmc` console script.
"""

import sys
from pathlib import Path

# Add project root to sys.path so 'app' module imports work when running this file directly
if __name__ == "__main__":
    project_root = Path(__file__).resolve().parent.parent
    if str(project_root) not in sys.path:
        sys.path.insert(0, str(project_root))

import logging
from collections.abc import Sequence

from app.qmc.commands import build_parser
from app.qmc.commands.helpers import apply_config, check_run_config, emit_error
from app.qmc.errors import UsageError
from app.qmc.logger import setup_logging

logger = logging.getLogger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        setup_logging(getattr(logging, args.log_level.upper(), None) if args.log_level else None)
        apply_config(args)
        check_run_config(args)
    except UsageError as e:
        emit_error(e)
        return 2

    logger.info("Running %s", args.command)
    return args.handler(args)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.info("Interrupted")
        sys.exit(130)
