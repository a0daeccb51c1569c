"""witt-residue - higher residue pairings over Q and truncated Witt vectors."""

import logging
import sys
from collections.abc import Sequence

from app.cli import emit_report, global_options, run_command

logger = logging.getLogger(__name__)


def configure_logging(level: str) -> None:
    """Log to stderr so that reports on stdout stay byte-identical."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    options = global_options(argv)
    configure_logging(options.log_level)
    logger.info(f"Running {' '.join(argv)}")

    report = run_command(argv)
    emit_report(report, options.format, sys.stdout)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
