"""Entry point for CCPB Toolbox."""
import logging
import os
import sys

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config.solver_config import resolve_settings, save_config
from core.command_manager import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, CommandManager
from core.errors import CCPBError, InvalidParameterError
from core.output_writer import write_output

logger = logging.getLogger("ccpb")


def main(argv=None) -> int:
    """
    Parse the command line, run one command, and write its output.

    Returns:
        int: 0 on success, 1 on usage errors, 2 on numerical failure
    """
    manager = CommandManager()
    parser = manager.build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )

    settings = resolve_settings(args.tol, getattr(args, "n_samples", None), args.jobs)
    args.tol, args.n_samples, args.jobs = settings["tol"], settings["n_samples"], settings["jobs"]
    if args.save_defaults:
        if not save_config(settings):
            logger.warning("Could not save defaults")

    command = manager.get_command(args.command)
    try:
        record = command.run(args)
        text = write_output(record, args.format, args.out)
    except InvalidParameterError as e:
        print(f"{args.command}: invalid parameter: {e}", file=sys.stderr)
        return EXIT_USAGE
    except CCPBError as e:
        print(f"{args.command}: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    if not args.out:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
