import argparse
import os
import sys
import traceback

from colorama import init

from l2interp.commands import command_registry
from l2interp.utils.common import clean_env_vars, exit_code_for, handle_failure
from l2interp.utils.config import USAGE_ERROR_RETURN_CODE
from l2interp.utils.logger import Logger
from l2interp.utils.version import get_version

init(autoreset=True)


class CliArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with the tool's usage code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        Logger.get_logger().error(f"{self.prog}: {message}")
        self.exit(USAGE_ERROR_RETURN_CODE)


def build_parser() -> argparse.ArgumentParser:
    parser = CliArgumentParser(prog="l2interp", description="L2-optimal interpolation kernel toolkit")
    parser.add_argument('--version', action='version', version=f"%(prog)s v{get_version()}")
    parser.add_argument('--threads', type=int, help="Worker threads, 0 = all cores (default: L2INTERP_THREADS or 0)")
    parser.add_argument('--tol', dest="tolerance", type=float, help="Absolute quadrature tolerance (default: 1e-10)")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Register all commands from the registry
    for cmd_name, cmd_class in command_registry.items():
        cmd_instance = cmd_class()
        cmd_parser = subparsers.add_parser(cmd_name, help=cmd_instance.help_text)
        cmd_instance.configure_parser(cmd_parser)

    return parser


def run(argv=None) -> int:
    """Parses ``argv``, runs one subcommand and returns the process exit code."""
    clean_env_vars()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR_RETURN_CODE

    if not hasattr(args, 'func'):
        parser.print_help(sys.stderr)
        return USAGE_ERROR_RETURN_CODE

    try:
        # Command classes directly execute via their 'func' attribute set in configure_parser
        exit_code = args.func(args)
    except Exception as e:
        Logger.get_logger().error(f"Command execution failed: {e}")
        if os.getenv('DEBUG', 'FALSE').upper() == 'TRUE':
            Logger.get_logger().debug("--- Full Traceback ---")
            Logger.get_logger().debug(traceback.format_exc())
        exit_code = exit_code_for(e)
    return handle_failure(exit_code)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
