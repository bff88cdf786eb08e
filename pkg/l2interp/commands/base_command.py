import sys
from abc import ABC, abstractmethod
from typing import Iterable, Optional, Sequence

from l2interp.kernels.spec import KernelSpec, parse_kernel_name
from l2interp.utils.common import render_csv, write_csv
from l2interp.utils.config import ConfigValidator
from l2interp.utils.logger import Logger


class BaseCommand(ABC):
    """
    Abstract Base Class for all CLI commands.
    Defines the interface for configuring argument parsers and executing commands.
    """
    help_text = "Base command help text."

    @abstractmethod
    def configure_parser(self, parser):
        """
        Configures the argparse subparser for this command.
        This method should add all command-specific arguments and set the default function to self.execute.
        """
        pass

    @abstractmethod
    def execute(self, args) -> int:
        """
        Executes the logic for this command based on the parsed arguments
        and returns the process exit code.
        """
        pass

    # --- shared helpers ---

    @staticmethod
    def add_kernel_arguments(parser, required: bool = True):
        parser.add_argument("--kernel", required=required,
                            help="Kernel name: linear, keys[:a], cubic3, optimal:L, truncsinc:L")
        parser.add_argument("--L", dest="support", type=int, help="Support size for optimal/truncsinc kernels")

    @staticmethod
    def kernel_from_args(args) -> KernelSpec:
        return parse_kernel_name(args.kernel, args.support)

    @staticmethod
    def validator(args, output_dir: Optional[str] = None) -> ConfigValidator:
        return ConfigValidator(
            threads=getattr(args, "threads", None),
            quadrature_tolerance=getattr(args, "tolerance", None),
            output_dir=output_dir,
        )

    @staticmethod
    def emit_csv(out: Optional[str], header: Sequence[str], rows: Iterable[Sequence], validator: ConfigValidator):
        """Writes CSV to ``out`` atomically, or to stdout when no path is given."""
        if out:
            path = validator.validate_output_path(out)
            write_csv(path, header, rows)
            Logger.get_logger().info(f"Wrote {path}")
        else:
            sys.stdout.write(render_csv(header, rows))
