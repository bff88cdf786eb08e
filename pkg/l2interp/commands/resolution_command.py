import math
import sys

from pydantic import ValidationError

from l2interp.commands.base_command import BaseCommand
from l2interp.errors import UsageError
from l2interp.kernels.spec import parse_kernel_list
from l2interp.lut import (
    ResolutionParams,
    asymptotic_resolution,
    min_table_precision,
    permissible_resolution,
    resolution_sweep,
)
from l2interp.utils.config import PASS_RETURN_CODE, format_validation_error
from l2interp.utils.logger import Logger
from l2interp.utils.spinner import Spinner


def _format_bits(value: float) -> str:
    return "unbounded" if math.isinf(value) else f"{value:.6f}"


def _add_bound_arguments(parser):
    parser.add_argument("--L", dest="support", type=int, help="Kernel support size L")
    parser.add_argument("--D", dest="dimension", type=int, default=2, help="Signal dimension D (default: 2)")
    parser.add_argument("--h", dest="h_bound", type=float, default=1.1, help="Bound on |h(x)| (default: 1.1)")
    parser.add_argument("--gamma", dest="gamma_bound", type=float, help="Bound on |h'(x)|")


def _require(args, *names):
    missing = [f"--{name}" for name, attr in names if getattr(args, attr) is None]
    if missing:
        raise UsageError(f"missing required arguments: {', '.join(missing)}")


class ResolutionCommand(BaseCommand):
    help_text = "Permissible signal resolution B_0 of a precision-K table, or a B_0 sweep over K"

    def configure_parser(self, parser):
        _add_bound_arguments(parser)
        parser.add_argument("--K", dest="precision_k", type=int, help="Table precision K")
        parser.add_argument("--sweep", action="store_true",
                            help="Sweep K over [1e3, 1e7] using (h, gamma) measured from --kernels")
        parser.add_argument("--kernels", default="all", help="Kernel list for --sweep (default: all)")
        parser.add_argument("--points", type=int, default=41, help="Sweep points (default: 41)")
        parser.add_argument("--out", help="Output CSV path for --sweep (default: stdout)")
        parser.set_defaults(func=self.execute)

    def execute(self, args):
        validator = self.validator(args)
        if args.sweep:
            if args.points < 2:
                raise UsageError(f"--points must be >= 2, got {args.points}")
            specs = parse_kernel_list(args.kernels)
            with Spinner(message=f"Sweeping B_0 for {len(specs)} kernels..."):
                rows = resolution_sweep(specs, args.dimension, points=args.points)
            self.emit_csv(args.out, ("kernel", "L", "log10K", "B0", "B0_asymptotic"), rows, validator)
            return PASS_RETURN_CODE

        _require(args, ("L", "support"), ("gamma", "gamma_bound"), ("K", "precision_k"))
        try:
            params = ResolutionParams(
                support_l=args.support, dimension_d=args.dimension, h_bound=args.h_bound,
                gamma_bound=args.gamma_bound, precision_k=args.precision_k,
            )
        except ValidationError as e:
            raise UsageError(format_validation_error(e))

        Logger.get_logger().info(f"Asymptotic estimate: {_format_bits(asymptotic_resolution(params))} bits")
        sys.stdout.write(_format_bits(permissible_resolution(params)) + "\n")
        return PASS_RETURN_CODE


class MinKCommand(BaseCommand):
    help_text = "Smallest table precision K guaranteeing exact interpolation of B-bit signals"

    def configure_parser(self, parser):
        _add_bound_arguments(parser)
        parser.add_argument("--bits", type=int, required=True, help="Target bit depth B")
        parser.set_defaults(func=self.execute)

    def execute(self, args):
        _require(args, ("L", "support"), ("gamma", "gamma_bound"))
        try:
            # validates L, D, h and gamma with the same rules as `resolution`
            ResolutionParams(support_l=args.support, dimension_d=args.dimension, h_bound=args.h_bound,
                             gamma_bound=args.gamma_bound, precision_k=1)
        except ValidationError as e:
            raise UsageError(format_validation_error(e))
        if args.bits < 1:
            raise UsageError(f"--bits must be >= 1, got {args.bits}")

        k = min_table_precision(args.support, args.dimension, args.h_bound, args.gamma_bound, args.bits)
        sys.stdout.write(f"{k}\n")
        return PASS_RETURN_CODE
