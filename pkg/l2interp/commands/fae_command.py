import sys

from colorama import Fore

from l2interp.commands.base_command import BaseCommand
from l2interp.errors import UsageError
from l2interp.kernels.spec import parse_kernel_list, parse_kernel_name
from l2interp.spectral import fae, fae_table, optimal_fae_table
from l2interp.spectral.fae import MAX_OPTIMAL_SUPPORT
from l2interp.utils.config import PASS_RETURN_CODE
from l2interp.utils.logger import Logger
from l2interp.utils.spinner import Spinner


class FaeCommand(BaseCommand):
    help_text = "Print the frequency approximation error E(h) of one or more kernels"

    def configure_parser(self, parser):
        parser.add_argument("--kernel", required=True,
                            help="Kernel name, comma-separated list, or 'all' for the six reference kernels")
        parser.add_argument("--L", dest="support", type=int, help="Support size for optimal/truncsinc kernels")
        parser.add_argument("--digits", type=int, default=4, help="Decimals printed for a single kernel (default: 4)")
        parser.add_argument("--out", help="Write a CSV table (kernel, L, E, E1, E2) instead")
        parser.set_defaults(func=self.execute)

    def execute(self, args):
        validator = self.validator(args)
        tolerance = validator.config.quadrature_tolerance

        if "," in args.kernel or args.kernel.strip().lower() == "all":
            if args.support is not None:
                raise UsageError("--L cannot be combined with a kernel list")
            specs = parse_kernel_list(args.kernel)
        else:
            specs = [parse_kernel_name(args.kernel, args.support)]

        if len(specs) == 1 and not args.out:
            report = fae(specs[0], tolerance)
            Logger.get_logger().debug(f"{specs[0].name}: {report}")
            sys.stdout.write(f"{report.e_total:.{args.digits}f}\n")
            return PASS_RETURN_CODE

        with Spinner(message=f"Computing FAE for {len(specs)} kernels..."):
            rows = [
                (spec.name, spec.support, report.e_total, report.e1_component, report.e2_component)
                for spec, report in fae_table(specs, tolerance)
            ]
        self.emit_csv(args.out, ("kernel", "L", "E", "E1", "E2"), rows, validator)
        return PASS_RETURN_CODE


class FaeTableCommand(BaseCommand):
    help_text = "Tabulate the optimal error E_L and its power-law fit for L = 1..Lmax"

    def configure_parser(self, parser):
        parser.add_argument("--Lmax", dest="max_support", type=int, default=9,
                            help=f"Largest support size, at most {MAX_OPTIMAL_SUPPORT} (default: 9)")
        parser.add_argument("--out", help="Output CSV path (default: stdout)")
        parser.set_defaults(func=self.execute)

    def execute(self, args):
        validator = self.validator(args)
        if not 1 <= args.max_support <= MAX_OPTIMAL_SUPPORT:
            raise UsageError(f"--Lmax must be in [1, {MAX_OPTIMAL_SUPPORT}], got {args.max_support}")

        with Spinner(message=f"Computing E_L for L = 1..{args.max_support}..."):
            rows = optimal_fae_table(args.max_support, validator.config.quadrature_tolerance)

        worst = max(row[3] for row in rows)
        Logger.log_with_color('INFO', f"Largest relative deviation of the fit: {100 * worst:.2f}%", Fore.GREEN)
        self.emit_csv(args.out, ("L", "E_L", "E_fit", "rel_dev"), rows, validator)
        return PASS_RETURN_CODE
