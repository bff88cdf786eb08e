from l2interp.commands.base_command import BaseCommand
from l2interp.spectral import spectrum_sweep
from l2interp.utils.config import PASS_RETURN_CODE
from l2interp.utils.spinner import Spinner


class SpectrumCommand(BaseCommand):
    help_text = "Sweep the kernel's Fourier transform F_h(t) and write t, F(t) as CSV"

    def configure_parser(self, parser):
        self.add_kernel_arguments(parser)
        parser.add_argument("--tmin", type=float, default=0.0, help="First frequency (default: 0)")
        parser.add_argument("--tmax", type=float, default=3.0, help="Last frequency (default: 3)")
        parser.add_argument("--points", type=int, default=301, help="Number of frequencies (default: 301)")
        parser.add_argument("--out", help="Output CSV path (default: stdout)")
        parser.set_defaults(func=self.execute)

    def execute(self, args):
        validator = self.validator(args)
        validator.validate_sweep(args.tmin, args.tmax, args.points)
        spec = self.kernel_from_args(args)
        config = validator.config

        with Spinner(message=f"Computing spectrum of {spec.name}..."):
            table = spectrum_sweep(spec, args.tmin, args.tmax, args.points,
                                   tolerance=config.quadrature_tolerance, workers=config.worker_count)

        self.emit_csv(args.out, ("t", "F"), table.rows(), validator)
        return PASS_RETURN_CODE
