from l2interp.commands.base_command import BaseCommand
from l2interp.errors import UsageError
from l2interp.kernels import aliasing_term, eval_kernel
from l2interp.utils.config import PASS_RETURN_CODE


class KernelDumpCommand(BaseCommand):
    help_text = "Write sampled kernel values h(x) (or the aliasing term T_L(x)) as CSV"

    def configure_parser(self, parser):
        self.add_kernel_arguments(parser)
        parser.add_argument("--step", type=float, default=0.01, help="Sampling step in x (default: 0.01)")
        parser.add_argument("--out", help="Output CSV path (default: stdout)")
        parser.add_argument("--aliasing", action="store_true",
                            help="Dump T_L(x) = H_L(x) - Sinc(x) on [0, L) instead (optimal kernels only)")
        parser.set_defaults(func=self.execute)

    def execute(self, args):
        validator = self.validator(args)
        spec = self.kernel_from_args(args)
        if not args.step > 0:
            raise UsageError(f"--step must be positive, got {args.step}")
        support = spec.support
        count = int(round(support / args.step))

        if args.aliasing:
            if spec.kind != "optimal":
                raise UsageError("--aliasing applies to optimal:L kernels only")
            xs = [i * args.step for i in range(count) if i * args.step < support]
            rows = zip(xs, [aliasing_term(support, x) for x in xs])
            header = ("x", "T")
        else:
            xs = [i * args.step for i in range(-count, count + 1)]
            rows = zip(xs, eval_kernel(spec, xs).tolist())
            header = ("x", "h")

        self.emit_csv(args.out, header, rows, validator)
        return PASS_RETURN_CODE
