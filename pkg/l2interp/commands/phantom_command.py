import re
from pathlib import Path

from colorama import Fore

from l2interp.bench import PhantomSpec, compare_kernels, error_colormap, generate_phantom
from l2interp.commands.base_command import BaseCommand
from l2interp.kernels.spec import parse_kernel_list
from l2interp.resample import BoundaryPolicy, write_f64, write_pgm, write_ppm
from l2interp.spectral import peak_pass_gain
from l2interp.utils.common import write_csv
from l2interp.utils.config import PASS_RETURN_CODE
from l2interp.utils.logger import Logger
from l2interp.utils.spinner import Spinner

# Kernels amplifying some frequency by more than 0.1% per pass are reported before the run.
GAIN_WARNING_THRESHOLD = 1.001


def file_stem(kernel_name: str) -> str:
    """Filesystem-safe form of a kernel name: ``optimal:3`` -> ``optimal_3``."""
    return re.sub(r"[^A-Za-z0-9.-]+", "_", kernel_name)


class PhantomCommand(BaseCommand):
    help_text = "Run the edge-phantom rotate/zoom round trip and compare kernels"

    def configure_parser(self, parser):
        parser.add_argument("--size", type=int, default=257, help="Phantom size, odd (default: 257)")
        parser.add_argument("--lines", type=int, default=8, help="Number of rays (default: 8)")
        parser.add_argument("--profile", choices=["hard", "antialiased"], default="hard", help="Ray profile (default: hard)")
        parser.add_argument("--cycles", type=int, default=11, help="Forward composites before inverting (default: 11)")
        parser.add_argument("--kernels", default="all", help="Kernel list or 'all' (default: all)")
        parser.add_argument("--boundary", choices=[b.value for b in BoundaryPolicy], default=BoundaryPolicy.MIRROR.value,
                            help="Edge handling (default: mirror)")
        parser.add_argument("--interleaved", action="store_true", help="Alternate forward and inverse composites")
        parser.add_argument("--round-per-pass", dest="round_per_pass", action="store_true",
                            help="Round to integers after every resampling pass")
        parser.add_argument("--clamp-per-pass", dest="clamp_per_pass", action="store_true",
                            help="Clip every resampling pass to the phantom's value range")
        parser.add_argument("--timings", action="store_true", help="Add a runtime_ms column to the summary CSV")
        parser.add_argument("--outdir", help="Output directory (default: current directory)")
        parser.set_defaults(func=self.execute)

    def execute(self, args):
        validator = self.validator(args, output_dir=args.outdir)
        validator.validate_phantom_run(args.size, args.cycles)
        config = validator.config
        specs = parse_kernel_list(args.kernels)
        outdir = Path(config.output_dir)
        outdir.mkdir(parents=True, exist_ok=True)

        self.warn_on_amplifying_kernels(specs, args.cycles)

        phantom = generate_phantom(PhantomSpec(size=args.size, num_lines=args.lines, line_profile=args.profile))
        write_pgm(outdir / "phantom.pgm", phantom)

        with Spinner(message=f"Running {args.cycles}-cycle round trip", total=len(specs)) as spinner:
            results = compare_kernels(
                phantom, specs, cycles=args.cycles, boundary=BoundaryPolicy(args.boundary),
                workers=min(config.worker_count, len(specs)),
                on_result=lambda result: spinner.advance(result.kernel),
                interleaved=args.interleaved, round_per_pass=args.round_per_pass,
                clamp_per_pass=args.clamp_per_pass,
            )

        # one color scale for every map
        scale_max = max(result.max_error for result in results) or 1.0
        header = ["kernel", "L", "rms", "max", "rms_full", "max_full"]
        if args.timings:
            header.append("runtime_ms")
        rows = []
        for result in results:
            stem = file_stem(result.kernel)
            write_pgm(outdir / f"{stem}_final.pgm", result.final_image)
            write_f64(outdir / f"{stem}_error.f64", result.error_map)
            write_ppm(outdir / f"{stem}_error.ppm", error_colormap(result.error_map, scale_max))
            row = [result.kernel, result.support, result.rms_error, result.max_error,
                   result.full_rms_error, result.full_max_error]
            if args.timings:
                row.append(result.runtime_ms)
            else:
                Logger.get_logger().info(f"{result.kernel}: {result.runtime_ms:.0f} ms")
            rows.append(row)

        write_csv(outdir / "summary.csv", header, rows)
        best = results[0]
        Logger.log_with_color('INFO', f"Lowest rms error: {best.kernel} ({best.rms_error:.6g}). Results in {outdir}",
                              Fore.GREEN)
        return PASS_RETURN_CODE

    @staticmethod
    def warn_on_amplifying_kernels(specs, cycles: int):
        passes = 8 * cycles
        for spec in specs:
            peak = peak_pass_gain(spec)
            if peak.gain > GAIN_WARNING_THRESHOLD:
                Logger.log_with_color(
                    'WARNING',
                    f"{spec.name} scales some frequencies by up to {peak.gain:.4f} per pass "
                    f"(shift {peak.shift:.3g}, omega {peak.omega:.3g}); errors can grow over {passes} passes",
                    Fore.YELLOW,
                )
