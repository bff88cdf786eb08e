from l2interp.commands.base_command import BaseCommand
from l2interp.errors import UsageError
from l2interp.lut import read_table, tabulate
from l2interp.resample import (
    BoundaryPolicy,
    ExactBackend,
    LutBackend,
    image_center,
    make_rotation_pythagorean,
    make_zoom,
    parse_ratio,
    read_image,
    resample_affine,
    write_image,
)
from l2interp.utils.config import PASS_RETURN_CODE
from l2interp.utils.logger import Logger


class ResampleCommand(BaseCommand):
    help_text = "Zoom or rotate an image about its center with an exact rational transform"

    def configure_parser(self, parser):
        parser.add_argument("--in", dest="input", required=True, help="Input image (PGM, or .f64)")
        parser.add_argument("--out", required=True, help="Output image (PGM, or .f64)")
        self.add_kernel_arguments(parser)

        table = parser.add_mutually_exclusive_group()
        table.add_argument("--lut", dest="precision_k", type=int, help="Evaluate the kernel through a precision-K table")
        table.add_argument("--lut-file", dest="lut_file", help="Evaluate the kernel through a stored L2KT table")

        transform = parser.add_mutually_exclusive_group(required=True)
        transform.add_argument("--zoom", help="Zoom factor as a ratio a/b, e.g. 4/5")
        transform.add_argument("--rotate", help="Rotation sine as p/q with q^2 - p^2 a perfect square, e.g. 7/25")

        parser.add_argument("--boundary", choices=[b.value for b in BoundaryPolicy], default=BoundaryPolicy.MIRROR.value,
                            help="Edge handling (default: mirror)")
        parser.add_argument("--round", dest="round_output", action="store_true", help="Round output samples to integers")
        parser.add_argument("--clamp", action="store_true", help="Clip output samples to the input bit range")
        parser.set_defaults(func=self.execute)

    def execute(self, args):
        validator = self.validator(args)
        source = validator.validate_input_path(args.input)
        out = validator.validate_output_path(args.out)
        spec = self.kernel_from_args(args)

        if args.precision_k is not None:
            validator.validate_precision(args.precision_k)
            backend = LutBackend(tabulate(spec, args.precision_k, memory_cap=validator.config.lut_memory_cap))
        elif args.lut_file:
            backend = LutBackend(read_table(validator.validate_input_path(args.lut_file), source=spec))
        else:
            backend = ExactBackend(spec)

        image = read_image(source)
        if args.clamp and image.declared_bits is None:
            raise UsageError("--clamp needs an integer input image")
        center = image_center(image.width, image.height)
        if args.zoom:
            transform = make_zoom(*parse_ratio(args.zoom), center=center)
        else:
            transform = make_rotation_pythagorean(*parse_ratio(args.rotate), center=center)

        result = resample_affine(
            image, transform, backend, BoundaryPolicy(args.boundary),
            workers=validator.config.worker_count, round_output=args.round_output, clamp_range=args.clamp,
        )
        maxval = image.value_ceiling
        write_image(out, result, maxval=maxval)
        Logger.get_logger().info(f"Resampled {source} with {backend.name} into {out}")
        return PASS_RETURN_CODE
