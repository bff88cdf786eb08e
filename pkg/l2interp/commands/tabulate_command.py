from pathlib import Path

from l2interp.commands.base_command import BaseCommand
from l2interp.lut import tabulate, write_table, write_table_csv
from l2interp.utils.config import PASS_RETURN_CODE, ConfigValidator
from l2interp.utils.logger import Logger


class TabulateCommand(BaseCommand):
    help_text = "Tabulate a kernel into a precision-K lookup table (binary L2KT, or CSV for a .csv path)"

    def configure_parser(self, parser):
        self.add_kernel_arguments(parser)
        parser.add_argument("--K", dest="precision_k", type=int, required=True, help="Entries per unit interval")
        parser.add_argument("--out", required=True, help="Output path; '.csv' selects the CSV export")
        parser.add_argument("--max-entries", dest="max_entries", type=int,
                            help="Table size cap in entries (default: L2INTERP_LUT_CAP or 1e8)")
        parser.set_defaults(func=self.execute)

    def execute(self, args):
        validator = ConfigValidator(threads=args.threads, lut_memory_cap=args.max_entries)
        validator.validate_precision(args.precision_k)
        out = validator.validate_output_path(args.out)
        spec = self.kernel_from_args(args)

        table = tabulate(spec, args.precision_k, memory_cap=validator.config.lut_memory_cap)
        if Path(out).suffix.lower() == ".csv":
            write_table_csv(out, table)
        else:
            write_table(out, table)
        Logger.get_logger().info(f"Wrote {table.name} to {out}: {len(table.entries)} entries, {table.nbytes} bytes")
        return PASS_RETURN_CODE
