from .bounds import (
    UNBOUNDED,
    ResolutionParams,
    asymptotic_resolution,
    distorted_interpolation_bound,
    min_table_precision,
    permissible_resolution,
    product_perturbation_bound,
    resolution_sweep,
)
from .table import KernelTable, lut_eval, read_table, tabulate, write_table, write_table_csv
