from .fae_command import FaeCommand, FaeTableCommand
from .kernel_dump_command import KernelDumpCommand
from .phantom_command import PhantomCommand
from .resample_command import ResampleCommand
from .resolution_command import MinKCommand, ResolutionCommand
from .spectrum_command import SpectrumCommand
from .tabulate_command import TabulateCommand

command_registry = {
    "kernel-dump": KernelDumpCommand,
    "spectrum": SpectrumCommand,
    "fae": FaeCommand,
    "fae-table": FaeTableCommand,
    "tabulate": TabulateCommand,
    "resolution": ResolutionCommand,
    "min-K": MinKCommand,
    "resample": ResampleCommand,
    "phantom": PhantomCommand,
}
