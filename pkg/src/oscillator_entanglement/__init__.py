"""Ground-state spatial entanglement of two harmonically coupled oscillators."""

from .entropy import EntropyReport, entropy_report, linear_entropy_paper
from .errors import EntanglementError
from .params import DerivedFrequencies, SystemParams, derive

__version__ = "0.1.0"

__all__ = [
    "DerivedFrequencies",
    "EntanglementError",
    "EntropyReport",
    "SystemParams",
    "derive",
    "entropy_report",
    "linear_entropy_paper",
    "__version__",
]
