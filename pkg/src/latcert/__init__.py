"""Exact lattice arithmetic and the certificate checker for quartic K3
automorphisms that extend to no Cremona transformation."""

__version__ = "0.1.0"

from .certificate import (
    CertificateInput,
    CertificateReport,
    StepResult,
    run_certificate,
)
from .lattice import GramLattice, Signature

__all__ = [
    "CertificateInput",
    "CertificateReport",
    "GramLattice",
    "Signature",
    "StepResult",
    "run_certificate",
    "__version__",
]
