"""Central tolerances and size caps shared by the verification suites."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass

REPORT_DIR_ENV = "PSEUDOSTAB_REPORT_DIR"

from .statevec import EXTRACT_CAP, SIM_CAP  # noqa: F401  (dense simulation, 4^n scans)

LAGRANGIAN_CAP = 3  # mandatory enumeration; k = 5 is opt-in
LAGRANGIAN_OPTIONAL_CAP = 5
DIAG_CAP = 6  # full diagonalization oracle


@dataclass(frozen=True)
class Tolerances:
    stab: float = 1e-9  # |<psi|P|psi>| >= 1 - stab counts as a stabilizer
    energy: float = 1e-9  # slack on energy bound comparisons
    matrix: float = 1e-12  # matrix identities and exact saturation values

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


def report_dir() -> str | None:
    """Default directory for reports, taken from the environment."""
    return os.environ.get(REPORT_DIR_ENV) or None
