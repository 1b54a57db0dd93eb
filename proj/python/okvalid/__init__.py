"""Validated Ohta-Kawasaki equilibria on the unit cube."""

import os
import shutil

from ._okvalid import (
    Certificate,
    CertificationError,
    DomainError,
    EmbeddingConstants,
    Error,
    Interval,
    InverseBound,
    ModelParams,
    Series,
    SolveResult,
    SolverError,
    __version__,
    certificate_from_json,
    check,
    inverse_bound,
    parse_seed,
    read_solution,
    recompute_cmbar,
    residual,
    solution_hash,
    solve,
    table_constants,
    validate,
    write_solution,
)


def cli_path():
    """Path of the okvalid command-line tool, or None when it cannot be found."""
    bundled = os.path.join(os.path.dirname(__file__), "bin", "okvalid")
    if os.path.exists(bundled):
        return bundled
    return shutil.which("okvalid")
