"""Symbolic workbench for quiver Hecke algebras, the diagrammatic categorified
quantum group, and the integrable modules they categorify."""

from .laurent import LaurentPoly, RationalFunctionQ
from .rootdata import (
    BivariatePoly,
    RootDatum,
    Weight,
    build_root_datum,
    cartan_pairing,
    mu_from_dimvec,
    q_polynomial,
    quantum_integer,
    t_scalar,
)

__version__ = "0.1.0"
