"""Exact computations in generalized cluster algebras and their quantum versions.

The classical engine mutates seeds with polynomial exchange relations of
arbitrary degree ``r_k`` and computes F-polynomials three ways (direct
mutation, a Gupta-type product of ``L``-factors and its multinomial
expansion).  The quantum engine works in a quantum torus and extracts
F-polynomials from a truncated ordered product with a stabilization
certificate.
"""

from .errors import (
    DimensionError,
    FalsificationError,
    GenClusterError,
    IncompatibilityError,
    InconclusiveError,
    InputError,
    IntegralityError,
    InversionError,
    LaurentFailure,
    NotSkewSymmetrizableError,
    SignCoherenceError,
)
from .extorus import QSeries, SkewForm, TorusElem, series_inverse, torus_mul, yhat_mul
from .fixtures import example
from .gca import ClassicalEngine, ClassicalFPoly, ordinary_mutation_oracle
from .gqca import BracketBase, Certificate, QuantumEngine, QuantumFPoly, cocycle_holds
from .patterns import PathData, PatternState, path_data, run_path
from .qcoeff import QCoeff
from .seedcore import (
    CompatiblePair,
    MutationData,
    mutate_exchange_classical,
    mutate_pair,
    principal_lift,
    skew_symmetrizer,
)
from .seedfile import SeedFile, dump_seed, dumps_seed, load_seed, loads_seed
from .verify import VerifyReport, run_checks

__version__ = "0.1.0"

__all__ = [
    "BracketBase",
    "Certificate",
    "ClassicalEngine",
    "ClassicalFPoly",
    "CompatiblePair",
    "DimensionError",
    "FalsificationError",
    "GenClusterError",
    "IncompatibilityError",
    "InconclusiveError",
    "InputError",
    "IntegralityError",
    "InversionError",
    "LaurentFailure",
    "MutationData",
    "NotSkewSymmetrizableError",
    "PathData",
    "PatternState",
    "QCoeff",
    "QSeries",
    "QuantumEngine",
    "QuantumFPoly",
    "SeedFile",
    "SignCoherenceError",
    "SkewForm",
    "TorusElem",
    "VerifyReport",
    "cocycle_holds",
    "dump_seed",
    "dumps_seed",
    "example",
    "load_seed",
    "loads_seed",
    "mutate_exchange_classical",
    "mutate_pair",
    "ordinary_mutation_oracle",
    "path_data",
    "principal_lift",
    "run_checks",
    "run_path",
    "series_inverse",
    "skew_symmetrizer",
    "torus_mul",
    "yhat_mul",
]
