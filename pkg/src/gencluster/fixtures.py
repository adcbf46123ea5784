"""The two bundled example seeds.

``rank2``: ``B = [[0, 1], [-1, 0]]``, ``r = (2, 1)``, ``z = (1, z, 1; 1, 1)``
with principal coefficients; its quantum lift uses ``h = (1, h, 1; 1, 1)``.

``g2``: the same ``B`` with ``Lambda = B``, ``R = diag(3, 1)`` and
``h = (1, h, h, 1; 1, 1)`` keeping ``h`` symbolic.
"""

from __future__ import annotations

from .errors import InputError
from .seedcore import MutationData, as_matrix, principal_lift, skew_symmetrizer
from .seedfile import SeedFile

__all__ = ["EXAMPLES", "example", "rank2_seed", "rank2_quantum_seed", "g2_seed", "ALTERNATING_PATH"]

B2 = [[0, 1], [-1, 0]]

# 1,2,1,2,... as far as each example needs
ALTERNATING_PATH = {"rank2": (1, 2, 1, 2), "g2": (1, 2, 1, 2, 1, 2, 1, 2)}


def rank2_seed() -> SeedFile:
    md = MutationData([2, 1], h=[[1, "h", 1], [1, 1]], z=[[1, "z", 1], [1, 1]])
    return SeedFile(as_matrix(B2), md, None, "classical")


def rank2_quantum_seed() -> SeedFile:
    """Principal-coefficient quantum lift of ``rank2`` with the minimal compatible ``Lambda``."""
    pair = principal_lift(B2, skew_symmetrizer(B2))
    md = MutationData([2, 1], h=[[1, "h", 1], [1, 1]]).with_z_from_h()
    return SeedFile(pair.Btilde, md, pair.Lambda, "quantum")


def g2_seed() -> SeedFile:
    md = MutationData([3, 1], h=[[1, "h", "h", 1], [1, 1]]).with_z_from_h()
    return SeedFile(as_matrix(B2), md, as_matrix(B2), "quantum")


EXAMPLES = {"rank2": rank2_seed, "rank2-quantum": rank2_quantum_seed, "g2": g2_seed}


def example(name: str) -> SeedFile:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise InputError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
