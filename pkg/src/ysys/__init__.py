"""Y-system exponents, mutation networks and partition q-series.

The package computes, for every finite Dynkin type X_r and level l >= 2:

* the level-l quiver and its mutation loop,
* the positive fixed point of the cluster transformation and the integer
  exponent multiset read off the Jacobian spectrum,
* the same multiset predicted from root-system data (N/D polynomials),
* mutation networks, Neumann-Zagier matrices and the sector group,
* Nahm-type partition q-series per sector,
* the dilogarithm / asymptotic-dimension identities.
"""

from ysys.dynkin import DynkinType, RootSystem, build_root_system
from ysys.quiver import MutationLoop, Permutation, Quiver
from ysys.family import FamilyLoop, build_family_loop

__all__ = [
    "DynkinType",
    "RootSystem",
    "build_root_system",
    "Quiver",
    "Permutation",
    "MutationLoop",
    "FamilyLoop",
    "build_family_loop",
]

__version__ = "0.1.0"
