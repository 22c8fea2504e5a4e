"""Finite convergence spaces, convergence lattices, their points and sobrification."""
from .errors import ConvlatError
from .fincov import (
    FiniteConvergence,
    FiniteTopology,
    PointSet,
    SpaceMap,
    build_convergence,
    build_finite_depth,
    conv_of_topology,
    finite_depth_modification,
    from_arrows,
    topological_modification,
    topology_from_opens,
)
from .finlat import Category, FiniteConvLattice, FiniteLattice, build_conv_lattice, powerset_lattice
from .points import PointSpace, pt_prime, pt_space
from .props import PropertyId, check_properties, holds
from .sobr import sobrify, verify_sobrification_theorem
from .suites import SuiteResult, verify_suite

__all__ = [
    "Category",
    "ConvlatError",
    "FiniteConvLattice",
    "FiniteConvergence",
    "FiniteLattice",
    "FiniteTopology",
    "PointSet",
    "PointSpace",
    "PropertyId",
    "SpaceMap",
    "SuiteResult",
    "build_conv_lattice",
    "build_convergence",
    "build_finite_depth",
    "check_properties",
    "conv_of_topology",
    "finite_depth_modification",
    "from_arrows",
    "holds",
    "powerset_lattice",
    "pt_prime",
    "pt_space",
    "sobrify",
    "topological_modification",
    "topology_from_opens",
    "verify_sobrification_theorem",
    "verify_suite",
]
