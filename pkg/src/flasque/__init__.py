"""G-lattices, Tate cohomology and coflasque resolutions for finite groups."""
from .cohomology import AbGroupClass, h1, is_coflasque, is_flasque, tate, tate_h0, tate_h_minus1
from .gmodules import FgAbGModule, ModuleMap, fixed_points, solve_preimage, tensor_lattice_module
from .groups import FiniteGroup, Subgroup, cyclic_group, klein_four, make_group, subgroups, symmetric_group
from .intmat import IntMatrix, available_backends, backend, use_backend
from .lattices import (GLattice, LatticeMap, augmentation_kernel, direct_sum, dual, exactness_check,
                       fixed_sublattice, group_ring, kernel_lattice, norm_operator, permutation_lattice, restrict,
                       tensor, trivial_lattice)
from .report import CheckReport
from .resolutions import CoflasqueResolution, coflasque_resolution, compare_resolutions, pullback_resolution

__version__ = "0.1.0"

__all__ = [
    "AbGroupClass", "CheckReport", "CoflasqueResolution", "FgAbGModule", "FiniteGroup", "GLattice", "IntMatrix",
    "LatticeMap", "ModuleMap", "Subgroup", "augmentation_kernel", "available_backends", "backend",
    "coflasque_resolution", "compare_resolutions", "cyclic_group", "direct_sum", "dual", "exactness_check",
    "fixed_points", "fixed_sublattice", "group_ring", "h1", "is_coflasque", "is_flasque", "kernel_lattice",
    "klein_four", "make_group", "norm_operator", "permutation_lattice", "pullback_resolution", "restrict",
    "solve_preimage", "subgroups", "symmetric_group", "tate", "tate_h0", "tate_h_minus1", "tensor",
    "tensor_lattice_module", "trivial_lattice", "use_backend",
]
