"""Tensor-network engine: MPS states, TEBD/DMRG, and dense-ED oracles."""

from .state import TensorNetworkState
from .chains import Chain, chain_of, lift_window_operator
from .trotter import TrotterPlan
from .tebd import (imaginary_tebd, real_tebd, thermal_purification,
                   bcft_state, symmetry_broken_product)
from .dmrg import dmrg_ground_state
from .ed import ed_reference, dense_ground, dense_gibbs
from .convergence import convergence_certify

__all__ = [
    "TensorNetworkState", "Chain", "chain_of", "lift_window_operator",
    "TrotterPlan", "imaginary_tebd", "real_tebd", "thermal_purification",
    "bcft_state", "symmetry_broken_product", "dmrg_ground_state",
    "ed_reference", "dense_ground", "dense_gibbs", "convergence_certify",
]
