"""Weight plug-ins for `cycle_index_series`.

A weight maps (FactorKey, λ) to the value substituted for x_{φ,λ}; for a
conjugate pair it is the joint value x_{φ,λ}·x_{φ*,λ}. The empty partition
must get weight 1 for factors that should not constrain anything.
"""

from __future__ import annotations

from .cycleindex import FactorKey, Weight
from .partitions import Partition


def unit_weight(key: FactorKey, lam: Partition) -> int:
    return 1


def fixed_space_weight(k: int) -> Weight:
    """Indicator that the fixed space, i.e. l(λ_{z-1}), has dimension k."""

    def weight(key: FactorKey, lam: Partition) -> int:
        if key.kind == "z-1":
            return 1 if lam.l == k else 0
        return 1

    return weight


def unipotent_weight(key: FactorKey, lam: Partition) -> int:
    if key.kind == "z-1":
        return 1
    return 0 if lam else 1


def unipotent_fixed_space_weight(k: int) -> Weight:
    def weight(key: FactorKey, lam: Partition) -> int:
        if key.kind == "z-1":
            return 1 if lam.l == k else 0
        return 0 if lam else 1

    return weight


def cyclic_weight(key: FactorKey, lam: Partition) -> int:
    # characteristic polynomial = minimal polynomial
    return 1 if lam.l <= 1 else 0


def separable_weight(key: FactorKey, lam: Partition) -> int:
    return 1 if lam.size <= 1 else 0


# a matrix is regular semisimple exactly when its characteristic polynomial is squarefree
regular_semisimple_weight = separable_weight


def semisimple_weight(key: FactorKey, lam: Partition) -> int:
    return 1 if all(p == 1 for p in lam.parts) else 0


def z_minus_1_indicator(target: Partition) -> Weight:
    """x_{z-1,λ} = [λ = target]; every other factor unconstrained."""

    def weight(key: FactorKey, lam: Partition) -> int:
        if key.kind == "z-1":
            return 1 if lam == target else 0
        return 1

    return weight
