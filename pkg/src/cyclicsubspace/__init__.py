"""Cyclic subspace codes built from subspace polynomials over finite-field towers."""

from .construct import (
    ConstructionError,
    CyclicCode,
    cd_membership,
    direct_sum_decompose,
    embed_code,
    gaussian,
    irreducible_trinomial_code,
    multi_orbit_code,
    orbit_census,
    subfield_code,
    trinomial_code,
    union_size,
    union_subfield_code,
)
from .field_tower import FieldTower, build_tower, tower_for
from .linearized import LinearizedPoly, kernel, parse_linearized, subspace_poly
from .subspace import Subspace, distance, from_generators
from .verify import VerificationReport, min_distance, verify_code

__all__ = [
    "ConstructionError",
    "CyclicCode",
    "FieldTower",
    "LinearizedPoly",
    "Subspace",
    "VerificationReport",
    "build_tower",
    "cd_membership",
    "direct_sum_decompose",
    "distance",
    "embed_code",
    "from_generators",
    "gaussian",
    "irreducible_trinomial_code",
    "kernel",
    "min_distance",
    "multi_orbit_code",
    "orbit_census",
    "parse_linearized",
    "subfield_code",
    "subspace_poly",
    "tower_for",
    "trinomial_code",
    "union_size",
    "union_subfield_code",
    "verify_code",
]
