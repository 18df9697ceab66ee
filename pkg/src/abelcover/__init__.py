"""abelcover: moduli of abelian covers of P^1(F_q), character-sum point
counts, and the limiting distribution of the number of rational points."""

from .field import CharValue, FieldCtx, character, make_field
from .groupcomb import GroupSpec, IndexPair, beta_classes, phi_G, ram_exponent
from .moduli import CoverTuple, DegreeVector, genus, normalize_degrees
from .distribution import Pmf, single_point_law, total_law

__all__ = [
    "CharValue",
    "FieldCtx",
    "character",
    "make_field",
    "GroupSpec",
    "IndexPair",
    "beta_classes",
    "phi_G",
    "ram_exponent",
    "CoverTuple",
    "DegreeVector",
    "genus",
    "normalize_degrees",
    "Pmf",
    "single_point_law",
    "total_law",
]
