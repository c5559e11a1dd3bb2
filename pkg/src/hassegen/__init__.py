"""Exact invariants of semisimple groups over Hasse domains of function fields."""

from .abgroup import FgGroup, GroupHom, group_from_presentation, hom_kernel, induced_maps, smith_normal_form, torsion_and_quotient
from .curve import CurveSpec, Place, ec_group_structure, l_polynomial, place_at, places_of_degree, point_count
from .errors import HassegenError
from .finitefield import make_field
from .fundgroup import RES_MU, RES_ONE_MU, Factor, FundGroup, chi, h_vector, i_group, invariants, j_group, l_value
from .groups import GroupSpec, class_number, evaluate, fundamental_group_of, genera_count, h1_size, hasse_verdict, tamagawa
from .hassedomain import HasseDomain, brauer_torsion, make_cover, norm_N0, norm_N1, norm_N2, picard, unit_data

__version__ = "0.1.0"

__all__ = [
    "FgGroup", "GroupHom", "group_from_presentation", "hom_kernel", "induced_maps", "smith_normal_form",
    "torsion_and_quotient", "CurveSpec", "Place", "ec_group_structure", "l_polynomial", "place_at",
    "places_of_degree", "point_count", "HassegenError", "make_field", "RES_MU", "RES_ONE_MU", "Factor",
    "FundGroup", "chi", "h_vector", "i_group", "invariants", "j_group", "l_value", "GroupSpec",
    "class_number", "evaluate", "fundamental_group_of", "genera_count", "h1_size", "hasse_verdict", "tamagawa", "HasseDomain",
    "brauer_torsion", "make_cover", "norm_N0", "norm_N1", "norm_N2", "picard", "unit_data",
]
