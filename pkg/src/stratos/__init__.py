"""Ordered homotopy sets of finite topological spaces.

Homotopy sets ``[X, Y]`` of finite spaces carry three preorders (by
precomposition, postcomposition, or both); their quotient posets make
``[X, Y]`` a poset-stratified space.  The package also computes the
image-subgroup, evaluation-subgroup and category maps out of those posets,
and a small exact model with rational parameters.
"""

from .abgrp import AbHom, FgAbGroup, Subgroup, image_subgroup, subgroup_leq
from .alexandroff import (
    FiniteSpace,
    is_alexandroff,
    is_continuous,
    is_locally_closed,
    specialization_order,
    to_space,
)
from .errors import (
    ContinuityError,
    InputError,
    NotAPartialOrder,
    SizeError,
    StratosError,
    TopologyError,
    WellDefinednessError,
)
from .gottlieb_cat import cat_descents, cat_of_map, evaluation_subgroup_ab, gottlieb_order_check, is_nullhomotopic_on
from .homology import cohomology, homology, im_H, induced_map, order_complex
from .homotopy import HomotopySet, homotopy_classes, preorder, pullback, pushforward, quotient
from .intlinalg import smith_normal_form
from .order import (
    FinitePoset,
    FiniteProset,
    MonotoneMap,
    hasse_edges,
    is_partial_order,
    opposite,
    poset,
    quotient_by_mutual_leq,
    transitive_closure,
)
from .stratify import Decomposition, frontier_condition, is_stratification, make_stratified, quotient_topology, star_order

__version__ = "0.1.0"
