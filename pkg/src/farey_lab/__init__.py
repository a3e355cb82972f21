"""Finite experiments on halved Farey graphs, grain lines, separations and immersions."""

from .generators import (LeveledFareyGraph, adversarial_length_function, blue_hamilton_paths, farey,
                         farey_with_order, generalised_halved_farey, halved_farey, level_counts)
from .graph_core import (Cut, Graph, InputError, combine_path_systems, edge_connectivity, girth,
                         local_edge_connectivity, min_edge_cut)
from .grainline import (GrainLine, Segment, check_grain_line, check_prime_axioms, check_vertex_separation,
                        density_report, depth, extract_grain_line, is_free, is_well_structured,
                        is_wildly_presented, p_segments, separation_at_vertex, sub_grain_line)
from .immersion import (ImmersionModel, cut_bound_complete, cut_bound_farey_in_halved,
                        find_immersion_bruteforce, immerse_halved_farey, verify_immersion,
                        wild_separations_to_grainline)
from .minors import (DiveTrace, SubdivisionModel, almost_subgraph_depth, dive, find_subdivision,
                     first_dive, interval_projection, subdivision_experiment, verify_subdivision)
from .reports import ValidationReport, Violation
from .separations import (CompoundSeparation, TreeCutDecomposition, complete_immersion_from_blocks,
                          edge_blocks, faithful_set, find_compound_separation, is_k_compound_connected,
                          iterated_split, nested, split, star_orientation, tree_cut_decomposition,
                          u_to_separator_fan)

__version__ = "0.1.0"
