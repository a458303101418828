"""Exact layered pathwidth / treedepth toolkit.

Brute-force parameter oracles, certificate-producing extraction of rooted
path and fan minors, layered-decomposition builders, and the recursive
clique family with its lower-bound witnesses.
"""

from .graphs import (DfsTree, Graph, GraphError, Layering, RootedForest,
                     bfs_layering, blocks, complete_graph, components,
                     contract, cycle_graph, dfs_tree, fan_graph, lca,
                     path_graph, radius_diameter, star_graph, vertical_path)
from .certificates import (EliminationForest, GstPath, MinorModel,
                           PathDecomposition, Verdict, WeakGstPath,
                           WidthReport, layered_width_elim, layered_width_pd,
                           validate_elim_forest, validate_gst_path,
                           validate_minor_model, validate_path_decomposition,
                           validate_weak_gst_path, vertex_height)
from .oracles import (ParameterValue, has_minor, has_rooted_minor,
                      is_apex_forest, is_apex_linear_forest, lpw_exact,
                      ltd_exact, max_rooted_path_order, pw_exact,
                      pw_focused_exact, td_exact, td_focused_exact)
from .separations import (Separation, check_maximal_good_properties,
                          disjoint_paths, is_wS_good, lift_goodness,
                          make_separation, maximal_good_separation,
                          menger_refine)
from .extraction import (ExtractionInput, FPlusOutcome,
                         apex_forest_minor_driver, extract_gst_path,
                         extract_weak_gst_path, fan_minor_driver,
                         finding_F_plus, gst_to_rooted_path_model,
                         srooted_path_driver, weak_to_fan_model)
from .builders import (BuilderDiagnostic, build_layered_elim_forest,
                       build_layered_path_decomposition,
                       pw_radius_certificate, td_radius_certificate)
from .lowerbounds import (LeveledGraph, LpwWitness, gen_Gtr, gen_Thd,
                          induced_elim_forest, layer_ternary_witness,
                          lpw_lower_witness, verify_lb)

__version__ = "0.1.0"
