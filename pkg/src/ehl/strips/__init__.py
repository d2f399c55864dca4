"""Strips, tree strip systems with a cross-edge, pyramid strip systems and
completed strips."""

from .completed import (CompletedStrip, check_completed_strip, check_striptobip, complete_strip, compute_D,
                        compute_Z, find_backdoor)
from .core import BulletVerdict, Strip, StripVerdict, is_rung, validate_strip
from .pyramid import (ApexType, PyramidStripSystem, attachment_unions, attachments, check_apex_clique,
                      check_growstrips, check_pyramid_attachment_theorem, classify_apex_neighbour,
                      is_indecomposable, search_pyramid_strip_system, validate_pyramid_system)
from .tree import (LOCALLY_MAXIMAL, OPTIMAL, CrossEdgeContext, JStripSystem, TreeConditionError,
                   build_extended_tree_line_graph, check_funnies, check_major_clique, check_skewpyr,
                   check_splendid_refinements, classify_small_subgraph, is_local, major_vertices, nonlocal_pair,
                   search_tree_strip_system, valid_bipartitions, validate_cross_edge, validate_jstrip)
