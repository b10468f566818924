"""Constructive conflict-free, odd, and multiplicity-constrained list coloring.

The package pairs constructive colorers (degeneracy/contraction recursion,
ordering plans from layered tree-decompositions and strong products, and a
clique-sum composition algebra for extendable colorers) with exact
brute-force oracles that certify their outputs on small instances.
"""

from .coloring import (
    CONFLICT_FREE,
    ODD,
    AchievementSpec,
    remove_colors,
    respects_lists,
    uniform_lists,
    verify_conflict_free,
    verify_conflict_free_closed,
    verify_odd,
    verify_proper,
    verify_s_achieved,
)
from .graph import (
    Graph,
    contract_edge,
    cycle,
    complete,
    complete_bipartite,
    degeneracy_ordering,
    grid,
    odd_contract,
    path,
    random_gnp,
    strong_product,
    subdivide,
)
from .decomp import Layering, TreeDecomposition, bfs_layering, layered_width, torso_and_frame, validate_tree_decomposition
from .ordering import OrderingPlan, color_by_plan, minimal_plan, validate_plan
from .structured import (
    DegeneracyProfile,
    MinorColorRequest,
    build_layered_plan,
    build_product_plan,
    color_minor_degenerate,
    color_near_bounded_degree,
    color_with_deletion,
    extract_subdivision_witness,
    surface_profile,
)
from .cliquesum import (
    CliqueSumSpec,
    ExtendRequest,
    ExtendableColorer,
    adapt_colorability,
    clique_sum,
    combine_extendable,
    extendability_audit,
    fold_tree_decomposition,
)
from .exact import (
    ExactResult,
    brute_extendable,
    exact_chromatic,
    exact_relations_check,
    list_coloring_decision,
    refute_choosability,
)

__version__ = "0.1.0"
