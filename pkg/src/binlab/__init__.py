"""Binary labeling problems on 2-colored trees.

Library + CLI workbench: tree decompositions (low-degree peeling and
aggressive rake-and-compress), solver families, a complexity classifier,
constraint-language analysis, and a synchronous message-passing engine.
"""

from ._kernels import BACKEND as kernel_backend
from .classifier import (
    Classification,
    Strategy,
    classify_broad,
    classify_family,
    classify_fine,
    select_solver,
)
from .decompose import (
    LayerDecomposition,
    arc_decompose,
    check_raked_neighbors,
    deg_decompose,
)
from .lang_families import (
    Grammar,
    LanguageFamily,
    PairedLoop,
    aux_constants,
    family_grammar,
    family_loops,
    family_table,
    set_at_degree,
    structural_simplicity,
    word_at_length,
)
from .local_engine import ArcLayerProgram, DegLayerProgram, run_sync
from .oracle import InfeasibleError, exhaustive_solve
from .oracle import solve as oracle_solve
from .oracle import verify
from .problem_model import (
    ConstraintSet,
    Problem,
    StructureBudget,
    constraint,
    from_string,
    problem,
    reverse,
    shift,
    switch,
    to_string,
)
from .solvers import (
    SolveResult,
    solve_auto,
    solve_constant,
    solve_factor,
    solve_linear,
    solve_quasi,
    solve_resilient,
)
from .tree_core import ColoredTree, build, diameter, generate, read_tree, write_tree

__version__ = "0.1.0"
