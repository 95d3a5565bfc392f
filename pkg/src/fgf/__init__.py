"""fgf: a workbench for finite-rank free groups.

Reduced-word arithmetic, automorphism algebra, folded subgroup graphs,
Whitehead primitivity machinery, canonical-form involutions with their
classification and decomposition tools, deterministic verification suites,
and the finite-function encoding that models functions as automorphisms.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.
"""

from .words import (
    FreeGroupContext,
    Word,
    cyclic_reduce,
    format_word,
    invert,
    multiply,
    parse_word,
    power,
    primitive_root,
    reduce,
)
from .maps import (
    GeneratorMap,
    apply,
    compose,
    conjugation_by,
    identity_map,
    induced_matrix,
    inverse,
    is_automorphism,
    is_even,
    is_inner,
    mod2_matrix,
    order_up_to,
)
from .stallings import (
    SubgroupGraph,
    build_graph,
    contains,
    intersect,
    rank,
    same_subgroup,
)
from .whitehead import (
    is_power_of_primitive,
    is_primitive,
    minimize,
    product_of_two_primitives,
    whitehead_moves,
)
from .involutions import (
    CanonicalData,
    InvolutionClass,
    build_conjugator,
    classify,
    conjugacy_test,
    decompose_inverted,
    is_soft,
    realize,
    snake_obstruction,
    square_root_of_bead,
)
from .interpretation import (
    BasisSplit,
    FiniteFunction,
    FreeFactorHandle,
    decode_function,
    encode_function,
    extract_basis,
    fix_membership,
    free_factor_relation,
)

__version__ = "0.1.0"
