"""braidhom: homology of algebraic structures through matrix pre-braidings.

Builds structural pre-braidings for shelves/racks, associative algebras,
Leibniz algebras and coalgebras, validates their axioms, assembles the
braided chain (bi)complexes and computes homology exactly over Z, Q or F_p.
"""

from .exactlin import (
    ExactError,
    PrimeField,
    QQ,
    Ring,
    SparseLinearMap,
    TensorIndex,
    ZZ,
    compose,
    kernel_dimension,
    rank,
    ring_from_name,
    smith_normal_form,
    tensor,
    try_inverse,
)
from .braiding import (
    Permutation,
    PreBraidedSpace,
    UnverifiedError,
    antipode,
    braid_lift,
    check_braided_character,
    check_braided_coalgebra,
    check_braided_cocharacter,
    check_character_compat,
    check_ybe,
    extended_braiding,
    invert_braiding,
    reduced_word,
    shuffle_coproduct,
    shuffle_product,
    shuffle_set,
)
from .structures import (
    AlgebraData,
    ShelfTable,
    adjoin_unit,
    algebra_character_check,
    algebra_from_constants,
    assoc_braiding,
    check_assoc,
    check_leibniz,
    check_shelf,
    coalgebra_extend,
    coassoc_braiding,
    dihedral_shelf,
    dirac_character,
    dual_coalgebra,
    flip_braiding,
    graded_leibniz_braiding,
    koszul_braiding,
    leibniz_braiding,
    lie_character_check,
    q_flip_braiding,
    shelf_braiding,
    signed_flip_braiding,
    trivial_shelf,
    twist_character,
)
from .complexes import (
    Bicomodule,
    Bimodule,
    BraidedModule,
    DifferentialSpec,
    adjoint_module,
    bimodule_diff,
    check_bicomodule,
    check_bimodule,
    check_braided_module,
    check_naturality,
    check_simplicial,
    coeff_diff,
    combined_diff,
    concat_homotopy,
    crossing_action,
    degeneracy,
    face,
    hyper_boundary,
    left_codiff,
    left_diff,
    named_complex,
    rack_contraction,
    right_codiff,
    right_diff,
    signed_binomial,
)
from .homology import (
    ChainComplex,
    HomologyReport,
    ResourceCapError,
    SpanStabilityError,
    SquareZeroError,
    assemble,
    betti,
    certify_acyclic,
    integral_homology,
    subquotient,
)

__version__ = "0.1.0"
