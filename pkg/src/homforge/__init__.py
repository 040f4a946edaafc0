"""homforge: a workbench for Hom-type nonassociative algebras.

Everything runs over exact rationals: twisting ordinary identities into
Hom-type ones, verifying them on structure-constant algebras, the q^alpha /
Sabinin operations, coproducts and primitive elements of free Hom-algebras,
antipode checks, and truncated universal enveloping Hom-algebras.
"""

from .expr import (
    BINARY,
    Leaf,
    Monomial,
    Node,
    Poly,
    Signature,
    UNIT,
    apply_alpha,
    apply_op,
    mul,
    parse_poly,
    render_poly,
    unshuffle,
)
from .homify import (
    IdentitySystem,
    catalog,
    catalog_names,
    hom_associator,
    hom_jacobiator,
    homify_identity,
    homify_monomial,
    right_normed_homified,
    sabinin_axiom_instances,
)
from .fdalg import (
    AlgebraSpec,
    MultilinearOp,
    OpFamily,
    akivis_ops,
    builtin_algebra,
    builtin_algebra_names,
    check_identity,
    check_power_associative,
    check_sabinin_axioms,
    classical,
    commutator_algebra,
    eval_poly,
    hom_version,
    is_morphism,
    is_multiplicative,
    sabinin_from,
    yau_twist,
)
from .qops import NumericQSolver, QSolver, q_symbolic, yiii_hom
from .hombialg import (
    FilteredQuotient,
    FreeHomAssocQuotient,
    TensorElement,
    antipode,
    check_antipode,
    check_bialgebra,
    delta,
    delta_poly,
    delta_summand,
    is_primitive,
    u_hom,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
