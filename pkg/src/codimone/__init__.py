"""Complete invariants for A-diffeomorphisms with codimension-one basic sets.

Exact integer linear algebra, GL(n, Z) conjugacy search with witnesses and
certificates, k-tubes (class S), decorated graphs (classes P and M), their
symbolic realizations and the connected-sum type of the ambient manifold.
"""

from .conjugacy import (
    ANY,
    NEGATIVE,
    POSITIVE,
    ConjugacyVerdict,
    SignConstraint,
    Status,
    Triple,
    decide_conjugacy,
    decide_triple_equivalence,
    intertwiner_basis,
)
from .exactint import (
    IntMatrix,
    SmithForm,
    char_poly,
    determinant,
    eigenvalue_modulus_profile,
    smith_normal_form,
)
from .graph import (
    ClassGraph,
    Edge,
    VertexGroup,
    decide_commensurable,
    manifold_of_graph,
    pontryagin_admissible,
    validate,
)
from .manifold import ManifoldDescription
from .realize import RealizedSystem, extract_invariant, realize
from .torus import (
    AnosovAutomorphism,
    InvariantRejected,
    PointSet,
    TorusPoint,
    apply,
    check_anosov,
    fixed_points,
    periodic_points,
)
from .tube import (
    KTube,
    SInvariant,
    agrees,
    decide_tube_equivalence,
    is_admissible,
    manifold_of_S,
    t_u,
    validate_S,
)

__all__ = [
    "agrees", "AnosovAutomorphism", "ANY", "apply", "char_poly", "check_anosov",
    "ClassGraph", "ConjugacyVerdict", "decide_commensurable", "decide_conjugacy",
    "decide_triple_equivalence", "decide_tube_equivalence", "determinant", "Edge",
    "eigenvalue_modulus_profile", "extract_invariant", "fixed_points", "intertwiner_basis",
    "IntMatrix", "InvariantRejected", "is_admissible", "KTube", "manifold_of_graph",
    "manifold_of_S", "ManifoldDescription", "NEGATIVE", "periodic_points", "PointSet",
    "pontryagin_admissible", "POSITIVE", "realize", "RealizedSystem", "SignConstraint",
    "SInvariant", "smith_normal_form", "SmithForm", "Status", "t_u", "TorusPoint", "Triple",
    "validate", "validate_S", "VertexGroup",
]

__version__ = "0.1.0"
