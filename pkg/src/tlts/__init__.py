"""Two-sided labelled transition systems and their parallel compositions."""

from .algebra import (
    TAU, RelMonoid, SyncAlgebraView, bar, broadcast_algebra, ccs_algebra,
    check_rel_monoid, classify, clock_system, mult_arrow, unit_arrow_of,
)
from .core import (
    EPS, Alphabet, I, InterfaceError, LabelError, LawFailure, LawReport, Tlts,
    TltsError, UnknownStateError, ValidationResult, iso_equal, reachable,
    reflexive_closure, tlts_from_json, tlts_to_json, validate,
)
from .parallel import (
    OneSidedTS, broadcast_expr, bullet, check_prop1, embed, nary_parallel,
    prop3_check, unit_system, winskel_parallel,
)
from .wscc import (
    PointedRelation, codiag, compose, counit_arrow, diag, epsilon_arrow,
    eta_arrow, from_relation, identity, opposite_projection, projection,
    tensor, tensor_alphabet, twist, unit_arrow,
)

__version__ = "0.1.0"
