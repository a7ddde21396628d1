"""Decorated singular-link calculus for concordance of 2-spheres."""

__version__ = "0.1.0"

from .groups import AbelianGroup, FiniteGroup, GroupError  # noqa: F401
from .state import Context, LinkState, StateError, validate  # noqa: F401
from .moves import MoveError, apply_move, apply_script  # noqa: F401
from .invariants import (  # noqa: F401
    InvariantError, concordance_bound, delta, fq, invariant_report, km, mu,
)
from .simplify import (  # noqa: F401
    SimplifyError, Verdict, decide, eliminate_type_II, reduce_to_hopf,
)
