"""Superzeta functions built over the nontrivial zeros of the Riemann zeta
function, real Dirichlet L-functions and quadratic Dedekind zeta functions."""

from .errors import (CharacterError, CountMismatch, DomainError, IndexOutOfRange, NumericError, PoleError,
                     RadiusError, RouteUnavailable, SuperzetaError)
from .families import (EvalResult, PolarDatum, z1_closed, z1_direct, z1_eval, z1_integral, z2_closed, z2_eval,
                       z2_polar, z3_eval, z3_polar)
from .primary import PrimaryFunction, build_primary
from .zeros import ZeroCache, load_or_locate, locate_zeros, verify_count
from .cumulants import CumulantSequence, cumulants_closed, cumulants_numeric
from .identities import identity_suite

__version__ = "0.1.0"
