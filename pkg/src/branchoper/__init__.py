"""Exact computations for SO(3)-opers and branched SO(3)-opers on a curve, worked in one
affine chart over the Gaussian rationals Q(i)."""

from .branched import (PairBD, Sl2Oper, build_pair, build_sl2_model, monodromy_trivial, oper_criterion,
                       pair_conditions, phi_obstruction, reconstruct_oper, roundtrip_check)
from .linalg import Mat
from .logconn import BranchDivisor, LogConnection, branched_model_connection, hecke_modify, residue, sff_log
from .oper import BilinearTwisted, Connection, ThirdOrderOp, delta0, oper_conditions, psi_matrix, sff, varpi
from .polys import Poly, RatFunc
from .scalars import Scalar
from .series import TruncSeries, series_expand, solve_flat_sections

__version__ = "0.1.0"
