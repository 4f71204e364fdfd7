"""Determinant and Pfaffian identities for weighted path, walk, grove and flow families.

Everything is exact: edge weights are formal variables, values live in a
sparse polynomial ring and its fraction field, and each theorem check
compares two independently computed sides.
"""

from ._kernels import USING_NUMBA
from .det2pf import MinorFamily, ctilde_k, minor_summation_check, pfaffian_principle_check, rtilde_k
from .digraph import Digraph, Walk, fomin_check, lindstrom_check, loop_erase, stembridge_check
from .errors import *  # noqa: F401,F403
from .flows import (PlanarCircularNetwork, boundary_measurement_matrix, collision_index, enumerate_flows,
                    flow_determinant_check, flow_pfaffian_check, flow_sign, flow_signed_sum, flow_sum,
                    is_alternating, validate_network)
from .graphio import load_fixture, load_graph
from .groves import (GraphWithBoundary, enumerate_groves, grove_determinant_check, grove_pfaffian_check,
                     grove_signed_sum, grove_sum, kirchhoff, response_matrix, z_singleton)
from .linalg import RingMatrix, SkewMatrix, determinant, pfaffian_matchings, pfaffian_recursive
from .report import VerificationReport
from .ring import Polynomial, RationalFunction, ratfun_eq, var

__version__ = "0.1.0"
