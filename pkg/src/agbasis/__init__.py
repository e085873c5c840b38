"""One-point algebraic-geometry codes on curves f(y) = g(x) with a diagonal automorphism.

Builds the orbit decomposition of the rational points, the root diagram and a
position-over-term Groebner basis of the code viewed as a module over F_q[t],
and encodes systematically by division against that basis.
"""

from .algebra import Field, FieldElement, UniPoly
from .curve import CurveSpec, enumerate_points, hermitian, load_curve, quotient_hermitian, x_q2r
from .diagram import RootDiagram, diagram_fast, diagram_oracle
from .encoder import encode, extract_message, info_positions, storage_report
from .interp_gb import interpolation_basis, build_interpolants
from .orbits import OrbitDecomposition, orbit_decomposition
from .potmod import GroebnerBasis, ModuleElement, divide, generates_same, oracle_gb
from .rrspace import generator_matrix

__all__ = [
    "Field", "FieldElement", "UniPoly",
    "CurveSpec", "enumerate_points", "hermitian", "load_curve", "quotient_hermitian", "x_q2r",
    "OrbitDecomposition", "orbit_decomposition",
    "generator_matrix",
    "GroebnerBasis", "ModuleElement", "divide", "generates_same", "oracle_gb",
    "RootDiagram", "diagram_fast", "diagram_oracle",
    "interpolation_basis", "build_interpolants",
    "encode", "extract_message", "info_positions", "storage_report",
]
