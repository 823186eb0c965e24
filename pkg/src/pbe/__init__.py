"""Block encodings of matrices with periodic diagonal structure, simulated exactly."""

from .circuit import (
    CX,
    Circuit,
    CircuitError,
    Gate,
    H,
    P,
    X,
    Y,
    adjoint,
    apply_circuit,
    compose,
    controlled,
    unitary_of,
)
from .counting import DecompositionPolicy, GateCounts, transpile_count
from .diag import (
    SinusoidSpec,
    build_dense_baseline,
    build_UC,
    build_US,
    build_V,
    p0_closed_form,
    truncate_V,
)
from .encoding import BlockEncoding, VerificationReport, extract_block, success_probability, verify_block
from .lcu import (
    BandedSpec,
    FourierSpec,
    LcuSpec,
    LcuTerm,
    TwoFrequencySpec,
    build_banded,
    build_fourier_diagonal,
    build_prep,
    build_select,
    build_two_frequency,
    lcu_encoding,
)
from .pde import (
    AdrSpec,
    EllipticSpec,
    build_adr_matrix,
    build_elliptic_matrix,
    classical_expm_apply,
    classical_solve,
    elliptic_lcu,
    forward_euler_matrix,
    gaussian_initial,
    relative_error,
)
from .poly import ChebyshevPoly, ExpTarget, InverseTarget, approx_poly
from .qsp import PhaseFactors, qsp_eval_scalar, qsp_phases
from .qsvt import QsvtRun, build_qsvt_circuit, run_adr, run_elliptic
from .shift import ShiftSpec, build_shift

__version__ = "0.1.0"
