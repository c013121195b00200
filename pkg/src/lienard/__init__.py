"""Commutative factorization of polynomial Lienard equations and the
closed-form (often isochronous) waveforms it produces, with independent
numerical verification."""

from .exceptions import (
    BlowUp,
    DomainViolation,
    EmptyGrid,
    EvenRootOfNegative,
    InvalidEquation,
    LienardError,
    NonzeroConstantTerm,
    NotCommutativelyFactorable,
    NotMonomial,
    PoleAt,
    QuadratureFailure,
    StepUnderflow,
)
from .factorize import (
    CommutativeFactorization,
    LienardEquation,
    MonomialForm,
    Regime,
    commutative_factorize,
    equation_from_symmetric_part,
    symmetric_part,
    to_monomial_form,
    verify_factorization_identity,
)
from .models import (
    ChielliniResult,
    LinearizabilityReport,
    StoBranch,
    StoReduction,
    SundmanResult,
    chiellini_check,
    cubic_oscillator,
    depressed_cubic_roots,
    linearizability,
    monomial_equation,
    sto_ctilde_squared,
    sto_reduce,
    sto_shifted_equation,
    sto_special_I,
    sundman_check,
    wilson_equation,
    wilson_limit_cycle_residual,
)
from .polyalg import Polynomial, as_fraction
from .verify import (
    TimeSeries,
    VerificationReport,
    detect_period,
    integrate,
    limit_cycle_convergence,
    match_numeric,
    ode_residual,
    symmetry_check,
    verify_waveform,
)
from .waveforms import (
    ClosedFormWaveform,
    HyperbolicKernel,
    RationalKernel,
    SingularWindows,
    TrigonometricKernel,
    ZCoefficient,
    cubic_waveform,
    general_waveform,
    singularity_windows,
    sto_printed_waveform,
    sto_waveform,
    sundman_waveform_q1,
    sundman_waveform_q2,
    waveform_derivatives,
    wilson_waveform,
    zeta_eval,
    zeta_riccati_residual,
)

__version__ = "0.1.0"
