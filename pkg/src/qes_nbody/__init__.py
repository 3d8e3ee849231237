"""Solvable sectors of three N-body quantum models.

The package generates the energy-polynomial families of the sextic radial
sector exactly, extracts the J solvable energies with their discrete weights,
norms and moments, handles the anti-isospectral (duality) structure and the
non-orthogonal oscillator+Coulomb family, and cross-validates every claimed
eigenpair against an independent finite-difference/shooting solver.

Entry points: the model adapters in :mod:`qes_nbody.models`, the recursion
generators in :mod:`qes_nbody.sextic`, the spectrum machinery in
:mod:`qes_nbody.spectra`, and the ``qes`` command line.
"""

from .coulomb import (
    CoulombModel,
    TerminationError,
    coulomb_polynomials,
    orthogonality_obstruction,
    qes_state,
    termination_solve,
)
from .models import (
    CalogeroMarchioro,
    CalogeroSutherland,
    ModelValidationError,
    NotQuasiExactError,
    NovelCorrelation,
    ReducedModel,
    a_from_inv_square,
    cm_reduce,
    cs_reduce,
    hyperradius,
    hyperradius_squared,
    levels_from_quadratic,
    novel_reduce,
    reduced_model,
)
from .polynomials import PolyE, poly_divide
from .rootfinding import DegenerateRootsError, RootCountError
from .scalars import EXACT, ExactnessError, Scalar, ScalarMode, ScalarModeError
from .sextic import (
    SexticRecursion,
    generate_P,
    generate_Q,
    norm_P,
    norm_Q,
    verify_three_term_form,
)
from .spectra import (
    DegenerateSpectrumError,
    QESSpectrum,
    closed_form_energies,
    discrete_norm,
    duality_check,
    dualize,
    moment_functional,
    moments,
    positivity_report,
    qes_energies,
    selfdual_check,
    solve_spectrum,
    weights,
)
from .validate import (
    BracketError,
    CoulombOscPotential,
    RadialProblem,
    ResidualConvergenceError,
    SexticPotential,
    build_coulomb_eigenfunction,
    build_sextic_eigenfunction,
    problem_for_coulomb,
    problem_for_recursion,
    residual,
    shoot,
    shoot_refine,
)

__version__ = "1.0.0"
