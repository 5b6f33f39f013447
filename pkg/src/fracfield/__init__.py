"""fracfield: closed forms and oracles for fractional field equations on
the half-line, built on Mittag-Leffler / Wright / Fox-H machinery."""

from .errors import (ContourFailure, CoincidentPoles, DifferentiationFailure,
                     DomainError, FracfieldError, NoClosedForm,
                     NonConvergence, NoSeriesForm, OutOfRegime,
                     QuadratureFailure, SlowDecay, TailDominance,
                     ValidityError)
from .foxh import (AsymptoticParams, HFunctionSpec, asymptotic_params,
                   h_asymptotic, h_reduce, h_series, h_zero_limit,
                   mellin_cosine_map, ml_as_h, power_scale)
from .fracops import (HilferOrder, RieszFellerSymbol, SampledFunction,
                      hilfer_derivative, hilfer_laplace_rhs, lemma1_kernel,
                      prabhakar_apply, psi, rl_integral)
from .oracle import (cosine_integral, numeric_inverse_laplace,
                     numeric_laplace, separation_reference)
from .problems import BoundaryTransform, GridSpec, ProblemSpec, SourceSpec
from .solver import (fourier_kernel, solution_asymptotic,
                     solution_asymptotic_scaled, solution_series,
                     solution_series_scaled, solve_closed_form, solve_grid,
                     solve_pointwise, write_grid_csv)
from .specfun import (FoxWrightSpec, MLParams, SeriesValue, fox_wright,
                      ml_four, ml_one, ml_three, ml_two, wright,
                      wright_scaled)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
