"""Mutual information of free chiral fermions on the line and the circle.

Four routes to the same numbers:

* :mod:`fermi_mi.cft` -- closed-form entropy ``G`` and mutual information ``F``;
* :mod:`fermi_mi.lattice` -- covariance-matrix spectra of discretised fermions;
* :mod:`fermi_mi.kernel` -- traces of the continuous kernels by adaptive quadrature;
* :mod:`fermi_mi.oracles` -- finite-dimensional relative entropy and trace inequalities.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DimensionMismatch, DomainError, FermiMIError, InvalidDensityMatrix, InvalidInterval,
    InvalidPath, NumericalFailure, OverlappingIntervals, PoleAtEndpoint, QuadratureFailure,
    RegionsOverlap, SpectrumOutOfRange, SupportViolation, TouchingIntervals, ValidationError,
)
from .geometry import Geometry, Interval, MobiusMap, MultiInterval, apply_mobius, cross_ratio, normalize  # noqa: E402
from .cft import (  # noqa: E402
    EntropyReport, Method, SubnetParams, duality_gap, duality_scan, extended_mi, g_value,
    index_limit, mutual_information_exact, singular_limit_mi,
)
from .lattice import (  # noqa: E402
    CovarianceMatrix, SiteRegion, build_half_filled_covariance, build_hardy_cell_covariance,
    convergence_study, mutual_information_lattice, region_entropy,
)
from .kernel import (  # noqa: E402
    KernelConfig, QuadratureConfig, dilog_integral, k0_diagonal, k0_trace, mutual_information_kernel,
    t_profile_integral,
)
from .oracles import (  # noqa: E402
    DensityMatrix, StepPath, kosaki_lower_bound, relative_entropy, run_audit, von_neumann_entropy,
)
