"""
phasecap: symplectic capacities, Wigner ellipsoids and Hardy's uncertainty
principle, computed numerically.

The modules build on one another:

``symplinalg``     symplectic matrices, Jacobi eigensolver, random Sp(n)
``williamson``     Williamson normal form, symplectic spectra, ellipsoid capacities
``admissibility``  covariance-matrix admissibility and Gaussian classification
``phasespace``     Fourier, Wigner, metaplectic and STFT transforms on grids
``hardy``          Hardy envelopes and majorant-based state verdicts
``cli``            batch command-line front end
"""

from .admissibility import (
    AdmissibilityVerdict,
    CovarianceMatrix,
    GaussianClassification,
    Verdict,
    admissible_capacity,
    admissible_hermitian,
    classify_gaussian,
    conjugate_plane_projection_areas,
    conjugate_plane_section_areas,
    is_quantum_blob,
    robertson_schrodinger_check,
    shortest_orbit_action,
    wigner_ellipsoid,
)
from .errors import NumericalError, ValidationError
from .hardy import (
    HardyEnvelope,
    HardyTag,
    HardyVerdict,
    MajorantCertificate,
    StateVerdict,
    compact_support_verdict,
    envelope_fit_wavefunction,
    hardy_check_state,
    hardy_classify,
    hermite_function,
    majorant_verdict,
)
from .phasespace import (
    GaussianWignerFunction,
    PhaseSpaceGrid,
    SampledWavefunction,
    fourier_transform,
    gaussian_wigner,
    heisenberg_weyl_translate,
    marginals,
    metaplectic_apply,
    phase_space_average,
    stft,
    stft_wigner_relation_check,
    wigner_moyal,
    wigner_transform,
)
from .symplinalg import (
    is_symplectic,
    random_symplectic,
    standard_form,
    symmetric_eigendecomposition,
    symplectic_product,
)
from .williamson import (
    Ellipsoid,
    WilliamsonDecomposition,
    ball_embedding_certificate,
    ellipsoid_capacity,
    symplectic_spectrum,
    williamson_decompose,
)

__version__ = "0.1.0"
