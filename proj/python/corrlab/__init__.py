"""Random correlation matrices over the reals, complex numbers and quaternions.

Matrices are numpy arrays: real (N, N) float64, complex (N, N) complex128, quaternion
(N, N, 4) float64 with components (z_re, z_im, w_re, w_im) of z + w j. Angle sets are lists of
rows; row j (1-based, j = 1..N-1) holds beta * j angles in (0, pi).
"""

import json as _json

from . import _corrlab
from ._corrlab import (
    ConfigError,
    Degenerate,
    DomainError,
    InvalidInput,
    NotPositiveDefinite,
    UsageError,
    angle_exponent,
    angles_to_cholesky,
    angles_to_correlation,
    angles_to_partials,
    cholesky,
    correlation_to_angles,
    digamma,
    expected_log_det,
    gaussian_construction,
    implied_a,
    is_valid_correlation,
    log_beta,
    log_density,
    log_det,
    log_det_from_angles,
    log_det_moment,
    log_gamma,
    log_jacobian_hyperspherical,
    log_normalisation,
    log_pd_probability,
    log_volume,
    log_volume_partial_correlation_form,
    marginal_pdf,
    partial_corr_from_schur,
    sample_correlation,
    schur_complement,
    sin_power_integral,
    suite_names,
)


def verify(suite, **config):
    """Run a verification suite and return the report as a dict.

    Keyword arguments use the command-line names with '-' replaced by '_'
    (field, n_dim, a, trials, seed, workers, max_n, gaussian_n).
    """
    config = dict(config, suite=suite)
    return _json.loads(_corrlab.verify_json(_json.dumps(config)))


__all__ = [name for name in dir() if not name.startswith("_")]
