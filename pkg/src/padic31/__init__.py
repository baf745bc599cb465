"""Dynamics of (3,1)-rational maps f(x) = (x^3 + a x^2 + b x) / (a x + b) over Q_p."""
from .ergodic import (
    ErgodicityVerdict,
    InvariantRadiusSet,
    MemicProfile,
    Verdict,
    clear_denominators,
    equidistribution_probe,
    ergodicity_verdict,
    haar_measure,
    half_beta_verdict,
    invariant_radius_set,
    memic_profile,
    non_ergodicity_verdict,
    scale_conjugate,
)
from .maps import (
    Map31,
    Map31General,
    eval_f,
    eval_f_approx,
    f_prime,
    fixed_point_structure,
    reduce_to_canonical,
)
from .padic import (
    Ball,
    BallKind,
    NormExp,
    PadicApprox,
    PadicExact,
    digit_expand,
    parse_rational,
    root_norms_newton,
    sqrt_qp,
    valuation,
)
from .periodic import (
    PeriodicOrbitCert,
    orbit_sphere_swap_check,
    period_two_cubic,
    period_two_params,
    sextic_P,
    two_cycle_certificate,
    unit_a_excluded,
)
from .spheres import (
    RadiusMapKind,
    SphereClass,
    Terminal,
    apply_radius_map,
    classify_sphere,
    critical_sphere_image,
    digit_preservation_index,
    local_isometry_check,
    minimal_invariant_ball,
    preimage_radius_ladder,
    rho,
    run_orbit,
    sphere_partition,
)

__version__ = "0.1.0"
