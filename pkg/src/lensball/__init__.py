"""Exact arithmetic for the two rational-ball fillings of L(p^2, pq - 1).

The modules build on each other: ``arith`` (Euclidean data, A-map, Bezout
pair), ``contfrac`` and ``plumbing`` (chains, H_1, determinants), ``spin``
(characteristic sublinks, T-transport), ``stein`` (tb, Gamma, d3) and
``sweep`` / ``cli`` for bulk verification.
"""

from lensball.arith import (
    AMapData,
    BezoutData,
    CoprimePair,
    EuclideanData,
    Role,
    a_map_closed,
    a_map_subtractive,
    abs_det_a,
    bezout_cd,
    euclidean_sequences,
    matched_pq,
)
from lensball.contfrac import (
    ContinuedFraction,
    DegenerateTail,
    a_side_chain,
    det_sequence,
    evaluate,
    matched_chains,
    negative_expansion,
    symmetric_chain,
)
from lensball.plumbing import (
    CyclicElement,
    HomologyPresentation,
    LensRelation,
    NonRationalSphere,
    WeightedChain,
    end_identification,
    epsilon,
    gamma0_in_eta,
    gamma0_trace_det,
    h1_presentation,
    lens_equiv,
    lens_parameters,
    linking_matrix,
    s_i_determinants,
)
from lensball.spin import (
    CharSublink,
    SpinLabel,
    admissible_labels,
    characteristic_sublinks,
    induced_spin,
    t_closed_form,
    t_final_even_p,
    t_transport,
)
from lensball.stein import (
    CertificateFailure,
    GammaValue,
    ModularHalfUndefined,
    NonIntegralRho,
    TbBreakdown,
    contactomorphism_certificate,
    d3_from_characteristic,
    gamma_a,
    gamma_b,
    gamma_pullback,
    modular_half,
    rho_evaluation,
    tb_breakdown,
)

__version__ = "0.1.0"
