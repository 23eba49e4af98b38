"""Height profiles of linear codes over the real field.

Library surface: the :mod:`~mheights.codes` model and constructors, the
four height algorithms in :mod:`~mheights.heights`, closed forms and
geometric verifiers in :mod:`~mheights.analysis`, and the LP / matrix
kernels in :mod:`~mheights.lpcore` and :mod:`~mheights.linalg`.  The
``mheights`` console script in :mod:`~mheights.cli` drives it all.
"""

from .codes import (
    RealCode,
    dual,
    is_ortho_spherical,
    is_spherical,
    load_code,
    make_axis_replicated,
    make_binary_induced,
    make_dodecahedral,
    make_icosahedral,
    make_negacyclic,
    make_random,
    ospc_dual_generator,
    puncture,
    save_code,
)
from .heights import (
    ExtremalCertificate,
    HeightProfile,
    full_profile,
    height_comb_dual,
    height_comb_primal,
    height_comb_primal_pc,
    height_lp_dual,
    height_lp_primal,
    height_once,
    min_distance_by_rank,
    p_m_set,
    r_height,
    sorted_view,
    vector_m_height,
)
from .analysis import (
    ToleranceQuery,
    closed_form_negacyclic,
    closed_form_negacyclic_dual,
    equidistance_witness,
    vmm_min_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "RealCode",
    "dual",
    "is_ortho_spherical",
    "is_spherical",
    "load_code",
    "make_axis_replicated",
    "make_binary_induced",
    "make_dodecahedral",
    "make_icosahedral",
    "make_negacyclic",
    "make_random",
    "ospc_dual_generator",
    "puncture",
    "save_code",
    "ExtremalCertificate",
    "HeightProfile",
    "full_profile",
    "height_comb_dual",
    "height_comb_primal",
    "height_comb_primal_pc",
    "height_lp_dual",
    "height_lp_primal",
    "height_once",
    "min_distance_by_rank",
    "p_m_set",
    "r_height",
    "sorted_view",
    "vector_m_height",
    "ToleranceQuery",
    "closed_form_negacyclic",
    "closed_form_negacyclic_dual",
    "equidistance_witness",
    "vmm_min_ratio",
    "__version__",
]
