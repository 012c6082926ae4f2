"""Charted bundles over spheres and tori, clutching maps and invariants."""
from .charts import (
    COLLAR,
    ChartedBundle,
    SectionField,
    collapse_map,
    collapse_radius,
    conj_bundle,
    hopf_bundle,
    lambda2_bundle,
    line_bundle_s2,
    line_tensor_s2,
    pullback_section,
    pullback_t4,
    seam_check,
    section_from_charts,
    sym2_bundle,
    tensor_bundle,
    torus_seam_check,
    trivial_bundle,
)
from .clutching import (
    SINGLET,
    SYM_BASIS,
    constant_map,
    hopf_clutching,
    lambda2_clutching,
    phase_map,
    power_map,
    quat_mul,
    quat_pow,
    sym2_clutching,
    sym2_matrix,
    tensor_clutching,
)
from .invariants import (
    DegreeResult,
    chern1_berry,
    clutching_degree,
    coherent_section,
    simple_factors,
    winding_c1,
)
from .mesh import Mesh, build_mesh, load_mesh
