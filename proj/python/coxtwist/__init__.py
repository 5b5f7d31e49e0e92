"""Twisted involutions in finite Coxeter groups: orders, cells and homology."""

from ._core import (
    ActionGraph,
    BooleanCheck,
    Cell,
    CheckResult,
    CoxeterMatrix,
    DiagramAutomorphism,
    EulerianReport,
    FaceComplex,
    FinitePoset,
    GroupTable,
    HIdentityReport,
    HomologyProfile,
    LabelledEdge,
    Polynomial,
    ShellingReport,
    Side,
    SimplicialComplex,
    SpecError,
    SphereCheck,
    SystemSpec,
    ThinCheck,
    TwistedTable,
    CapExceeded,
    bruhat_poset_twisted,
    brute_force_twisted,
    build_face_poset,
    build_group,
    builtin_catalog,
    check_h_identities,
    descent_polynomial,
    enumerate_twisted,
    g_theta_graph,
    is_twisted_involution,
    make_coxeter_matrix,
    parse_system_spec,
    reduced_homology,
    run_battery,
    run_battery_on,
    smith_normal_form,
    underline_act,
    validate_automorphism,
    verify_sphere_interval,
    weak_poset_twisted,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
