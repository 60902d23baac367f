"""Graph-homomorphism inequalities through reflection certificates, plus
degree-weighted cycle counts for rainbow-cycle experiments."""

__version__ = "0.1.0"

from .graphs import (
    CapabilityError,
    EdgeColouring,
    Graph,
    GraphError,
    cube_label,
    cube_vertex,
    direction_colouring,
    edge_density,
    gen_clique_union,
    gen_complete,
    gen_cycle,
    gen_cycle_blowup,
    gen_hypercube,
    gen_random,
    gen_set_graph,
    greedy_proper_colouring,
    make_graph,
    peel_min_degree,
    rainbow_colouring,
    read_colouring,
    read_edge_list,
    set_graph_vertex,
    validate_colouring,
    write_colouring,
    write_edge_list,
)
from .automorphisms import (
    Automorphism,
    enumerate_automorphisms,
    enumerate_involutions,
    fixed_set,
    identity,
    is_automorphism,
)
from .reflectivity import (
    CertificateStep,
    ReflectionCertificate,
    ReflectionTriple,
    ReflectivitySearch,
    certificate_from_json,
    certificate_to_json,
    certify_reflective,
    conjugate_certificate,
    cube_pair,
    enumerate_reflection_triples,
    hypercube_reflection_chain,
    is_admissible,
    reflect_set,
    reflectivity_report,
    relaxed_steps,
    set_graph_reflection_chain,
    verify_certificate,
    verify_reflection_triple,
)
from .homcount import (
    FinalInequalityResult,
    ReflectionInequalityResult,
    SidorenkoResult,
    check_final_inequality,
    check_reflection_inequality,
    count_cube_homomorphisms,
    cube_exponent_identity,
    cube_parameters,
    hom_count,
    injective_hom_count,
    noninjective_pair_bound,
    quotient_graph,
    sidorenko_check,
    supersaturation_experiment,
    turan_exponent,
)
from .rainbow import (
    CycleSearchResult,
    SpectralValue,
    canonical_pattern_offset,
    check_pattern_chain,
    check_variant_chain,
    coincidence_table,
    coincidence_weight,
    cycle_weight_sum,
    cycle_weight_sum_spectral,
    decompose_hom_cycle,
    distinct_colour_count,
    find_almost_rainbow,
    find_rainbow_cycle,
    hom_cycle_weight,
    is_rainbow_cycle,
    is_simple_cycle,
)
