"""Group homophily measures for two-class hypergraphs.

Modules
-------
hypergraph    k-uniform two-class hypergraphs, typed degrees, edge-type counts
scores        affinity / baseline / ratio profiles, homophily predicates, GHI
nullmodels    cardinality-based hypergraph stochastic block models
certificates  exact LP dual certificates and witnesses for impossibility results
ingest        file formats, compositions, bootstrap
cli           command-line interface (``hyperhomophily``)
"""

from .certificates import (
    DualCertificate,
    GeneralizedBaseline,
    MajorityLP,
    Witness,
    brute_force_impossibility_search,
    build_majority_lp,
    constraint_removal_witness,
    dual_certificate_majority,
    even_monotonic_consequence,
    generalized_baseline_from_witness,
    monotonic_contradiction,
    verify_certificate,
)
from .errors import HomophilyError
from .hypergraph import (
    ClassLabel,
    EdgeTypeCounts,
    TwoClassHypergraph,
    TypedDegree,
    complete_hypergraph,
    edge_type_counts,
    project_to_binary,
    typed_degrees,
    validate,
)
from .ingest import (
    BootstrapReport,
    CompositionRecord,
    affinity_from_compositions,
    bootstrap,
    load_compositions,
    load_hypergraphs,
    load_labeled_hypergraph,
)
from .nullmodels import HSBMParams, convergence_experiment, sample_hsbm, sample_hsbm_poisson
from .scores import (
    HomophilyVerdict,
    Profile,
    affinity_profile,
    alternative_affinity_profile,
    alternative_baseline_profile,
    asymptotic_baseline_profile,
    baseline_profile,
    group_homophily_index,
    homophily_verdict,
    ratio_profile,
)

__version__ = "0.1.0"
