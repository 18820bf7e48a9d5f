"""Square-tiled surfaces, SL(2,Z)-orbits and rank-one locus filters."""

from .cyclic_covers import (
    CyclicCoverData,
    build_origami,
    eierlegende_wollmilchsau,
    ornithorynque,
    rh_genus,
    validate_cover,
)
from .cylinders import (
    ConfigReport,
    Cylinder,
    CylinderDecomposition,
    Residue,
    configuration_check,
    direction_decomposition,
    gt_modulus,
    gt_residue,
    homologous_implies_parallel_check,
    horizontal_decomposition,
)
from .degeneration import (
    ConnectivityGraph,
    DegenerateConfig,
    FilterReport,
    Part,
    Verdict,
    cycle_space_dim,
    gp_is_cycle,
    part_feasibility,
    pinch,
    rank1_filter,
)
from .errors import *  # noqa: F401,F403
from .homology import HomologyBasis, homology_action, homology_basis
from .lyapunov import LyapunovEstimate, degeneracy_test, random_walk_exponents
from .origami import (
    Origami,
    SingularityData,
    Stratum,
    canonical_form,
    enumerate_origamis,
    genus,
    l_origami,
    singularities,
    stratum,
    torus,
    validate,
)
from .perm import Permutation
from .sl2z import Orbit, act_S, act_S_inv, act_T, act_T_inv, cusps, orbit

__version__ = "0.1.0"
