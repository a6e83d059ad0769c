"""Exact mixing deciders and brute-force correlation oracles for
sequences of SL(2,Z) toral automorphisms."""

from .deciders import (
    Verdict,
    check_rokhlin_sufficient,
    decide_commuting_joint,
    decide_element_mixing,
    decide_joint_polyfamilies,
    decide_joint_powers,
    decide_polyfamily_mixing,
    decide_relative_joint_unipotent,
    witness_same_modulus_triple,
)
from .families import (
    FamilyTuple,
    PolyMatFamily,
    PowerFamily,
    expand_unipotent_products,
    family_power,
    parse_family,
)
from .intmat import (
    ChebPair,
    Mat2Z,
    MatClass,
    chebyshev_coeffs,
    classify,
    fixed_vector,
    mat_pow,
    parse_matrix,
)
from .lab import (
    KrengelCertificate,
    Order2Report,
    RokhlinReport,
    ScanReport,
    conjecture_scan,
    find_unipotent,
    krengel_orthogonal,
    order2_counterexample,
    rokhlin_report,
)
from .oracle import (
    QC,
    GridSet,
    TrigPoly,
    char_correlation,
    grid_fourier,
    lattice_correlation,
    limit_two_unipotents,
    trig_correlation,
    trig_projection,
)
from .polynomials import IntPoly, parse_poly
from .quadfield import EigenData, QuadVal, eigen_data, squarefree_decompose
from .scenarios import SCENARIOS, Scenario, ScenarioResult, run_scenarios

__version__ = "1.0.0"
