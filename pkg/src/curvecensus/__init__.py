"""Exact self-intersection numbers and census tables for closed curves on
the triply-punctured sphere."""

from .words import (
    CurveClass,
    GroupWord,
    ReflectionWord,
    WordError,
    aut_orbit_partition,
    canonical_class,
    canonical_form,
    enumerate_classes,
    is_primitive,
    orbit_size,
    parse_word,
    random_classes,
    reduce_word,
    to_group_word,
    to_reflection_word,
)
from .intersection import (
    AxisThroughOrigin,
    ChordVector,
    CHORD_NAMES,
    CHORDS,
    Q_MATRIX,
    axes_of,
    chord_form_Q,
    chord_vector,
    defect_and_Delta,
    deg_e,
    linked,
    quad_bound_report,
    self_intersection,
)
from .surgery import (
    Run,
    SurgeryReport,
    contract,
    distinguished_runs,
    expand,
    is_exceptional,
    rank,
    runs,
    verify_surgery,
)
from .motifs import (
    MotifRecord,
    binom_conv,
    descendant_count,
    enumerate_motifs,
    is_motif,
    is_thin,
    motif_of,
    motifs_up_to,
    verify_motif_bounds,
)
from .census import (
    CensusError,
    CensusTable,
    QuadPoly,
    brute_table,
    closed_form_eval,
    export,
    motif_table,
    poly_extract,
)
from .mobius import (
    INF,
    GENERATOR_MATRICES,
    MobiusMatrix,
    OracleError,
    OracleInstability,
    Surd,
    axis_endpoints,
    intersection_via_cosets,
    linked_pairs,
    make_surd,
    rep_matrix,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
