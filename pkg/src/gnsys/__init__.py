"""Exact generalized number systems over orders given by multiplication tables."""

from __future__ import annotations

from .criteria import (
    ConditionReport,
    ScanReport,
    ScanRow,
    check_finiteness_conditions,
    cns_linf_criterion,
    negative_shift_witness,
    number_system_from_generator,
    scan_negative_shifts,
    scan_positive_shifts,
)
from .domain import (
    BoxDomain,
    DigitSet,
    UnionDomain,
    check_cone_conditions,
    check_zero_interior,
    digit_set,
    domain_contains,
    domain_from_residues,
    neighbour_set,
    z_set,
)
from .engine import (
    DecisionReport,
    Expansion,
    Gns,
    LatticeState,
    Verdict,
    Witness,
    decide_finiteness,
    evaluate_digits,
    expand,
    expand_step,
    make_gns,
    verify_cycle_witness,
)
from .opoly import (
    OPoly,
    ZPoly,
    companion_operator,
    is_expansive,
    np_polynomial,
    poly_eval,
    taylor_shift,
)
from .order import (
    OElem,
    Order,
    canonical_residue,
    elem_mul,
    mul_matrix,
    norm,
    residues_mod,
    solve_divide,
    validate_order,
)
