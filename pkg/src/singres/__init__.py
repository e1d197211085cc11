"""Exact blowups, transforms of ideals and local resolution invariants."""

from __future__ import annotations

__version__ = "0.1.0"

from .blowup import (
    BlowupChart,
    Center,
    ReesPresentation,
    chart_by_name,
    chart_transition,
    coordinate_charts,
    general_charts,
    monomialize_at,
    naive_rees_ideal,
    point_blowup_charts,
    rees_ideal,
    translated_chart,
)
from .descent import (
    ExceptionalRecord,
    HypersurfaceFrame,
    clean,
    coefficient_ideal,
    commutation_check,
    factor_exceptional,
    osculating_frame,
    residual_order,
    tschirnhaus,
)
from .errors import DomainError, GuardError, ParseError, SingresError
from .game import (
    GameState,
    apply_move,
    defeats_all_policies,
    game_tree_oracle,
    is_won,
    play_game,
    strategy_a,
)
from .geometry import (
    hilbert_samuel_prefix,
    order_along_prime,
    order_at_least_ideal,
    order_at_point,
    rational_points,
    singular_locus,
    symbolic_power_membership,
    top_locus_ideal,
)
from .groebner import (
    DEGLEX,
    DEGREVLEX,
    LEX,
    Ideal,
    MonomialOrder,
    colon,
    eliminate,
    groebner_basis,
    intersect,
    krull_dimension,
    macaulay_basis,
    normal_form,
    saturate,
)
from .parsing import parse_polynomial, parse_script
from .resolve import (
    ChartNode,
    ResolutionTrace,
    equiconstant_locus,
    resolve_curve_embedded,
    resolve_hypersurface_char0,
    resolve_monomial,
    snc_check_plane,
)
from .ring import GF, QQ, Field, Polynomial, Ring, RingMorphism
from .transform import (
    TransformResult,
    controlled_transform,
    strict_transform,
    strict_transform_via_macaulay,
    total_transform,
    transform,
    weak_transform,
)
