"""Prospect-theoretic game engine and simulator for consumer decisions in
smart grids: probability weighting and value framing primitives, finite-game
solvers under behavioral evaluation, and the storage and demand-side
management scenarios built on them.
"""

__version__ = "0.1.0"

from .dsm import (
    DsmConfig,
    HourlyLoadReport,
    LoadProfile,
    RationalitySweep,
    build_dsm_game,
    hourly_load_report,
    nonparticipating_load,
    rationality_sweep,
    solve_dsm,
    synth_profile,
)
from .games import (
    BudgetExceededError,
    EquilibriumResult,
    FiniteGame,
    GameFormatError,
    MixedProfile,
    best_response,
    brute_force_equilibrium,
    equilibrium_residual,
    eut_utility,
    format_game,
    load_game,
    parse_game,
    pt_utility,
    save_game,
    solve_2x2,
    solve_fixed_point,
)
from .prospects import (
    PreferenceReport,
    PrelecWeighting,
    Prospect,
    PtProfile,
    ValueFrame,
    evaluate_prospect,
    frame_value,
    preference_demo,
    prelec_inverse,
    prelec_weight,
)
from .storage import (
    FramingRow,
    StorageConsumer,
    StorageGridConfig,
    SweepRow,
    build_storage_game,
    company_revenue,
    expected_load,
    framing_sweep,
    sweep_company_price,
    sweep_selling_price,
)

__all__ = [
    "BudgetExceededError",
    "DsmConfig",
    "EquilibriumResult",
    "FiniteGame",
    "FramingRow",
    "GameFormatError",
    "HourlyLoadReport",
    "LoadProfile",
    "MixedProfile",
    "PreferenceReport",
    "PrelecWeighting",
    "Prospect",
    "PtProfile",
    "RationalitySweep",
    "StorageConsumer",
    "StorageGridConfig",
    "SweepRow",
    "ValueFrame",
    "best_response",
    "brute_force_equilibrium",
    "build_dsm_game",
    "build_storage_game",
    "company_revenue",
    "equilibrium_residual",
    "eut_utility",
    "evaluate_prospect",
    "expected_load",
    "format_game",
    "frame_value",
    "framing_sweep",
    "hourly_load_report",
    "load_game",
    "nonparticipating_load",
    "parse_game",
    "preference_demo",
    "prelec_inverse",
    "prelec_weight",
    "pt_utility",
    "rationality_sweep",
    "save_game",
    "solve_2x2",
    "solve_dsm",
    "solve_fixed_point",
    "sweep_company_price",
    "sweep_selling_price",
    "synth_profile",
]
