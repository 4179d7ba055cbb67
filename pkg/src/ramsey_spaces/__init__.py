"""Topological Ramsey spaces at desk scale."""
from .core import (
    BasicOpen, Exhausted, Finite, InvalidInput, NO, NotWithin, SpaceObject, Trilean, Unknown,
    UsageError, YES, amalgam_enum, approx, depth, enum_extensions, le_bounded, le_fin,
)
from .ellentuck import ELLENTUCK, cut_above, diagonalize, evens, naturals, odds
from .milliken import MILLIKEN, condenses
from .objspec import parse_object, register_predicate
from .fusion import FusionSequence, limit, push
from .axioms import CheckReport, check_a1, check_a2, check_a3, check_a3_star, check_a4, run_suite
from .finite_ramsey import Coloring, find_homogeneous, pentagon, verify_homogeneous
from .homogenizer import (
    ClopenSet, Inconclusive, RamseyWitness, matet_run, ramsey_witness, refine_partition,
    small_lemma_witness, verify_side,
)
from .game import (
    GameConfig, GameTranscript, PlayerI, PlayerII, classical_game, e_fg_construct,
    extract_witness_from_strategy_I, replay, run, strategy_I_from_witness,
    strategy_II_from_witness_map, validate_move,
)

__all__ = [
    "BasicOpen", "Exhausted", "Finite", "InvalidInput", "NO", "NotWithin", "SpaceObject",
    "Trilean", "Unknown", "UsageError", "YES", "amalgam_enum", "approx", "depth",
    "enum_extensions", "le_bounded", "le_fin", "ELLENTUCK", "cut_above", "diagonalize",
    "evens", "naturals", "odds", "MILLIKEN", "condenses", "parse_object", "register_predicate",
    "FusionSequence", "limit", "push",
    "CheckReport", "check_a1", "check_a2", "check_a3", "check_a3_star", "check_a4", "run_suite",
    "Coloring", "find_homogeneous", "pentagon", "verify_homogeneous",
    "ClopenSet", "Inconclusive", "RamseyWitness", "matet_run", "ramsey_witness",
    "refine_partition", "small_lemma_witness", "verify_side",
    "GameConfig", "GameTranscript", "PlayerI", "PlayerII", "classical_game", "e_fg_construct",
    "extract_witness_from_strategy_I", "replay", "run", "strategy_I_from_witness",
    "strategy_II_from_witness_map", "validate_move",
]
