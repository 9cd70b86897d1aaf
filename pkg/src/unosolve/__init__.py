"""Solvers, reductions and oracles for mathematical UNO."""

from .core import (NINE_CARDS, NINE_CARD_SEQUENCE, Card, GameMode, Instance, InstanceError,
                   Move, Outcome, PlayingSequence, SequenceError, check_sequence,
                   generate_random, is_feasible, matches, parse_instance, parse_sequence,
                   serialize_instance, serialize_sequence, transpose, transpose_sequence,
                   winner_condition)
from .dp_uno1 import DpResult, Signature, dp_decide, enumerate_pathsets
from .geography import (Verdict, best_move, max_matching, solve_uno2_uncoop, solve_uvg,
                        uvg_minimax)
from .oracles import (BudgetExceeded, OracleBudget, hamiltonian_path_bruteforce,
                      uno_minimax)
from .reductions import (SimpleGraph, hp_to_uno2, hpc_to_uno1, map_hp_to_sequence,
                         map_sequence_to_hp, pad_equal_hands, parse_graph, serialize_graph)
from .solver_coop import Certificate, solve_uno1_exact, solve_uno2_coop
from .unograph import (UnoGraph, build_uno1_graph, build_uno2_graph, canonical_form,
                       export_dot, incidence_bigraph, isomorphic, line_graph)

__version__ = "0.1.0"
