"""Termination proofs for string rewriting via sparse tiling."""

from .automaton import ShiftAutomaton, from_tiles
from .completion import ROC, RFC, closure_rules, complete, completed_automaton, initial_automaton
from .errors import (Collapsing, MissingReductPath, NotStandard, StepTimeout, StrategySyntaxError,
                     TileBudgetExceeded, TilecertError, TpdbSyntaxError, WidthMismatch,
                     WidthUnsupported)
from .labelling import btiled_rules, has_covered_redex
from .srs import LEFT, RIGHT, Marked, RelProblem, Rule, parse_tpdb, render_tpdb, size_triple, word
from .strategy import (MAYBE, YES, Budget, ProofTrace, auto_prove, parse_strategy, replay,
                       run_strategy)
from .tiling import Tile, TileSet, bord, btiled, btiles, lang_member, tile, tiled
from .transforms import (ProofStep, dp, mirror, trfc, trfcu, troc, trocu, validate_weights,
                         weight_removal)

__version__ = "0.1.0"
