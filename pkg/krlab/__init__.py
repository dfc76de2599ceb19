from .errors import (
    BudgetExceeded,
    CapExceeded,
    ContextMismatch,
    ElementBudgetExceeded,
    FormatError,
    IndeterminateBounds,
    IterationBudgetExceeded,
    KrlabError,
    ParseError,
    RegularityError,
    UnknownEntry,
    UnknownGenerator,
    ValidationError,
)
from .config import Budgets, DEFAULT_BUDGETS, load_budgets

from .groups import FiniteGroup, cyclic_group, make_group, product_group
from .rees import LabeledPartialFunction, ReesContext, format_lpf, make_rees, parse_lpf, parse_permutation
from .semigroup import SemigroupTable, generate, is_aperiodic, reduced_product, rlm, tilson_congruence, type_ii
from .green import depth, green, green_frame, j_poset
from .hull import anticliques, cycle_continuity, degree, fiber_graph, hull_elements, in_hull, link_solve, make_Mk
from .rhodes import RhodesLattice, Spc, format_spc, parse_spc, rh_to_sp, sp_to_rh, spc_join, spc_leq, spc_meet

from .flows import FlowEngine, backflow, free_flow, loop, vacuum
from .wff import format_wff, wff_parse
from .states import find_contradiction, refutation, replay_derivation, states, wff_eval, wff_trace
from .automata import Automaton, rz, ts_of
from .verify import FlowAssignment, one_point_flow_test, search_flow, verify_flow
from .bounds import AxiomRegistry, ComplexityInterval, complexity_bounds, load_axioms

from .io_formats import read_flow, read_script, read_semigroup, write_flow
from .catalog import catalog_build, catalog_names, catalog_run, make_character_table, verify_linkage_identity
