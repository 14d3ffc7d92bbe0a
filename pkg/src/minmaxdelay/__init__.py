"""Min-max-delay flows: exact fractional and integer solvers, gadgets and oracles."""

from .dcflow import DcMaxFlowResult, dc_max_flow, decompose
from .errors import (FlowError, InfeasibleError, InstanceError, InstanceParseError, MinMaxDelayError,
                     PathError, ResourceError)
from .expansion import ExpandedProblem, expand, extract_edge_flow
from .gadgets import (building_block, gap_composite, partition_gadget, property_corpus, random_instance,
                      three_partition_gadget)
from .intsolve import IntSolveResult, int_gap, int_min_max_delay
from .lp import LinearProgram, LpSolution, check_solution, solve_lp
from .minmax import min_max_delay, trim_to_rate
from .model import (Edge, GraphInstance, PathFlow, Rational, SolveReport, aggregate_edge_flow, build_instance, max_delay,
                    path_delay, read_instance, validate, write_instance)
from .oracle import enumerate_paths, oracle_dc_max_flow, oracle_int_min_max_delay, oracle_min_max_delay

__version__ = "0.1.0"
