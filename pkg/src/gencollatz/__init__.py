"""Generalized Collatz mappings on Z^e: separating hyperplanes, wild and tame
cones, divergence density bounds and stopping-time densities, in exact arithmetic."""
from .catalog import Section4Params, build_section4_map, build_zsqrt2_map, section4_closed_form_bound
from .errors import CollatzError
from .forms import IntegerForm
from .geometry import (TameCone, build_tame_cone, enumerate_separating_forms, is_directed,
                       is_separating, tame_cone_contains)
from .mapcore import (CollatzMap, is_relatively_prime_type, residue_of, shift_span_rank,
                      strictly_positive_witness, validate_map)
from .trajectory import (CertifiedDivergent, Cycle, ExceededCap, closed_form_iterate, detect_cycle,
                         iterate, step, stopping_time)

__version__ = "0.1.0"
