"""Executable recursion theorems for a string-register kernel language and a mini-shell."""
from .evidence import AllAgree, Disagree, EvidenceReport, Inconclusive
from .forge import (DS_SRC, ID_SRC, S1_SRC, ds_transform, kleene_fix, quine,
                    rice_witness, rogers_fix, verify_ds, verify_ext_equal,
                    verify_kleene, verify_rogers)
from .interp import DEFAULT_FUEL, Fault, FuelExhausted, Halted, check_b_preserving, run
from .lang import (KernelProgram, ParseError, canonical, escape, fn_name, parse,
                   serialize, unescape)

__version__ = "0.1.0"
