"""Growth-rate orders on sequences, split complexes over a discrete valuation
ring, their tensor ideals, and spectra of finite distributive lattices."""

__version__ = "0.1.0"

# importing these registers the JSON decoders they own
from . import dvralg, witness
from .asymorder import DEFAULT_BUDGET, MU, PLAIN, SIGMA, SearchBudget, Verdict, compare, equiv, is_stable
from .seqcore import from_dict, to_dict

__all__ = ["DEFAULT_BUDGET", "MU", "PLAIN", "SIGMA", "SearchBudget", "Verdict", "compare", "equiv", "from_dict",
           "is_stable", "to_dict", "dvralg", "witness", "__version__"]
