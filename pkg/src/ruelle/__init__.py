"""Transfer-operator analysis of wavelet filter pairs."""
from .laurent import LaurentPoly, make
from .transfer import (EigenspaceResult, Filter, LawtonMatrix, fixed_space,
                       lawton_matrix, ruelle_apply, spectrum)

__all__ = ["LaurentPoly", "make", "Filter", "LawtonMatrix", "EigenspaceResult",
           "ruelle_apply", "lawton_matrix", "spectrum", "fixed_space"]
__version__ = "0.1.0"
