"""Hecke algebras, generalized Temperley-Lieb quotients and their canonical bases."""

__version__ = "0.1.0"

from .laurent import LaurentPoly, Q, Q_C, V, V_INV  # noqa: E402
from .coxeter import CoxeterGraph, GroupTable, enumerate_group, parse_graph  # noqa: E402
from .hecke import HeckeAlgebra, KLTable  # noqa: E402
from .temperley_lieb import TLAlgebra  # noqa: E402

__all__ = [
    "LaurentPoly", "Q", "Q_C", "V", "V_INV",
    "CoxeterGraph", "GroupTable", "enumerate_group", "parse_graph",
    "HeckeAlgebra", "KLTable", "TLAlgebra",
]
