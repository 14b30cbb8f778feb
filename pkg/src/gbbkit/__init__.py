"""gbbkit: executable combinatorics of edge-generated groups over covers
of flag complexes.

Highlights:

* :mod:`gbbkit.simplicial` -- complexes, subdivisions, suitability checks;
* :mod:`gbbkit.covers` -- finite regular covers from deck-group labellings;
* :mod:`gbbkit.groups` -- permutations, wreath products, commutator
  decomposition, power-product exponent sets;
* :mod:`gbbkit.intsets` -- periodic and digit-encoded subsets of Z;
* :mod:`gbbkit.presentation` / :mod:`gbbkit.quotients` -- presentations,
  finite quotients with certificates, torsion-free-kernel checks, quotient
  recipes;
* :mod:`gbbkit.cubical` -- compact wrapped cube-complex quotients,
  hyperplanes, the specialness checker, cylinders;
* :mod:`gbbkit.dehn` -- small-cancellation word-problem solver.
"""

__version__ = "0.1.0"

from .errors import (ComplexError, CoverError, CubicalError, DehnError,
                     GbbError, GroupError, QuotientError, SetError,
                     WindowError)

__all__ = [
    "GbbError", "ComplexError", "CoverError", "CubicalError", "DehnError",
    "GroupError", "QuotientError", "SetError", "WindowError", "__version__",
]
