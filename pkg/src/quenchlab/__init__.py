"""quenchlab: universal relaxation after shallow quenches to critical
spin chains — exact free-fermion analytics, tensor-network numerics,
conformal-perturbation-theory predictions, and fitting/collapse analysis.
"""

__version__ = "1.0.0"

from . import (analysis, cli, cpt, crossover, freefermion, integrals, models,
               mps, pfaffian, series)

__all__ = ["analysis", "cli", "cpt", "crossover", "freefermion", "integrals",
           "models", "mps", "pfaffian", "series", "__version__"]
