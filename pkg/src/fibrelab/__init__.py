"""fibrelab: a finite-category-theory engine.

Explicit-table categories, FinSet-valued diagrams, Grothendieck
constructions, split (co)fibrations, Kan extensions, colimits in Cat, and
brute-force certification of the colimit decomposition formulas.
"""

__version__ = "0.1.0"
