"""ramapoly: generalized Ramanujan polynomials, plane-tree statistics, and an
exact identity-verification harness.

Submodules:

* ``polyring``   exact sparse integer polynomials with canonical rendering
* ``qpolys``     the polynomial families, closed forms, symbolic identities
* ``treecore``   plane trees, exhaustive enumeration, elder/improper statistics
* ``halfmobile`` half-mobile forests and the theta bijection
* ``bijections`` psi, the label-reordering map, contraction, root swap
* ``forests``    fixed-root forests and the planted/plane counting formulas
* ``harness``    the identity registry and suite runner (see the CLI)
"""

__version__ = "0.1.0"

__all__ = ["polyring", "qpolys", "treecore", "halfmobile", "bijections",
           "forests", "harness"]
