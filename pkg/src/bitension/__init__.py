"""Biharmonicity toolkit for sphere and complex-projective configurations.

Modules: ``ambient`` (coordinate model and Hopf field), ``curves`` (jets and
Frenet apparatus), ``biharmonic`` (tension/bitension residuals and the lift
relation), ``families`` (explicit biharmonic curves, the order-4 helix
solver, the torsion classifier), ``clifford`` (product tori, sphere bundle,
circle products, hypersurface predicates), ``service``/``cli`` (front ends).
"""

__version__ = "0.1.0"
