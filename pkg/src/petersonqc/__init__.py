"""Polynomial presentations of Peterson schemes for simple Lie types.

The package builds, over exact rationals, the cell presentations of the
Peterson scheme attached to a simple root system and a standard parabolic,
the centralizer group scheme of the cyclic element in the dual Borel, and
the combinatorial quantum/affine basis map, together with a verification
suite for the identities these objects satisfy.
"""

__version__ = "0.1.0"
