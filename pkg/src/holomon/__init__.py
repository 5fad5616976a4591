"""Exact-arithmetic toolkit for flat-connection moduli: shear coordinates,
quantum torus trace algebras, difference-operator representations, and
Virasoro conformal-block gluing with the isomonodromic tau sum."""

__version__ = "0.1.0"
