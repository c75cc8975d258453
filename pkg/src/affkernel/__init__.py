"""Root systems of affine Lie algebras and the kernels of small quantum groups at roots of unity."""
__version__ = "0.1.0"
