"""Simulator of geometrically shaped photon-photon coupling.

Pipeline: transverse Laguerre-Gauss mode basis (:mod:`spcsim.modes`),
scatterer architectures (:mod:`spcsim.geometry`), hopping / interaction
tensor assembly (:mod:`spcsim.coupling`), and number-conserving bosonic
dynamics (:mod:`spcsim.fock`), orchestrated by the ``spcsim`` command line
(:mod:`spcsim.cli`).
"""

from .kernels import backend_name as kernel_backend

__version__ = "0.1.0"

__all__ = ["__version__", "kernel_backend"]
