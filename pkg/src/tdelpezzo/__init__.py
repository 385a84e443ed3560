"""Exact computations with del Pezzo surfaces carrying T-singularities."""

from .kernels import BACKEND
from .markov import MARKOV_5, MarkovEquation, MarkovTriple, enumerate_solutions
from .qgdeform import DeformationStep, SurfaceRecord, deform, enumerate_deformations
from .quotsing import CyclicQuotSing, SingularityClass, hj_expansion, normalize, t_data
from .toric import Fan, ToricSurface, fan_from_rays, wps_fan

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CyclicQuotSing",
    "DeformationStep",
    "Fan",
    "MARKOV_5",
    "MarkovEquation",
    "MarkovTriple",
    "SingularityClass",
    "SurfaceRecord",
    "ToricSurface",
    "deform",
    "enumerate_deformations",
    "enumerate_solutions",
    "fan_from_rays",
    "hj_expansion",
    "normalize",
    "t_data",
    "wps_fan",
]
