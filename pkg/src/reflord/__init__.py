"""Reflection orders on affine Weyl groups, their condensations and order types."""
from .errors import ReflordError
from .rootsys import CoxeterType, RootSystem, build_root_system, root_system

__all__ = [
    "ReflordError", "CoxeterType", "RootSystem", "build_root_system", "root_system",
    "build_order", "chain_from_word", "condensation", "order_type_of", "signature_of_order",
]


def __getattr__(name):
    # the pipeline modules import each other; load them on first use
    if name in ("build_order", "chain_from_word"):
        from . import synth
        return getattr(synth, name)
    if name in ("condensation", "order_type_of", "signature_of_order"):
        from . import condense
        return getattr(condense, name)
    raise AttributeError(name)
