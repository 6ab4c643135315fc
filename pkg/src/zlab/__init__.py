"""Zassenhaus filtrations of free pro-p groups: Magnus coefficients, Lyndon words and shuffles."""
from __future__ import annotations

__version__ = "0.1.0"

from .kernels import BACKEND
from .magnus import GroupWord, epsilon, magnus_expand, parse_group_word, sigma_series, tau_series
from .ncpoly import ZZ, ModRing, NcSeries
from .shuffle import IntPoly, indec_dimension, infiltration, shuffle
from .words import bracketing, is_lyndon, lyndon_words, necklace_count, parse_word
from .zassenhaus import (
    FundamentalMatrix,
    LevelParams,
    fundamental_matrix,
    h2_dimension,
    j_exponent,
    jump_set,
    pairing_value,
)

__all__ = [
    "BACKEND", "GroupWord", "epsilon", "magnus_expand", "parse_group_word", "sigma_series",
    "tau_series", "ZZ", "ModRing", "NcSeries", "IntPoly", "indec_dimension", "infiltration",
    "shuffle", "bracketing", "is_lyndon", "lyndon_words", "necklace_count", "parse_word",
    "FundamentalMatrix", "LevelParams", "fundamental_matrix", "h2_dimension", "j_exponent",
    "jump_set", "pairing_value", "clear_caches",
]


def clear_caches() -> None:
    """Drop memoized series, products and word tables (for cold timings)."""
    from importlib import import_module

    # the submodule name ``shuffle`` is shadowed by the function re-exported above
    magnus, products = import_module(".magnus", __name__), import_module(".shuffle", __name__)
    words, ut = import_module(".words", __name__), import_module(".unitriangular", __name__)
    for fn in (magnus._tau_word, magnus._tau_series, magnus._sigma_series, products._shuffle,
               products._infiltration, words._lyndon_cached, words.bracketing,
               ut._binomial_valuation):
        fn.cache_clear()
