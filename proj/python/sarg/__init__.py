"""Dirichlet L-functions, their zeros, and arg L on the critical line."""

from ._core import (
    Character,
    ZeroList,
    characters,
    count_zeros,
    envelope,
    find_zeros,
    hardy_z,
    l_value,
    m_decomposition,
    parse_character,
    primitive_characters,
    s_value,
    theorem_constant,
    verify_eq3,
    verify_lemma2,
    __version__,
)

__all__ = [
    "Character",
    "ZeroList",
    "characters",
    "count_zeros",
    "envelope",
    "find_zeros",
    "hardy_z",
    "l_value",
    "m_decomposition",
    "parse_character",
    "primitive_characters",
    "s_value",
    "theorem_constant",
    "verify_eq3",
    "verify_lemma2",
    "__version__",
]
