from ._core import (
    InvalidSurface,
    abelianize,
    check_derivations,
    epsilon_table,
    extend,
    full_presentation,
    generator_count,
    reduce_word,
    subgroup_basis,
    verify,
)

__all__ = [
    "InvalidSurface",
    "abelianize",
    "check_derivations",
    "epsilon_table",
    "extend",
    "full_presentation",
    "generator_count",
    "reduce_word",
    "subgroup_basis",
    "verify",
]
