"""Codes that mask partially stuck-at-1 memory cells and correct magnitude-1 errors."""

from .gf import Field, FieldElement, make_field, parse_field
from .matfq import MatrixFq, block_partition, rre, solve_full_rank
from .codes import LinearCode, bch_build, code_from_generator, decode_bounded, encode

__all__ = [
    "Field",
    "FieldElement",
    "LinearCode",
    "MatrixFq",
    "bch_build",
    "block_partition",
    "code_from_generator",
    "decode_bounded",
    "encode",
    "make_field",
    "parse_field",
    "rre",
    "solve_full_rank",
]
