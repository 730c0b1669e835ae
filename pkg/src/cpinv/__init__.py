"""Exact crossed-product algebras with unitary involutions, positivity
certification and unitary codebooks."""

from .crossed import AlgElem, CocycleTable, CrossedProduct
from .embedding import EmbeddingContext, Sign, embed, sign_of, verify_alpha_is_conjugation
from .errors import (ClosureViolation, CpinvError, DomainError, FieldMismatchError, InputError,
                     InternalConsistencyError, NotInvertibleError, ParameterError, PrecisionExhausted,
                     StructuralError)
from .galois import Automorphism, Tower, condition_commute, validate_tower
from .involution import Involution, build_tau, validate_involution
from .numfield import NFElem, NumberField

__version__ = "0.1.0"

__all__ = [
    "AlgElem", "Automorphism", "ClosureViolation", "CocycleTable", "CpinvError", "CrossedProduct",
    "DomainError", "EmbeddingContext", "FieldMismatchError", "InputError", "InternalConsistencyError",
    "Involution", "NFElem", "NotInvertibleError", "NumberField", "ParameterError", "PrecisionExhausted",
    "Sign", "StructuralError", "Tower", "build_tau", "condition_commute", "embed", "sign_of",
    "validate_involution", "validate_tower", "verify_alpha_is_conjugation",
]
