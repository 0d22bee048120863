"""Define the ncforms package."""

from ncforms.calculus import differential, poincare_primitive
from ncforms.expression import parse
from ncforms.freeforms import Form, Signature, free_signature
from ncforms.rewrite import RewriteSystem
from ncforms.scalars import ParamTable, Scalar

__all__ = [
    "Form",
    "ParamTable",
    "RewriteSystem",
    "Scalar",
    "Signature",
    "differential",
    "free_signature",
    "parse",
    "poincare_primitive",
]
