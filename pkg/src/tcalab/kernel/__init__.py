from .check import TypeCheckError, elaborate, infer_type, type_of
from .parse import ParseError, parse_term, parse_type
from .reduce import nat_value, normalize, terms_equal
from .terms import (
    App,
    Const,
    Lam,
    Term,
    Var,
    app,
    as_numeral,
    free_vars,
    numeral,
    show,
    spine,
)
from .types import EMPTY, N, UNIT, Arrow, Prod, Sum, TypeExpr, arrows, finite_type
from .verdict import HOLDS, Fails, Holds, Unknown, Verdict, conj, disj, plausible, refuted

__all__ = [
    "App", "Arrow", "Const", "EMPTY", "Fails", "HOLDS", "Holds", "Lam", "N", "ParseError", "Prod",
    "Sum", "Term", "TypeCheckError", "TypeExpr", "UNIT", "Unknown", "Var", "Verdict", "app",
    "arrows", "as_numeral", "conj", "disj", "elaborate", "finite_type", "free_vars", "infer_type",
    "nat_value", "normalize", "numeral", "parse_term", "parse_type", "plausible", "refuted",
    "show", "spine", "terms_equal", "type_of",
]
