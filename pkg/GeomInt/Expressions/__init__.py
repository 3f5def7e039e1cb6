#
# Copyright 2026 GeomInt developers
#
# ### MIT license
#
# See LICENSE.md for the full license text.
#

from .Parser import (Expr, ExpressionError, ExpressionSyntaxError, UnknownIdentifierError,  # noqa: F401
                     EvaluationError, parse_expr, format_expr, eval_expr, diff_expr, default_varnames)
