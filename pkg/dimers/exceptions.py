"""
Snake Graph Dimer Models Exceptions

Validation failures subclass Django's ValidationError so that the API and
the management command can report them uniformly by ``code``. Guard
refusals and refused twists are ordinary exceptions.
"""

from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _


class InvalidWord(ValidationError):
    def __init__(self, word):
        super().__init__(
            _("Snake word %(word)r may only contain the letters R and U."),
            code='invalid_word',
            params={'word': word},
        )


class InvalidLabeling(ValidationError):
    def __init__(self, message, **params):
        super().__init__(message, code='invalid_labeling', params=params or None)


class UnknownEdge(ValidationError):
    """Structural error: an edge that is not part of the graph."""

    def __init__(self, edge):
        self.edge = edge
        super().__init__(
            _("Edge %(edge)s does not belong to the graph."),
            code='unknown_edge',
            params={'edge': edge},
        )


class DimensionMismatch(ValidationError):
    def __init__(self, message, **params):
        super().__init__(message, code='dimension_mismatch', params=params or None)


class UnsupportedShape(ValidationError):
    def __init__(self, word):
        super().__init__(
            _("Word %(word)r is neither straight nor zigzag; the matrix method does not apply."),
            code='unsupported_shape',
            params={'word': word},
        )


class UnsupportedLabeling(ValidationError):
    def __init__(self, message, **params):
        super().__init__(message, code='unsupported_labeling', params=params or None)


class InvalidPermutation(ValidationError):
    def __init__(self, message, **params):
        super().__init__(message, code='invalid_permutation', params=params or None)


class InvalidCode(ValidationError):
    def __init__(self, message, **params):
        super().__init__(message, code='invalid_code', params=params or None)


class InconsistentCover(ValidationError):
    def __init__(self, message, **params):
        super().__init__(message, code='inconsistent_cover', params=params or None)


class NotDistributive(ValidationError):
    def __init__(self, message, **params):
        super().__init__(message, code='not_distributive', params=params or None)


class GuardExceeded(Exception):
    """Brute-force enumeration refused because the predicted size is too large."""

    def __init__(self, predicted, guard, what='covers'):
        self.predicted = predicted
        self.guard = guard
        super().__init__(
            f"Refusing to enumerate {predicted} {what} (guard is {guard})."
        )


class TwistRefused(Exception):
    """A face twist needs a positive multiplicity on ``edge`` but finds 0."""

    def __init__(self, tile, edge):
        self.tile = tile
        self.edge = edge
        super().__init__(f"Cannot twist tile {tile}: edge {edge} has multiplicity 0.")


class ConsistencyError(RuntimeError):
    pass


def error_message(exc):
    """Flatten a ValidationError (or any exception) into one line."""
    if isinstance(exc, ValidationError):
        return "; ".join(str(m) for m in exc.messages)
    return str(exc)
