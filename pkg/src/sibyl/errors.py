"""Exception hierarchy shared by every module.

Each error carries a stable machine-readable ``code`` and the HTTP status the
service maps it to. In-process callers can rely on the class alone.
"""

from __future__ import annotations


class SibylError(Exception):
    """Base class for all errors raised by this package."""

    code = "INTERNAL"
    status = 500


class SchemaMismatchError(SibylError):
    """A case's factor values do not match the model's factor names."""

    code = "SCHEMA_MISMATCH"
    status = 422


class InsufficientReferenceError(SibylError):
    """The reference dataset is too small for the requested computation."""

    code = "INSUFFICIENT_REFERENCE"
    status = 422


class InvalidInputError(SibylError):
    """A value is outside the operation's domain (non-finite, bad range)."""

    code = "INVALID_INPUT"
    status = 400


class OracleSizeError(SibylError):
    """The exhaustive attribution oracle only handles small factor counts."""

    code = "TOO_LARGE_FOR_ORACLE"
    status = 422


class AlignmentError(SibylError):
    """Outcome labels do not line up with the reference case ids."""

    code = "ALIGNMENT_ERROR"
    status = 422


class LimitExceededError(SibylError):
    """More simultaneous factor changes than the sandbox allows."""

    code = "TOO_MANY_CHANGES"
    status = 422


class InvalidChangeError(SibylError):
    """A sandbox change names an unknown factor or an out-of-domain value."""

    code = "INVALID_CHANGE"
    status = 422


class PresentationSchemaError(SibylError):
    """Factor metadata cannot be assembled into a presentation schema."""

    code = "SCHEMA_ERROR"
    status = 500


class InvalidValueError(SibylError):
    """A factor value cannot be rendered for its declared kind."""

    code = "INVALID_VALUE"
    status = 422


class CaseNotFoundError(SibylError):
    """No case with the requested id exists in the loaded dataset."""

    code = "CASE_NOT_FOUND"
    status = 404


class BadQueryError(SibylError):
    """A request parameter is malformed or out of range."""

    code = "BAD_QUERY"
    status = 400


class FeatureDisabledError(SibylError):
    """The endpoint exists but is switched off in this server configuration."""

    code = "FEATURE_DISABLED"
    status = 404


class FileFormatError(SibylError):
    """A data file could not be parsed; message includes file and field."""

    code = "FILE_FORMAT_ERROR"
    status = 500


class CorpusValidationError(SibylError):
    """Corpus loading found error-severity findings; carries the report."""

    code = "VALIDATION_FAILED"
    status = 500

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
