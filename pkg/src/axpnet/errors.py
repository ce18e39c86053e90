"""Exception types shared across the package."""


class SchemaError(ValueError):
    """A vector, matrix, or feature reference does not fit the schema."""


class ModelFormatError(ValueError):
    """A portable weights document failed to parse or validate."""


class IngestError(ValueError):
    """A raw survey file or binarized dataset file is unusable."""


class AmbiguousDecisionError(Exception):
    """A logit fell inside the ambiguity margin around the decision threshold.

    Decisions this close to the boundary cannot be explained soundly with
    floating-point evaluation, so they are rejected instead of rounded.
    """

    def __init__(self, logit_value, message=None):
        self.logit_value = logit_value
        super().__init__(
            message or f"logit {logit_value!r} lies inside the ambiguity margin"
        )
