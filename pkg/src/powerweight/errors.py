"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain where a formula is defined."""


class FormatError(ValueError):
    """A corpus record or persisted file is malformed."""


class DuplicateIdError(FormatError):
    """Two corpus records share the same ``id``."""


class EmptyCorpusError(ValueError):
    """Ingest accepted zero documents."""
