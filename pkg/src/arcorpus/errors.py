"""Exception types raised across the toolkit."""


class ArcorpusError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(ArcorpusError):
    pass


class SchemaError(ArcorpusError):
    """A manifest or data file does not match its documented schema."""


class DuplicateSource(SchemaError):
    pass


class UnknownFormat(SchemaError):
    pass


class InvalidUtf8(ArcorpusError, ValueError):
    pass


class EmptyCorpus(ArcorpusError, ValueError):
    pass


class UnknownId(ArcorpusError, KeyError):
    pass
