"""Exception hierarchy shared across the engine."""


class CarbonGovError(Exception):
    """Base class for all engine errors."""


# corpus
class EmptyBody(CarbonGovError):
    pass


class DuplicateDocId(CarbonGovError):
    pass


class InvalidDocument(CarbonGovError):
    pass


class InvalidConfig(CarbonGovError):
    pass


# index
class DimensionMismatch(CarbonGovError):
    pass


class RemoteUnavailable(CarbonGovError):
    pass


class CacheCorrupt(CarbonGovError):
    # raised internally, always downgraded to a miss with a warning
    pass


class IoFailure(CarbonGovError):
    pass


class CorruptSnapshot(CarbonGovError):
    pass


# agents
class MissingCity(CarbonGovError):
    pass


class InvalidRequest(CarbonGovError):
    pass


class CityMismatch(CarbonGovError):
    pass


class BackendUnavailable(CarbonGovError):
    pass


class SchemaViolation(CarbonGovError):
    pass


# evaluation
class NoRequiredFields(CarbonGovError):
    pass


class NoQueries(CarbonGovError):
    pass


class ScoreOutOfRange(CarbonGovError):
    pass
