"""Exception hierarchy shared by every netcfg module."""

from __future__ import annotations


class NetCfgError(Exception):
    """Base class for all netcfg errors."""


class ParseError(NetCfgError):
    """A dataset record or file could not be decoded."""


class ValidationError(NetCfgError):
    """A value decoded fine but violates a domain invariant."""


class ContractError(NetCfgError):
    """A caller broke an operation's precondition."""


class SchemaError(NetCfgError):
    """Decoded JSON does not match the low-level description schema."""


class ExtractionError(NetCfgError):
    """Structured content could not be located in raw model output."""


class MalformedSection(ExtractionError):
    """A device section has a header but no configuration lines."""


class BackendError(NetCfgError):
    """Base class for text-generation backend failures."""


class BackendTimeout(BackendError):
    pass


class BackendUnavailable(BackendError):
    pass


class EmptyCompletion(BackendError):
    pass


class RuleMiss(BackendError):
    """The rules backend found no rule for the input in strict mode."""


class ApplicabilityError(NetCfgError):
    """A candidate bundle targets something absent from the network model."""


class StorageError(NetCfgError):
    pass


class NotFound(NetCfgError):
    pass
