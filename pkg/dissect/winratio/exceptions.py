from __future__ import annotations


class Error(Exception):
    pass


class EmptyDataError(Error):
    pass


class AllTiesError(Error):
    pass


class UndefinedRatioError(Error):
    pass


class DegenerateVarianceError(Error):
    pass


class UndefinedLogError(Error):
    pass


class DataError(Error):
    pass


class ConfigError(Error):
    pass


class NoEffectError(Error):
    pass


class InfeasibleTargetError(Error):
    pass


class MisuseError(Error):
    pass


class EmptyReportError(Error):
    pass


class UnboundedWidthError(Error):
    pass


class SimulationError(Error):
    def __init__(self, message: str, errors: list[tuple[int, Error]] | None = None):
        super().__init__(message)
        self.errors = errors or []
