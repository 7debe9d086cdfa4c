"""Exception types shared across the engine."""

from __future__ import annotations


class UdappError(Exception):
    """Base class for every error raised by this package."""


class EmptyCollectionError(UdappError):
    pass


class DuplicateIdError(UdappError):
    pass


class UnknownIdError(UdappError):
    pass


class GroupMembershipError(UdappError):
    pass


class SizeRangeError(UdappError):
    pass


class NoSnapshotError(UdappError):
    pass


class CycleError(UdappError):
    pass


class UnknownGroupError(UdappError):
    pass


class StateError(UdappError):
    pass


class BadRangeError(UdappError):
    pass


class LexError(UdappError):
    def __init__(self, position: int, message: str):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ParseError(UdappError):
    """Bad syntax, in an expression or in a layout document."""

    def __init__(self, position: int, reason: str):
        super().__init__(f"{reason} at position {position}")
        self.position = position
        self.reason = reason


class UnknownFunctionError(UdappError):
    def __init__(self, name: str, position: int = 0):
        super().__init__(f"unknown function '{name}' at position {position}")
        self.name = name
        self.position = position


class VersionError(UdappError):
    pass


class ReferentialError(UdappError):
    pass


class TraceParseError(UdappError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"trace line {line}: {reason}")
        self.line = line
        self.reason = reason


class EventError(UdappError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"event {index} failed: {cause}")
        self.index = index
        self.cause = cause
