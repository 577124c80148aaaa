"""Exception types raised across the toolkit."""


class EditGuardError(Exception):
    """Base class for all library errors."""


class EmptyDatasetError(EditGuardError):
    pass


class InsufficientRowsError(EditGuardError):
    pass


class TooFewMinoritySamplesError(EditGuardError):
    pass


class SchemaMismatchError(EditGuardError):
    pass


class LengthMismatchError(EditGuardError):
    pass


class EmptyBackgroundError(EditGuardError):
    pass


class SchemaVersionError(EditGuardError):
    pass


class CorruptModelError(EditGuardError):
    pass


class AllRowsInvalidError(EditGuardError):
    pass


class SplitError(EditGuardError):
    pass
