"""Exception hierarchy shared by every module."""


class AirtypeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(AirtypeError, ValueError):
    def __init__(self, field, value, reason="must be finite and positive"):
        self.field = field
        self.value = value
        super().__init__(f"invalid {field}={value!r}: {reason}")


class MalformedRLEError(AirtypeError, ValueError):
    pass


class MaskIOError(AirtypeError, OSError):
    """Base for bitmap / manifest loading failures."""


class MaskFileNotFoundError(MaskIOError, FileNotFoundError):
    pass


class MalformedHeaderError(MaskIOError):
    pass


class DimensionOverflowError(MaskIOError):
    pass


class ManifestError(AirtypeError, ValueError):
    """The manifest JSON is structurally invalid. ``field`` names the culprit."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class EmptyGeometryError(AirtypeError, ValueError):
    pass


class EmptyDetectionError(AirtypeError, ValueError):
    def __init__(self, message="mask has no foreground pixels", image_id=None):
        self.image_id = image_id
        if image_id is not None:
            message = f"[{image_id}] {message}"
        super().__init__(message)


class ConfigurationError(AirtypeError, ValueError):
    pass


class EmptySetError(AirtypeError, ValueError):
    pass


class EvaluationInputError(AirtypeError, ValueError):
    def __init__(self, message, image_ids=()):
        self.image_ids = list(image_ids)
        super().__init__(message)


class TooSmallError(AirtypeError, ValueError):
    def __init__(self, message, min_resolvable_gsd_cm):
        self.min_resolvable_gsd_cm = min_resolvable_gsd_cm
        super().__init__(message)


class RecordError(AirtypeError):
    """Wraps a per-record failure with the record's image_id."""

    def __init__(self, image_id, cause):
        self.image_id = image_id
        self.cause = cause
        super().__init__(f"[{image_id}] {cause}")
