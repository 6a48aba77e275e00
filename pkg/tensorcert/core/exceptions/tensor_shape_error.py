from tensorcert.core.exceptions.tensor_cert_error import TensorCertError


class TensorShapeError(TensorCertError):
    """Raised when orders, dimensions or indices do not fit together."""

    def __init__(self, message, expected=None, actual=None):
        self.expected = expected
        self.actual = actual
        super().__init__(message)
