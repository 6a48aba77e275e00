from tensorcert.core.exceptions.tensor_cert_error import TensorCertError


class TensorFormatError(TensorCertError):
    """Raised for malformed tensor files and invalid generator parameters."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
