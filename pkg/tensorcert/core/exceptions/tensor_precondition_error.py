from tensorcert.core.exceptions.tensor_cert_error import TensorCertError


class TensorPreconditionError(TensorCertError):
    """Raised when a tensor lacks the sign or structure an operation needs."""

    def __init__(self, message, requirement=None):
        self.requirement = requirement
        super().__init__(message)
