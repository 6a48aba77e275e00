from tensorcert.core.exceptions.tensor_cert_error import TensorCertError


class ConvergenceError(TensorCertError):
    """Raised when the power iteration runs out of iterations.

    ``bracket`` holds the last (lower, upper) estimate of the eigenvalue.
    """

    def __init__(self, message, bracket=None, iterations=0):
        self.bracket = bracket
        self.iterations = iterations
        super().__init__(message)
