class TensorCertError(Exception):
    """Base class for every error raised by tensorcert."""

    def __init__(self, message):
        self.message = message
        super().__init__(self.message)
