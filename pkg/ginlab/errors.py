class InputError(ValueError):
    """Raised when a parameter or argument lies outside its documented domain."""


class NumericError(RuntimeError):
    """
    Raised when a numerical procedure fails to deliver a trustworthy value.

    Args:
        msg (str): human readable description
        diagnostics (dict): error estimates, sizes and iteration counts
    """

    def __init__(self, msg, diagnostics=None):
        super().__init__(msg)
        self.diagnostics = {} if diagnostics is None else dict(diagnostics)

    def __str__(self):
        msg = super().__str__()
        if not self.diagnostics:
            return msg
        diag = ', '.join(f'{k}={v}' for k, v in self.diagnostics.items())
        return f'{msg} [{diag}]'
