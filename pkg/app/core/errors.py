# app/core/errors.py
"""Error hierarchy.

Every error carries a ``status_code`` (the CLI exit status) and a ``detail``
message, the same shape the web layer used for HTTP errors. Negative
mathematical verdicts (inequivalent, not representable) are return values,
never exceptions.
"""


class ForgeError(Exception):
    status_code: int = 2

    def __init__(self, detail: str, status_code: int | None = None):
        super().__init__(detail)
        self.detail = detail
        if status_code is not None:
            self.status_code = status_code

    def __str__(self) -> str:
        return self.detail


class ConfigError(ForgeError):
    pass


class FieldError(ForgeError):
    pass


class MatrixError(ForgeError):
    pass


class MatroidError(ForgeError):
    pass


class InputError(ForgeError):
    """Malformed input file or argument; detail starts with ``path:line:`` when known."""

    def __init__(self, detail: str, path: str | None = None, line: int | None = None):
        if path is not None and line is not None:
            detail = f"{path}:{line}: {detail}"
        elif path is not None:
            detail = f"{path}: {detail}"
        super().__init__(detail)
        self.path = path
        self.line = line


class CapExceeded(ForgeError):
    pass
