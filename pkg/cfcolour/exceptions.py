from typing import Optional


class CFColourError(Exception):
    """Base error; carries the exit code the CLI reports."""

    exit_code: int = 1

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ArgumentError(CFColourError):
    exit_code = 2


class InputError(CFColourError):
    exit_code = 2


class SizeLimitError(CFColourError):
    exit_code = 3


class ContractViolationError(CFColourError):
    exit_code = 1
