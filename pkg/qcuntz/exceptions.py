from typing import List, Sequence


class Error(Exception):
    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(message)


class InvalidInputError(Error):
    pass


class InvalidLetterError(InvalidInputError):
    pass


class InvalidSpecError(InvalidInputError):
    pass


class InvalidTruncationError(InvalidInputError):
    pass


class ParseError(InvalidInputError):
    def __init__(self, message: str, offset: int) -> None:
        self.offset = offset
        super().__init__(f"{message} (at offset {offset})")


class OutOfRangeError(InvalidInputError):
    pass


class IncomparableError(InvalidInputError):
    pass


class AlphabetMismatchError(InvalidInputError):
    pass


class AnalysisError(Error):
    pass


class StructureError(AnalysisError):
    pass


class RejectInputError(AnalysisError):
    def __init__(self, message: str, residual: float) -> None:
        self.residual = residual
        super().__init__(message)


class UnclassifiedRemainderError(AnalysisError):
    eigenvalues: List[float]

    def __init__(self, eigenvalues: Sequence[float]) -> None:
        self.eigenvalues = [float(v) for v in eigenvalues]
        listed = ", ".join(f"{v:.12g}" for v in self.eigenvalues)
        super().__init__(f"Eigenvalues not assignable to any block: {listed}")


class UnrecognizedStructureError(AnalysisError):
    pass
