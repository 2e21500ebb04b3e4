"""Exception hierarchy shared by every analysis module.

Everything derives from ValueError so callers that only guard against
ValueError keep working.
"""
from typing import Optional


class AnalysisError(ValueError):
    """Base class for all domain errors"""


class UnsupportedDegreeError(AnalysisError):
    """Extension degree outside the supported range"""


class FieldDivisionError(AnalysisError, ZeroDivisionError):
    """Inversion or logarithm of the zero element"""


class InvalidSubfieldError(AnalysisError):
    """m does not divide the extension degree"""


class ShapeError(AnalysisError):
    """Table length is not a power of two, or does not match n"""


class InvalidEmbeddingError(AnalysisError):
    """Value cannot be moved between F_2^m and the subfield GF(2^m)"""


class NoAnnihilatorError(AnalysisError):
    """The constraint set is the whole space, so only g = 0 vanishes on it"""


class ZeroPointError(AnalysisError):
    """Zero used where only non-zero field elements are allowed"""


class NoCodewordError(AnalysisError):
    """Query needs a non-zero codeword but the code is {0}"""


class ImpossibleDistanceError(AnalysisError):
    """Minimum distance outside what any code of the given length can have"""


class DegenerateOrbitError(AnalysisError):
    """Filter generator started from the zero state"""


class AnnihilatorContractError(AnalysisError):
    """Candidate sequence annihilator fails u_t * z_t = 0"""

    def __init__(self, message: str, t: int):
        super().__init__(message)
        self.t = t


class FunctionFileError(AnalysisError):
    """Malformed function file"""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")
        self.field = field
        self.line = line


class CapabilityError(AnalysisError):
    """Input is valid but too large for the requested computation"""
