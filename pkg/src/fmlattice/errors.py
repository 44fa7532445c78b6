"""Exception hierarchy shared by the library and the CLI.

Every domain failure derives from :class:`LatticeError`, carries a short
machine-readable ``code`` and an optional ``detail`` mapping that the CLI
copies into its structured error record.
"""

from __future__ import annotations


class LatticeError(Exception):
    code = "LatticeError"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def to_record(self) -> dict:
        return {"type": self.code, "message": self.message, "detail": self.detail}


class UnknownType(LatticeError):
    code = "UnknownType"


class InvalidCharacteristic(LatticeError):
    code = "InvalidCharacteristic"


class InvalidGenerator(LatticeError):
    code = "InvalidGenerator"


class BothZero(LatticeError):
    code = "BothZero"


class HypothesisFailed(LatticeError):
    code = "HypothesisFailed"


class ZeroRank(LatticeError):
    code = "ZeroRank"


class NotCoprime(LatticeError):
    code = "NotCoprime"


class NonpositiveA(LatticeError):
    code = "NonpositiveA"


class NotIsotropic(LatticeError):
    code = "NotIsotropic"


class NotPrimitive(LatticeError):
    code = "NotPrimitive"


class FractionalFiberClass(LatticeError):
    code = "FractionalFiberClass"


class NotInOrbit(LatticeError):
    code = "NotInOrbit"
