"""Split the entropy drop of an encoder into intended and lossy parts."""

import enum
from dataclasses import dataclass

from ._validation import check_nonnegative
from .exceptions import DomainError

__all__ = ["Verdict", "CompressionSpec", "LossDecomposition", "decompose_loss"]


class Verdict(str, enum.Enum):
    LOSSLESS = "Lossless"
    LOSSY = "Lossy"


@dataclass(frozen=True)
class CompressionSpec:
    """Source entropy ``h_w``, encoded entropy ``h_x`` and the entropy ``h_zbar``
    of the most concise meaning that still serves the task (all in bits).

    ``h_zbar`` is supplied by the caller; nothing here derives it.
    """

    h_w: float
    h_x: float
    h_zbar: float

    def __post_init__(self):
        for name in ("h_w", "h_x", "h_zbar"):
            object.__setattr__(self, name, check_nonnegative(getattr(self, name), name))
        if self.h_zbar > self.h_w:
            raise DomainError(
                f"h_zbar ({self.h_zbar}) cannot exceed the source entropy h_w ({self.h_w})"
            )


@dataclass(frozen=True)
class LossDecomposition:
    total: float
    intended: float
    lossy: float
    verdict: Verdict

    def as_dict(self):
        return {
            "total": self.total,
            "intended": self.intended,
            "lossy": self.lossy,
            "verdict": self.verdict.value,
        }


def decompose_loss(spec: CompressionSpec) -> LossDecomposition:
    """Decompose ``H(W) - H(X)`` as ``(H(W) - H(Zbar)) + (H(Zbar) - H(X))``.

    The verdict is lossless iff ``H(X) >= H(Zbar)``. A negative lossy part is
    returned unclamped so the three numbers always add up.
    """
    intended = spec.h_w - spec.h_zbar
    lossy = spec.h_zbar - spec.h_x
    verdict = Verdict.LOSSLESS if spec.h_x >= spec.h_zbar else Verdict.LOSSY
    # total is formed from the parts so the identity holds bit-for-bit
    return LossDecomposition(intended + lossy, intended, lossy, verdict)
