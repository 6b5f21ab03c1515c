"""Nonnegative reals stored as ``mantissa * 2**exponent``.

Products such as ``exp(-x - y) * I_mu(2*sqrt(x*y))`` leave the double range
long before the quantities built from them stop being meaningful, so the
kernels hand these values around in this form and only convert at the edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Cody-Waite split of ln 2: LN2_HI has trailing zero bits so k * LN2_HI is exact
LN2_HI = 6.93147180369123816490e-01
LN2_LO = 1.90821492927058770002e-10
LN2 = math.log(2.0)


@dataclass(frozen=True, order=False)
class LogScaled:
    mantissa: float
    exponent: int

    def __post_init__(self) -> None:
        m = self.mantissa
        if m == 0.0:
            if self.exponent != 0:
                raise ValueError("zero must be stored with exponent 0")
            return
        if not (1.0 <= m < 2.0):
            raise ValueError(f"mantissa {m!r} not normalized to [1, 2)")

    # construction -------------------------------------------------------

    @classmethod
    def normalize(cls, mantissa: float, exponent: int = 0) -> "LogScaled":
        """Build from any finite ``mantissa >= 0`` times ``2**exponent``."""
        if mantissa < 0.0 or not math.isfinite(mantissa):
            raise ValueError(f"cannot represent {mantissa!r}")
        if mantissa == 0.0:
            return ZERO
        m, e = math.frexp(mantissa)
        return cls(2.0 * m, exponent + e - 1)

    @classmethod
    def from_float(cls, value: float) -> "LogScaled":
        return cls.normalize(value, 0)

    @classmethod
    def from_log(cls, log_value: float) -> "LogScaled":
        """Build from the natural logarithm of the value."""
        if log_value == -math.inf:
            return ZERO
        if not math.isfinite(log_value):
            raise ValueError(f"cannot represent exp({log_value!r})")
        if abs(log_value) < 700.0:
            return cls.normalize(math.exp(log_value))
        k = math.floor(log_value / LN2)
        r = (log_value - k * LN2_HI) - k * LN2_LO
        return cls.normalize(math.exp(r), k)

    # conversion ---------------------------------------------------------

    def __float__(self) -> float:
        return self.to_float()

    def to_float(self) -> float:
        """Convert to a double; underflows to 0.0 and overflows to ``inf``."""
        if self.mantissa == 0.0:
            return 0.0
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return math.inf

    def log(self) -> float:
        if self.mantissa == 0.0:
            return -math.inf
        return math.log(self.mantissa) + self.exponent * LN2

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0.0

    # arithmetic ---------------------------------------------------------

    def __mul__(self, other: "LogScaled | float") -> "LogScaled":
        if not isinstance(other, LogScaled):
            other = LogScaled.from_float(float(other))
        if self.is_zero or other.is_zero:
            return ZERO
        return LogScaled.normalize(self.mantissa * other.mantissa,
                                   self.exponent + other.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other: "LogScaled | float") -> "LogScaled":
        if not isinstance(other, LogScaled):
            other = LogScaled.from_float(float(other))
        if other.is_zero:
            raise ZeroDivisionError("division by a zero LogScaled")
        if self.is_zero:
            return ZERO
        return LogScaled.normalize(self.mantissa / other.mantissa,
                                   self.exponent - other.exponent)

    def __add__(self, other: "LogScaled | float") -> "LogScaled":
        if not isinstance(other, LogScaled):
            other = LogScaled.from_float(float(other))
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = (self, other) if self.exponent >= other.exponent else (other, self)
        shift = small.exponent - big.exponent
        if shift < -60:
            return big
        return LogScaled.normalize(big.mantissa + math.ldexp(small.mantissa, shift),
                                   big.exponent)

    __radd__ = __add__

    def __sub__(self, other: "LogScaled | float") -> "LogScaled":
        """Difference; raises ``ValueError`` if the result would be negative."""
        if not isinstance(other, LogScaled):
            other = LogScaled.from_float(float(other))
        if other.is_zero:
            return self
        if self < other:
            raise ValueError("LogScaled difference would be negative")
        shift = other.exponent - self.exponent
        if shift < -60:
            return self
        return LogScaled.normalize(self.mantissa - math.ldexp(other.mantissa, shift),
                                   self.exponent)

    def ratio(self, other: "LogScaled") -> float:
        """``self / other`` as a plain float."""
        return (self / other).to_float()

    # ordering -----------------------------------------------------------

    def _key(self) -> tuple[int, int, float]:
        if self.is_zero:
            return (0, 0, 0.0)
        return (1, self.exponent, self.mantissa)

    def __lt__(self, other: "LogScaled") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "LogScaled") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "LogScaled") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "LogScaled") -> bool:
        return self._key() >= other._key()


ZERO = LogScaled(0.0, 0)
ONE = LogScaled(1.0, 0)
