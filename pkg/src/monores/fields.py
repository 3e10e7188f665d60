"""Exact coefficient fields: the rationals and prime fields Z/p.

Elements are plain Python values: :class:`fractions.Fraction` over Q and
ints reduced into ``[0, p)`` over Z/p.  The :class:`Field` object owns the
arithmetic so hot loops can stay free of wrapper objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32003


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if c != 0 and not is_prime(c):
            raise ValueError(f"{c} is not prime")

    def __str__(self) -> str:
        return "q" if self.characteristic == 0 else f"zp:{self.characteristic}"

    @property
    def zero(self):
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.characteristic == 0 else 1

    def __call__(self, value):
        """Coerce an int (or, over Q, a rational) into the field."""
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise ZeroDivisionError(f"{value} has no image in Z/{p}")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    def contains(self, value) -> bool:
        """True iff ``value`` is a canonical element of this field."""
        if self.characteristic == 0:
            return isinstance(value, (Fraction, int)) and not isinstance(value, bool)
        return type(value) is int and 0 <= value < self.characteristic

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero is not invertible")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sign(self, k: int):
        """(-1)**k as a field element."""
        return self(-1 if k % 2 else 1)


QQ = Field(0)


def parse_field(text: str) -> Field:
    """Parse ``q`` or ``zp:<prime>``."""
    t = text.strip().lower()
    if t in ("q", "qq"):
        return QQ
    if t.startswith("zp:"):
        digits = t[3:]
        if not digits.isdigit():
            raise ValueError(f"bad field descriptor {text!r}")
        p = int(digits)
        if not is_prime(p):
            raise ValueError(f"field characteristic {p} is not prime")
        return Field(p)
    raise ValueError(f"bad field descriptor {text!r}; expected 'q' or 'zp:<prime>'")
