"""Exact coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Base class. Elements are plain Python numbers (Fraction or int)."""

    characteristic: int = 0
    name: str = ""

    def __call__(self, x) -> object:
        raise NotImplementedError

    def norm(self, x):
        return x

    def inv(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        z = self.__dict__.get("_zero")
        if z is None:
            z = self.__dict__["_zero"] = self(0)
        return z

    @property
    def one(self):
        o = self.__dict__.get("_one")
        if o is None:
            o = self.__dict__["_one"] = self(1)
        return o

    def is_finite(self) -> bool:
        return self.characteristic != 0

    def elements(self):
        raise FieldError(f"{self.name} is infinite")

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.characteristic == other.characteristic

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.characteristic))

    def __repr__(self) -> str:
        return self.name


class Rationals(Field):
    characteristic = 0
    name = "Q"

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)


class PrimeField(Field):
    def __init__(self, p: int):
        if p > 2**31 or not _is_prime(p):
            raise FieldError(f"F_{p}: modulus must be a prime <= 2^31")
        self.characteristic = p
        self.name = f"F{p}"

    def __call__(self, x) -> int:
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldError(f"denominator {x.denominator} vanishes in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def norm(self, x):
        return x % self.characteristic

    def inv(self, x):
        x %= self.characteristic
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.characteristic)

    def elements(self):
        return range(self.characteristic)


QQ = Rationals()


def field_from_spec(spec: str) -> Field:
    """Parse ``Q``, ``F2``, ``F 3`` or ``F_5``."""
    s = spec.replace("_", "").replace(" ", "")
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("F") and s[1:].isdigit():
        return PrimeField(int(s[1:]))
    raise FieldError(f"unknown field {spec!r}")
