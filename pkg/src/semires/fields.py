"""Exact coefficient fields: prime fields F_p and the rationals.

Scalars are plain Python objects: ints in [0, p) for the prime lane,
``fractions.Fraction`` for the rational lane. Matrix-level arithmetic lives
in :mod:`semires.matrix`; this module owns scalar semantics and validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import InputError

MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    r = isqrt(n)
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field descriptor.

    kind: "prime" with modulus p, or "rationals".
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "prime":
            if not isinstance(self.p, int) or not 2 <= self.p <= MAX_PRIME:
                raise InputError(f"prime field modulus out of range: {self.p!r}")
            if not _is_prime(self.p):
                raise InputError(f"modulus {self.p} is not prime")
        elif self.kind == "rationals":
            if self.p is not None:
                raise InputError("rationals take no modulus")
        else:
            raise InputError(f"unknown field kind {self.kind!r}")

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime"

    def coerce(self, x):
        """Canonical scalar: int in [0, p) or Fraction."""
        if self.kind == "prime":
            if isinstance(x, Fraction):
                if x.denominator == 1:
                    x = x.numerator
                else:
                    num = x.numerator % self.p
                    den = x.denominator % self.p
                    if den == 0:
                        raise InputError(f"denominator {x.denominator} vanishes mod {self.p}")
                    return num * pow(den, self.p - 2, self.p) % self.p
            if isinstance(x, str):
                x = int(x)
            return int(x) % self.p
        if isinstance(x, str):
            if "/" in x:
                num, den = x.split("/", 1)
                return Fraction(int(num), int(den))
            return Fraction(int(x))
        return Fraction(x)

    def zero(self):
        return 0 if self.kind == "prime" else Fraction(0)

    def one(self):
        return 1 if self.kind == "prime" else Fraction(1)

    def add(self, a, b):
        if self.kind == "prime":
            return (a + b) % self.p
        return a + b

    def sub(self, a, b):
        if self.kind == "prime":
            return (a - b) % self.p
        return a - b

    def mul(self, a, b):
        if self.kind == "prime":
            return (a * b) % self.p
        return a * b

    def neg(self, a):
        if self.kind == "prime":
            return (-a) % self.p
        return -a

    def inv(self, a):
        if self.kind == "prime":
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, self.p - 2, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def scalar_to_json(self, a):
        if self.kind == "prime":
            return int(a)
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_json(self) -> dict:
        if self.kind == "prime":
            return {"kind": "prime", "p": self.p}
        return {"kind": "rationals"}

    @classmethod
    def from_json(cls, doc) -> "FieldSpec":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise InputError(f"field descriptor must be an object with 'kind', got {doc!r}")
        if doc["kind"] == "prime":
            return cls.prime(doc.get("p"))
        if doc["kind"] == "rationals":
            return cls.rationals()
        raise InputError(f"unknown field kind {doc['kind']!r}")

    def __str__(self):
        return f"F_{self.p}" if self.kind == "prime" else "Q"
