"""Base scalar rings: integers, rationals and residue rings Z/m.

Ring objects are small strategy classes; elements are plain python
values (``int`` for Z and Z/m, ``Fraction`` for Q).  All arithmetic is
exact.  Capabilities that not every ring provides (an inverse of 2,
inverses in general) are exposed as methods that raise
``CapabilityError`` so callers fail fast.
"""

from __future__ import annotations

from fractions import Fraction


class RingError(Exception):
    pass


class RingMismatchError(RingError):
    """Operands live over different base rings."""


class CapabilityError(RingError):
    """The base ring lacks a required capability (e.g. 1/2)."""


class BaseRing:
    name = "?"
    is_field = False

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def half(self):
        """Return 1/2, or raise CapabilityError."""
        raise CapabilityError(f"2 is not invertible in {self.name}")

    def inv(self, a):
        raise CapabilityError(f"{self.name} has no general inverses")

    def mod2(self, a):
        """Canonical representative of a + 2*R (used for torsion reduction)."""
        raise NotImplementedError

    def two_is_zero(self) -> bool:
        return self.is_zero(self.from_int(2))

    def render(self, a) -> str:
        return str(a)

    def sample(self, rng, lo: int = -3, hi: int = 3):
        return self.from_int(rng.randint(lo, hi))

    def __repr__(self):
        return self.name


class IntegerRing(BaseRing):
    name = "Z"

    def from_int(self, n: int):
        return int(n)

    def mod2(self, a):
        return a % 2

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")


class RationalRing(BaseRing):
    name = "Q"
    is_field = True

    def from_int(self, n: int):
        return Fraction(n)

    def half(self):
        return Fraction(1, 2)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def mod2(self, a):
        # 2 is invertible, so 2*Q = Q and every residue is 0.
        return Fraction(0)

    def sample(self, rng, lo: int = -3, hi: int = 3):
        den = rng.choice([1, 1, 1, 2, 3])
        return Fraction(rng.randint(lo, hi), den)

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("Q")


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


class ModRing(BaseRing):
    """Residues modulo m, m >= 2.  Elements are ints in [0, m)."""

    def __init__(self, m: int):
        if m < 2:
            raise ValueError("modulus must be >= 2")
        self.m = m
        self.name = f"Z/{m}"
        self.is_field = _is_prime(m)

    def from_int(self, n: int):
        return n % self.m

    def add(self, a, b):
        return (a + b) % self.m

    def sub(self, a, b):
        return (a - b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def is_zero(self, a) -> bool:
        return a % self.m == 0

    def half(self):
        if self.m % 2 == 0:
            raise CapabilityError(f"2 is not invertible in {self.name}")
        return pow(2, -1, self.m)

    def inv(self, a):
        try:
            return pow(a, -1, self.m)
        except ValueError:
            raise CapabilityError(f"{a} is not invertible in {self.name}") from None

    def mod2(self, a):
        if self.m % 2 == 1:
            return 0
        return a % 2

    def sample(self, rng, lo: int = -3, hi: int = 3):
        return rng.randrange(self.m)

    def __eq__(self, other):
        return isinstance(other, ModRing) and other.m == self.m

    def __hash__(self):
        return hash(("mod", self.m))


ZZ = IntegerRing()
QQ = RationalRing()


def GF(p: int) -> ModRing:
    ring = ModRing(p)
    if not ring.is_field:
        raise ValueError(f"{p} is not prime")
    return ring


def ring_from_spec(spec: str) -> BaseRing:
    """Parse a ring name as used by the CLI: ``z``, ``q`` or ``mod:<m>``."""
    s = spec.strip().lower()
    if s == "z":
        return ZZ
    if s == "q":
        return QQ
    if s.startswith("mod:"):
        try:
            m = int(s[4:])
        except ValueError:
            raise ValueError(f"bad modulus in ring spec {spec!r}") from None
        return ModRing(m)
    raise ValueError(f"unknown ring spec {spec!r} (expected z, q or mod:<m>)")
