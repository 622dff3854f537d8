"""Sign vectors, sign-variation statistics, and the distinguished sign sets.

Positions inside ``entries`` are 0-based; the labels 1..n used by diagrams
and matroids map to entry ``i-1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from . import kernels

SIGN_TO_CHAR = {1: "+", -1: "-", 0: "0"}
CHAR_TO_SIGN = {"+": 1, "-": -1, "0": 0}

MAX_ENUMERATION_N = 14


def sign_of(x) -> int:
    """Sign of a number as -1/0/+1."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@dataclass(frozen=True, order=True)
class SignVector:
    """A vector over {-1, 0, +1}; serialized over the alphabet '+-0'."""

    entries: tuple

    def __post_init__(self):
        if len(self.entries) < 1:
            raise ValueError("sign vector must have length >= 1")
        if any(e not in (-1, 0, 1) for e in self.entries):
            raise ValueError(f"entries must be -1/0/+1, got {self.entries}")

    @classmethod
    def from_string(cls, s: str) -> "SignVector":
        try:
            return cls(tuple(CHAR_TO_SIGN[c] for c in s))
        except KeyError as e:
            raise ValueError(f"bad sign character {e} in {s!r}") from None

    @classmethod
    def from_values(cls, values: Iterable) -> "SignVector":
        return cls(tuple(sign_of(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "".join(SIGN_TO_CHAR[e] for e in self.entries)

    def __neg__(self) -> "SignVector":
        return SignVector(tuple(-e for e in self.entries))

    def to_bytes(self) -> bytes:
        return kernels.pack(self.entries)

    @classmethod
    def from_bytes(cls, packed: bytes) -> "SignVector":
        return cls(kernels.unpack(packed))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def first_nonzero(self):
        """0-based index of the first nonzero entry, or None."""
        for i, e in enumerate(self.entries):
            if e != 0:
                return i
        return None

    def support(self) -> frozenset:
        """1-based labels of the nonzero entries."""
        return frozenset(i + 1 for i, e in enumerate(self.entries) if e != 0)

    def zero_positions(self) -> frozenset:
        """1-based labels of the zero entries."""
        return frozenset(i + 1 for i, e in enumerate(self.entries) if e == 0)

    def num_zeros(self) -> int:
        return sum(1 for e in self.entries if e == 0)

    def projectivize(self) -> "SignVector":
        """Representative with first nonzero entry +1 (identity on 0)."""
        i = self.first_nonzero()
        if i is None or self.entries[i] == 1:
            return self
        return -self

    def sign_rep(self) -> "SignVector":
        """Projective representative whose first nonzero entry at 0-based
        position p equals (-1)^p, the normalization used for the
        distinguished sign sets."""
        i = self.first_nonzero()
        if i is None:
            return self
        want = 1 if i % 2 == 0 else -1
        return self if self.entries[i] == want else -self

    def is_sign_normalized(self) -> bool:
        return self == self.sign_rep() and not self.is_zero()


SignLike = Union[SignVector, Sequence]


def as_sign_vector(v: SignLike) -> SignVector:
    if isinstance(v, SignVector):
        return v
    return SignVector.from_values(v)


def var(v: SignLike) -> int:
    """Number of sign changes ignoring zeros; var(0) = -1."""
    return kernels.var_bytes(as_sign_vector(v).to_bytes())


def varbar(v: SignLike) -> int:
    """Max of var over all sign choices for the zero entries."""
    return kernels.varbar_bytes(as_sign_vector(v).to_bytes())


def alt(v: SignLike):
    """Negate every second coordinate; an involution exchanging var/varbar."""
    if isinstance(v, SignVector):
        return SignVector(tuple(e if i % 2 == 0 else -e for i, e in enumerate(v.entries)))
    return tuple(x if i % 2 == 0 else -x for i, x in enumerate(v))


def compose(s: SignLike, t: SignLike) -> SignVector:
    """(s o t)_i = s_i if s_i != 0 else t_i."""
    a, b = as_sign_vector(s), as_sign_vector(t)
    if a.n != b.n:
        raise ValueError("length mismatch in compose")
    return SignVector.from_bytes(kernels.compose_bytes(a.to_bytes(), b.to_bytes()))


def sign_leq(s: SignLike, t: SignLike) -> bool:
    """True iff s is obtained from t by zeroing out entries."""
    a, b = as_sign_vector(s), as_sign_vector(t)
    if a.n != b.n:
        raise ValueError("length mismatch in sign_leq")
    return all(x == 0 or x == y for x, y in zip(a.entries, b.entries))


def sign_leq_projective(s: SignLike, t: SignLike) -> bool:
    """Partial order on projective classes: s <= t or s <= -t."""
    a, b = as_sign_vector(s), as_sign_vector(t)
    return sign_leq(a, b) or sign_leq(a, -b)


@dataclass(frozen=True)
class SignSet:
    """The distinguished set of sign vectors with varbar = k, normalized so
    the first nonzero entry at 0-based position p equals (-1)^p.  ``closed``
    allows zero entries."""

    n: int
    k: int
    closed: bool
    members: frozenset

    def __contains__(self, v) -> bool:
        return as_sign_vector(v) in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self):
        return sorted(self.members)


def enumerate_sign_set(n: int, k: int, closed: bool) -> SignSet:
    """Enumerate the sign set of parameters (n, k); exact filter over the
    3^n (or 2^n) sign vectors."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"need 0 <= k <= n-1, got n={n}, k={k}")
    if n > MAX_ENUMERATION_N:
        raise ValueError(f"n={n} exceeds enumeration bound {MAX_ENUMERATION_N}")
    members = []
    if closed:
        for entries in itertools.product((1, 0, -1), repeat=n):
            v = SignVector(entries)
            i = v.first_nonzero()
            if i is None:
                continue
            if entries[i] != (1 if i % 2 == 0 else -1):
                continue
            if varbar(v) == k:
                members.append(v)
    else:
        for rest in itertools.product((1, -1), repeat=n - 1):
            v = SignVector((1,) + rest)
            if var(v) == k:
                members.append(v)
    return SignSet(n=n, k=k, closed=closed, members=frozenset(members))
