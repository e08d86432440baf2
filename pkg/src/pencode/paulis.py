"""Exact n-qubit Pauli operators in the symplectic GF(2) representation.

An operator is stored as two bit masks plus an i-exponent:

    P = i^phase * prod_j X_j^{x_j} Z_j^{z_j}

with X applied before Z on each qubit.  Under this convention XZ = -iY, so
the Hermitian Y carries phase 1 (Y = i*XZ).  Products track the exact phase
in {1, i, -1, -i}; the bit parts multiply by XOR.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["PauliOp", "parity", "symplectic_product"]

_LETTER_BITS = {"X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_PHASE_STR = {0: "", 1: "i*", 2: "-", 3: "-i*"}


def parity(mask: int) -> int:
    """Parity of the popcount of a bit mask."""
    return mask.bit_count() & 1


@dataclass(frozen=True)
class PauliOp:
    """Immutable Pauli operator; n qubits, x/z bit masks, phase = i-exponent mod 4."""

    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        mask = (1 << self.n) - 1
        if self.x & ~mask or self.z & ~mask:
            raise ValueError("bit mask exceeds qubit count")
        object.__setattr__(self, "phase", self.phase & 3)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(n, 0, 0, 0)

    @classmethod
    def hermitian(cls, n: int, x: int, z: int, sign: int = 1) -> "PauliOp":
        """The Hermitian operator with the given bits: sign * i^{|x&z|} X^x Z^z."""
        ph = (x & z).bit_count() & 3
        if sign == -1:
            ph = (ph + 2) & 3
        elif sign != 1:
            raise ValueError("sign must be +1 or -1")
        return cls(n, x, z, ph)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliOp":
        """One-local X, Y or Z on the given qubit."""
        if not 0 <= qubit < n:
            raise ValueError(f"qubit {qubit} out of range for n={n}")
        xb, zb = _LETTER_BITS[letter.upper()]
        return cls.hermitian(n, xb << qubit, zb << qubit)

    @classmethod
    def from_string(cls, s: str, n: int) -> "PauliOp":
        """Parse whitespace-separated letter+index tokens, e.g. 'X0 X3', 'Z1 Z2'.

        The empty string or 'I' denotes the identity.  Each qubit may appear
        at most once; the result is the Hermitian product of the tokens.
        """
        s = s.strip()
        if s in ("", "I"):
            return cls.identity(n)
        x = z = 0
        seen: set[int] = set()
        for tok in s.split():
            letter, idx = tok[0].upper(), tok[1:]
            if letter not in _LETTER_BITS or not idx.isdigit():
                raise ValueError(f"bad pauli token {tok!r}")
            q = int(idx)
            if not 0 <= q < n:
                raise ValueError(f"qubit {q} out of range for n={n}")
            if q in seen:
                raise ValueError(f"qubit {q} repeated in {s!r}")
            seen.add(q)
            xb, zb = _LETTER_BITS[letter]
            x |= xb << q
            z |= zb << q
        return cls.hermitian(n, x, z)

    @classmethod
    def from_symplectic(cls, vec: np.ndarray) -> "PauliOp":
        """Hermitian operator from a length-2n [x|z] bit vector."""
        vec = np.asarray(vec).ravel() & 1
        n = vec.size // 2
        if vec.size != 2 * n:
            raise ValueError("symplectic vector length must be even")
        x = int(sum(1 << i for i in range(n) if vec[i]))
        z = int(sum(1 << i for i in range(n) if vec[n + i]))
        return cls.hermitian(n, x, z)

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliOp") -> "PauliOp":
        if self.n != other.n:
            raise ValueError(f"qubit count mismatch: {self.n} != {other.n}")
        # reorder Z^{z1} past X^{x2}: each overlap contributes a factor -1
        ph = self.phase + other.phase + 2 * parity(self.z & other.x)
        return PauliOp(self.n, self.x ^ other.x, self.z ^ other.z, ph & 3)

    def commutes(self, other: "PauliOp") -> bool:
        if self.n != other.n:
            raise ValueError(f"qubit count mismatch: {self.n} != {other.n}")
        return (parity(self.x & other.z) ^ parity(self.z & other.x)) == 0

    @property
    def weight(self) -> int:
        """Number of qubits acted on non-trivially."""
        return (self.x | self.z).bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def is_hermitian(self) -> bool:
        return ((self.phase ^ (self.x & self.z).bit_count()) & 1) == 0

    @property
    def is_x_type(self) -> bool:
        """Non-identity, purely X on every supported qubit."""
        return self.z == 0 and self.x != 0

    @property
    def is_z_type(self) -> bool:
        return self.x == 0 and self.z != 0

    def hermitian_sign(self) -> int:
        """+1 or -1 relative to the canonical Hermitian representative."""
        d = (self.phase - (self.x & self.z).bit_count()) & 3
        if d == 0:
            return 1
        if d == 2:
            return -1
        raise ValueError(f"{self} is not Hermitian")

    def canonical(self) -> "PauliOp":
        """Same bits, canonical Hermitian (+1) phase."""
        return PauliOp.hermitian(self.n, self.x, self.z)

    # -- views -------------------------------------------------------------

    def symplectic(self) -> np.ndarray:
        """Length-2n uint8 vector [x bits | z bits]."""
        v = np.zeros(2 * self.n, dtype=np.uint8)
        for i in range(self.n):
            v[i] = (self.x >> i) & 1
            v[self.n + i] = (self.z >> i) & 1
        return v

    def letter(self, qubit: int) -> str:
        xb = (self.x >> qubit) & 1
        zb = (self.z >> qubit) & 1
        return "IXZY"[xb + 2 * zb]

    def __str__(self) -> str:
        toks = [f"{self.letter(q)}{q}" for q in range(self.n) if self.letter(q) != "I"]
        body = " ".join(toks) if toks else "I"
        if self.is_hermitian:
            sign = "-" if self.hermitian_sign() < 0 else ""
            return sign + body
        d = (self.phase - (self.x & self.z).bit_count()) & 3
        return _PHASE_STR[d] + body

    def key(self) -> str:
        """Phase-free canonical string, usable as a dict / JSON key."""
        toks = [f"{self.letter(q)}{q}" for q in range(self.n) if self.letter(q) != "I"]
        return " ".join(toks) if toks else "I"


def symplectic_product(p: PauliOp, q: PauliOp) -> int:
    """0 if p and q commute, 1 if they anticommute."""
    return parity(p.x & q.z) ^ parity(p.z & q.x)
