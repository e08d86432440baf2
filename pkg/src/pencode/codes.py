"""Structure analysis of subsystem stabilizer codes from their gauge generators.

Everything works in the phase-free GF(2) symplectic picture: a Pauli is a
2n-bit vector [x|z], packed into a Python int (x in the low n bits).  Group
membership, centralizers and canonical pairings are linear algebra mod 2.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .gf2 import gf2_nullspace, gf2_rank, gf2_row_basis
from .paulis import PauliOp, parity

__all__ = [
    "SubsystemCode",
    "CodeStructure",
    "SpanGF2",
    "WeightCapExceeded",
    "centralizer_basis",
    "derive_structure",
    "code_distance",
    "is_css_two_local",
    "min_weight_bare_representative",
    "min_weight_dressed_representative",
]


class WeightCapExceeded(Exception):
    """Raised when a weight-capped search finishes without an answer."""


def _pack(p: PauliOp) -> int:
    return p.x | (p.z << p.n)


def _unpack(v: int, n: int) -> PauliOp:
    mask = (1 << n) - 1
    return PauliOp.hermitian(n, v & mask, v >> n)


def _sym(v: int, w: int, n: int) -> int:
    """Symplectic product of two packed vectors: 1 iff they anticommute."""
    mask = (1 << n) - 1
    return parity((v & mask) & (w >> n)) ^ parity((v >> n) & (w & mask))


class SpanGF2:
    """Row space of packed bit vectors with O(rank) membership tests."""

    def __init__(self, vectors=()):
        self._rows: list[int] = []  # kept reduced against each other
        for v in vectors:
            self.add(int(v))

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, v: int) -> int:
        for r in self._rows:
            if v & (1 << (r.bit_length() - 1)):
                v ^= r
        return v

    def add(self, v: int) -> bool:
        """Insert v; returns True if it enlarged the span."""
        v = self.reduce(v)
        if v == 0:
            return False
        self._rows.append(v)
        self._rows.sort(key=int.bit_length, reverse=True)
        # back-reduce so every row has a unique leading bit
        for i, r in enumerate(self._rows):
            lead = 1 << (r.bit_length() - 1)
            for j in range(len(self._rows)):
                if j != i and self._rows[j] & lead:
                    self._rows[j] ^= r
        self._rows = sorted((r for r in self._rows if r), key=int.bit_length,
                            reverse=True)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __iter__(self):
        return iter(self._rows)


@dataclass(frozen=True)
class SubsystemCode:
    """A subsystem code given by its gauge generator list."""

    n: int
    gauge_generators: tuple[PauliOp, ...]
    labels: dict[int, str] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for g in self.gauge_generators:
            if g.n != self.n:
                raise ValueError(f"generator {g} has {g.n} qubits, code has {self.n}")
        object.__setattr__(self, "gauge_generators", tuple(self.gauge_generators))

    def qubit(self, label: str) -> int:
        """Index of a labeled qubit (e.g. 'B1')."""
        for q, lab in self.labels.items():
            if lab == label:
                return q
        raise KeyError(label)

    def op(self, s: str) -> PauliOp:
        """Parse a Pauli string on this code's qubits, labels allowed (e.g. 'X B1 X L1')."""
        toks = s.split()
        out = []
        i = 0
        while i < len(toks):
            t = toks[i]
            if len(t) == 1 and t.upper() in "XYZ":
                out.append(f"{t}{self.qubit(toks[i + 1])}")
                i += 2
            else:
                out.append(t)
                i += 1
        return PauliOp.from_string(" ".join(out), self.n)

    def gauge_span(self) -> SpanGF2:
        return SpanGF2(_pack(g) for g in self.gauge_generators)

    def generator_matrix(self) -> np.ndarray:
        """Symplectic row per generator, shape (len(G'), 2n)."""
        if not self.gauge_generators:
            return np.zeros((0, 2 * self.n), dtype=np.uint8)
        return np.array([g.symplectic() for g in self.gauge_generators], dtype=np.uint8)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "generators": [g.key() for g in self.gauge_generators],
                "labels": {str(q): lab for q, lab in sorted(self.labels.items())},
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "SubsystemCode":
        d = json.loads(text)
        n = int(d["n"])
        gens = tuple(PauliOp.from_string(s, n) for s in d["generators"])
        labels = {int(q): lab for q, lab in d.get("labels", {}).items()}
        return cls(n, gens, labels)


@dataclass(frozen=True)
class CodeStructure:
    """Derived stabilizer / logical / gauge decomposition; n = k + s + g."""

    n: int
    stabilizer_basis: tuple[PauliOp, ...]
    logical_pairs: tuple[tuple[PauliOp, PauliOp], ...]
    gauge_pairs: tuple[tuple[PauliOp, PauliOp], ...]
    independent_generators: bool = True

    @property
    def k(self) -> int:
        return len(self.logical_pairs)

    @property
    def s(self) -> int:
        return len(self.stabilizer_basis)

    @property
    def g(self) -> int:
        return len(self.gauge_pairs)

    def logical_x(self, i: int) -> PauliOp:
        return self.logical_pairs[i][0]

    def logical_z(self, i: int) -> PauliOp:
        return self.logical_pairs[i][1]

    def stabilizer_span(self) -> SpanGF2:
        return SpanGF2(_pack(p) for p in self.stabilizer_basis)


def centralizer_basis(code: SubsystemCode) -> list[PauliOp]:
    """Basis (mod phase) of all Paulis commuting with every gauge generator.

    Solves the symplectic constraint system: candidate [x|z] must satisfy
    g.z . x + g.x . z = 0 for every generator, i.e. the constraint row is the
    generator's symplectic vector with halves swapped.
    """
    n = code.n
    gm = code.generator_matrix()
    swapped = np.concatenate([gm[:, n:], gm[:, :n]], axis=1)
    return [PauliOp.from_symplectic(v) for v in gf2_nullspace(swapped)]


def _sym_gram_schmidt(vectors: list[int], n: int) -> list[tuple[int, int]]:
    """Pair vectors into anticommuting canonical pairs, input order first."""
    rest = list(vectors)
    pairs = []
    while rest:
        v = rest.pop(0)
        j = next((i for i, w in enumerate(rest) if _sym(v, w, n)), None)
        if j is None:
            raise RuntimeError("unpaired vector in symplectic Gram-Schmidt; "
                               "quotient space is degenerate")
        w = rest.pop(j)
        pairs.append((v, w))
        rest = [u ^ (v if _sym(u, w, n) else 0) ^ (w if _sym(u, v, n) else 0)
                for u in rest]
    return pairs


def _independent_mod(vectors, base: SpanGF2) -> list[int]:
    """Subset of vectors (input order) independent modulo an existing span."""
    span = SpanGF2(base)
    out = []
    for v in vectors:
        if span.add(int(v)):
            out.append(int(v))
    return out


def derive_structure(code: SubsystemCode) -> CodeStructure:
    """Stabilizers, canonical bare-logical pairs and canonical gauge pairs.

    Stabilizers are span(G) vectors whose generator-coefficient combination
    lies in the kernel of the anticommutation Gram matrix; logical pairs come
    from symplectic Gram-Schmidt on the centralizer modulo stabilizers, gauge
    pairs from the same procedure on span(G) modulo stabilizers.
    """
    n = code.n
    gens = [_pack(g) for g in code.gauge_generators]
    m = len(gens)

    gram = np.zeros((m, m), dtype=np.uint8)
    for i in range(m):
        for j in range(i + 1, m):
            gram[i, j] = gram[j, i] = _sym(gens[i], gens[j], n)

    gen_rank = gf2_rank(code.generator_matrix()) if m else 0
    independent = gen_rank == m

    stab_vecs = []
    if m:
        for coeffs in gf2_nullspace(gram):
            v = 0
            for i in np.nonzero(coeffs)[0]:
                v ^= gens[i]
            stab_vecs.append(v)
    stab_span = SpanGF2()
    stab_basis = [v for v in stab_vecs if stab_span.add(v)]

    cent = [_pack(p) for p in centralizer_basis(code)]
    logical_vecs = _independent_mod(cent, stab_span)
    logical_pairs = _sym_gram_schmidt(logical_vecs, n)

    gauge_vecs = _independent_mod(gens, stab_span)
    gauge_pairs = _sym_gram_schmidt(gauge_vecs, n)

    k, s, g = len(logical_pairs), len(stab_basis), len(gauge_pairs)
    if n != k + s + g:
        raise RuntimeError(f"inconsistent decomposition: n={n} != {k}+{s}+{g}")

    return CodeStructure(
        n=n,
        stabilizer_basis=tuple(_unpack(v, n) for v in stab_basis),
        logical_pairs=tuple((_unpack(a, n), _unpack(b, n)) for a, b in logical_pairs),
        gauge_pairs=tuple((_unpack(a, n), _unpack(b, n)) for a, b in gauge_pairs),
        independent_generators=independent,
    )


def _iter_paulis_of_weight(n: int, w: int):
    """Packed [x|z] ints for all weight-w Paulis (letters X=1, Z=2, Y=3 per site)."""
    for support in combinations(range(n), w):
        for letters in product((1, 2, 3), repeat=w):
            x = z = 0
            for q, let in zip(support, letters):
                if let & 1:
                    x |= 1 << q
                if let & 2:
                    z |= 1 << q
            yield x | (z << n)


def code_distance(code: SubsystemCode, w_max: int = 4,
                  structure: CodeStructure | None = None) -> int:
    """Minimum weight of a dressed logical: commutes with all stabilizers,
    outside span(G).  Weight-increasing exhaustive search; raises
    WeightCapExceeded past w_max.
    """
    if w_max < 1:
        raise ValueError("w_max must be >= 1")
    structure = structure or derive_structure(code)
    stabs = [_pack(p) for p in structure.stabilizer_basis]
    gauge = code.gauge_span()
    n = code.n
    for w in range(1, w_max + 1):
        for v in _iter_paulis_of_weight(n, w):
            if any(_sym(v, sv, n) for sv in stabs):
                continue
            if gauge.contains(v):
                continue
            return w
    raise WeightCapExceeded(f"no dressed logical of weight <= {w_max}")


def is_css_two_local(code: SubsystemCode) -> bool:
    """True iff every generator is weight <= 2 and purely X-type or Z-type."""
    return all(g.weight <= 2 and (g.is_x_type or g.is_z_type)
               for g in code.gauge_generators)


def _min_weight_in_coset(n: int, start: int, span_rows: list[int],
                         w_max: int | None):
    """Gray-code walk over start * span; returns the lightest packed vector."""
    mask = (1 << n) - 1
    rows = list(span_rows)
    if len(rows) > 22:
        raise ValueError(f"coset of 2^{len(rows)} elements is beyond desk scale")

    def wt(v):
        return ((v & mask) | (v >> n)).bit_count()

    cur = start
    best, best_w = cur, wt(cur)
    for i in range(1, 1 << len(rows)):
        cur ^= rows[(i & -i).bit_length() - 1]
        w = wt(cur)
        if w < best_w:
            best, best_w = cur, w
    if w_max is not None and best_w > w_max:
        raise WeightCapExceeded(f"minimum coset weight {best_w} exceeds w_max={w_max}")
    return best


def min_weight_bare_representative(code: SubsystemCode, logical: PauliOp,
                                   w_max: int | None = None,
                                   structure: CodeStructure | None = None) -> PauliOp:
    """Lightest element of the coset logical*S (bare logicals are defined up
    to stabilizer).  The logical must commute with every gauge generator.
    """
    if any(not logical.commutes(g) for g in code.gauge_generators):
        raise ValueError(f"{logical} is not bare: it anticommutes with a gauge generator")
    structure = structure or derive_structure(code)
    rows = [_pack(p) for p in structure.stabilizer_basis]
    best = _min_weight_in_coset(code.n, _pack(logical), rows, w_max)
    return _unpack(best, code.n)


def min_weight_dressed_representative(code: SubsystemCode, logical: PauliOp,
                                      w_max: int | None = None) -> PauliOp:
    """Lightest element of the coset logical*span(G) (dressed freedom)."""
    rows = list(code.gauge_span())
    best = _min_weight_in_coset(code.n, _pack(logical), rows, w_max)
    return _unpack(best, code.n)
