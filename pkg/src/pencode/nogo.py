"""Empirical checks of the weight lower bound for bare-logical operators of
two-local CSS subsystem codes, plus a randomized scan over matrix codes.

The bound says: in a distance >= 2 code whose gauge group is generated by XX
and ZZ terms, a single-qubit X-type bare logical must weigh at least as many
qubits as there are distinct two-local Z-type bare logicals acting on its
logical qubit (and symmetrically).  The count follows the proof: two-local
operators of one type, distinct modulo stabilizer, whose actions on the
logical qubit pairwise commute (same-type actions always do).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bacon_shor import code_from_matrix, code_params
from .codes import (CodeStructure, SpanGF2, SubsystemCode, WeightCapExceeded,
                    derive_structure, is_css_two_local)
from .gf2 import as_gf2
from .paulis import PauliOp, parity

__all__ = [
    "NogoViolation",
    "NogoRow",
    "NogoReport",
    "ScanReport",
    "enumerate_bare_logicals",
    "check_theorem",
    "random_code_matrix",
    "scan_matrices",
    "INTERPRETATION_NOTE",
]

INTERPRETATION_NOTE = (
    "counts are of distinct two-local bare logicals of the opposite type, "
    "modulo stabilizer, whose logical action touches the qubit; same-type "
    "actions commute pairwise, so the commuting-action hypothesis is automatic"
)


class NogoViolation(Exception):
    """A scanned code violated the weight bound; carries the certificate."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


def enumerate_bare_logicals(code: SubsystemCode, w_cap: int, pauli_type: str,
                            structure: CodeStructure | None = None) -> list[PauliOp]:
    """All X-type (or Z-type) Paulis of weight <= w_cap that commute with every
    gauge generator and lie outside span(G), deduplicated modulo stabilizer.

    Returns the lightest representative found for each stabilizer coset,
    in weight-then-support order.
    """
    if not is_css_two_local(code):
        raise ValueError("enumeration requires a two-local CSS gauge group")
    if w_cap < 1:
        raise ValueError("w_cap must be >= 1")
    pauli_type = pauli_type.upper()
    if pauli_type not in ("X", "Z"):
        raise ValueError("pauli_type must be 'X' or 'Z'")
    structure = structure or derive_structure(code)
    n = code.n
    gens = [(g.x, g.z) for g in code.gauge_generators]
    gauge = code.gauge_span()
    stab = structure.stabilizer_span()

    found: dict[int, PauliOp] = {}
    for w in range(1, w_cap + 1):
        for support in combinations(range(n), w):
            bits = 0
            for q in support:
                bits |= 1 << q
            x, z = (bits, 0) if pauli_type == "X" else (0, bits)
            if any(parity(x & gz) ^ parity(z & gx) for gx, gz in gens):
                continue
            packed = x | (z << n)
            if gauge.contains(packed):
                continue
            coset = stab.reduce(packed)
            if coset not in found:
                found[coset] = PauliOp.hermitian(n, x, z)
    return list(found.values())


def _logical_action_bits(op: PauliOp, structure: CodeStructure) -> tuple[int, int]:
    """(x_action, z_action) bit masks of a bare logical over the logical qubits:
    bit i of x_action is set iff the operator anticommutes with Zbar_i."""
    xa = za = 0
    for i, (xbar, zbar) in enumerate(structure.logical_pairs):
        if not op.commutes(zbar):
            xa |= 1 << i
        if not op.commutes(xbar):
            za |= 1 << i
    return xa, za


def _oriented_pairs(structure: CodeStructure) -> CodeStructure:
    """Orient CSS logical pairs as (X-type, Z-type)."""
    pairs = []
    for a, b in structure.logical_pairs:
        if a.is_z_type and b.is_x_type:
            a, b = b, a
        pairs.append((a, b))
    return CodeStructure(structure.n, structure.stabilizer_basis, tuple(pairs),
                         structure.gauge_pairs, structure.independent_generators)


@dataclass
class NogoRow:
    logical_qubit: int
    checked_type: str          # type of the single-qubit logical being bounded
    min_bare_weight: int | None
    opposite_two_local_count: int
    bound_satisfied: bool
    resolvable: bool
    witnesses: list[str]

    def to_dict(self) -> dict:
        return self.__dict__.copy()


@dataclass
class NogoReport:
    n: int
    k: int
    rows: list[NogoRow]
    support_disjoint: bool
    interpretation: str = INTERPRETATION_NOTE
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "rows": [r.to_dict() for r in self.rows],
                "support_disjoint": self.support_disjoint,
                "interpretation": self.interpretation,
                "failures": self.failures, "passed": self.passed}


def _min_type_weight_in_coset(op: PauliOp, structure: CodeStructure,
                              pauli_type: str, w_cap: int) -> int | None:
    """Lightest element of op * S that is purely of the given type.

    Exhaustive over the stabilizer coset when that is small (exact answer);
    otherwise falls back to scanning same-type Paulis of weight <= w_cap for
    coset membership, returning None when nothing that light exists.
    """
    n = op.n
    mask = (1 << n) - 1
    rows = [p.x | (p.z << n) for p in structure.stabilizer_basis]
    start = op.x | (op.z << n)
    if len(rows) <= 20:
        best = None
        cur = start
        for i in range(1 << len(rows)):
            if i:
                cur ^= rows[(i & -i).bit_length() - 1]
            x, z = cur & mask, cur >> n
            if (pauli_type == "X" and z != 0) or (pauli_type == "Z" and x != 0):
                continue
            w = (x | z).bit_count()
            if best is None or w < best:
                best = w
        return best
    stab = structure.stabilizer_span()
    for w in range(1, w_cap + 1):
        for support in combinations(range(n), w):
            bits = 0
            for q in support:
                bits |= 1 << q
            cand = bits if pauli_type == "X" else bits << n
            if stab.contains(cand ^ start):
                return w
    return None


def check_theorem(code: SubsystemCode, w_cap: int = 4,
                  structure: CodeStructure | None = None) -> NogoReport:
    """Verify the weight bound for every logical qubit and both types.

    For logical qubit a and type X: the minimum X-type weight over the coset
    Xbar_a * S must be at least the number of qualifying two-local Z-type bare
    logicals acting on a.  A minimum above w_cap makes the row unresolvable at
    this cap (reported, never a failure).  Same-type two-local bare logicals
    must also be pairwise support-disjoint.
    """
    if not is_css_two_local(code):
        raise ValueError("the bound applies to two-local CSS gauge groups")
    structure = _oriented_pairs(structure or derive_structure(code))

    two_local = {t: enumerate_bare_logicals(code, 2, t, structure) for t in "XZ"}

    rows: list[NogoRow] = []
    failures: list[str] = []
    for a in range(structure.k):
        for checked, opposite in (("X", "Z"), ("Z", "X")):
            single = structure.logical_pairs[a][0 if checked == "X" else 1]
            min_w = _min_type_weight_in_coset(single, structure, checked, w_cap)
            count = 0
            witnesses = []
            for op in two_local[opposite]:
                xa, za = _logical_action_bits(op, structure)
                act = xa if opposite == "X" else za
                if (act >> a) & 1:
                    count += 1
                    witnesses.append(op.key())
            resolvable = min_w is not None
            ok = resolvable and (min_w >= count)
            rows.append(NogoRow(a, checked, min_w, count, ok, resolvable, witnesses))
            if resolvable and not ok:
                failures.append(
                    f"logical qubit {a}: {checked}-type bare weight {min_w} < "
                    f"{count} two-local {opposite}-type bare logicals")

    disjoint = True
    for t, ops in two_local.items():
        for p, q in combinations(ops, 2):
            if (p.x | p.z) & (q.x | q.z):
                disjoint = False
                failures.append(f"same-type two-local bare logicals {p.key()} and "
                                f"{q.key()} overlap on a physical qubit")

    return NogoReport(code.n, structure.k, rows, disjoint, failures=failures)


def random_code_matrix(rng: np.random.Generator, size_max: int) -> np.ndarray:
    """Random binary matrix (each cell Bernoulli 1/2), rejected until nonzero
    with matrix-code distance >= 2."""
    while True:
        r = int(rng.integers(2, size_max + 1))
        c = int(rng.integers(2, size_max + 1))
        m = (rng.random((r, c)) < 0.5).astype(np.uint8)
        if not m.any():
            continue
        _, _, d = code_params(m)
        if d >= 2:
            return m


@dataclass
class ScanReport:
    count: int
    seed: int
    size_max: int
    w_cap: int
    all_pass: bool
    support_disjoint_everywhere: bool
    unresolved_rows: int
    weight_count_histogram: dict[str, int]
    counterexamples: list[dict]
    interpretation: str = INTERPRETATION_NOTE

    def to_dict(self) -> dict:
        return self.__dict__.copy()


def scan_matrices(size_max: int, count: int, seed: int, w_cap: int = 4,
                  strict: bool = True) -> ScanReport:
    """Run check_theorem over `count` random matrix codes with distance >= 2.

    A bound violation raises NogoViolation carrying the certificate (the
    offending matrix and report) unless strict is False.
    """
    if size_max > 6:
        raise ValueError("size_max above 6 is beyond desk scale")
    rng = np.random.default_rng(seed)
    hist: dict[str, int] = {}
    counterexamples: list[dict] = []
    unresolved = 0
    disjoint_all = True
    for _ in range(count):
        m = random_code_matrix(rng, size_max)
        code = code_from_matrix(m)
        report = check_theorem(code, w_cap)
        for row in report.rows:
            key = f"({row.min_bare_weight},{row.opposite_two_local_count})"
            hist[key] = hist.get(key, 0) + 1
            if not row.resolvable:
                unresolved += 1
        disjoint_all = disjoint_all and report.support_disjoint
        if not report.passed:
            cert = {"matrix": as_gf2(m).tolist(), "report": report.to_dict()}
            counterexamples.append(cert)
            if strict:
                raise NogoViolation(
                    "weight bound violated:\n" + json.dumps(cert, indent=2),
                    report)
    return ScanReport(count, seed, size_max, w_cap,
                      all_pass=not counterexamples,
                      support_disjoint_everywhere=disjoint_all,
                      unresolved_rows=unresolved,
                      weight_count_histogram=dict(sorted(hist.items())),
                      counterexamples=counterexamples)
