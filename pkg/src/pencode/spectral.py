"""Exact diagonalization of penalty Hamiltonians and the spectral checks:
ground-space structure, gauge-expectation calibration, one-local error
detection, and the sector decomposition behind the uniqueness argument.

Ground-space quantities never materialize the projector: with V the
(dim x deg) block of ground eigenvectors, ||P A P - alpha P|| equals
||V'AV - alpha I|| on the small block, since V is an isometry.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .codes import CodeStructure, SpanGF2, SubsystemCode, derive_structure
from .hamiltonians import DEFAULT_DENSE_CAP, PauliSum, apply_pauli
from .paulis import PauliOp

__all__ = [
    "SpectralResult",
    "PenaltyCalibration",
    "Lemma1Error",
    "CalibrationError",
    "ErrorDetectionError",
    "SectorAnalysisError",
    "diagonalize",
    "verify_lemma1",
    "calibrate",
    "error_detection_check",
    "sector_analysis",
    "effective_difference_norm",
    "ground_offblock_norm",
]


class Lemma1Error(Exception):
    pass


class CalibrationError(Exception):
    pass


class ErrorDetectionError(Exception):
    pass


class SectorAnalysisError(Exception):
    pass


@dataclass
class SpectralResult:
    """Full eigendecomposition with the ground space singled out."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    ground_energy: float
    ground_degeneracy: int
    gap: float
    degeneracy_tol: float
    ambiguous: bool

    @property
    def ground_vectors(self) -> np.ndarray:
        return self.vectors[:, : self.ground_degeneracy]

    @property
    def ground_projector(self) -> np.ndarray:
        v = self.ground_vectors
        return v @ v.conj().T

    def ground_block(self, h: PauliSum | PauliOp) -> np.ndarray:
        """V' H V on the ground block (deg x deg)."""
        v = self.ground_vectors
        hv = apply_pauli(h, v) if isinstance(h, PauliOp) else h.apply(v)
        return v.conj().T @ hv

    def level_groups(self) -> list[tuple[float, np.ndarray]]:
        """Distinct eigenvalues with their eigenvector blocks, tolerance-grouped."""
        w = self.eigenvalues
        tol = self.degeneracy_tol * max(1.0, float(w[-1] - w[0]))
        groups = []
        start = 0
        for i in range(1, len(w) + 1):
            if i == len(w) or w[i] - w[i - 1] > tol:
                groups.append((float(np.mean(w[start:i])), self.vectors[:, start:i]))
                start = i
        return groups


def diagonalize(h: PauliSum | np.ndarray, degeneracy_tol: float = 1e-9,
                dense_cap: int = DEFAULT_DENSE_CAP) -> SpectralResult:
    """Hermitian eigendecomposition; the ground space collects eigenvalues
    within degeneracy_tol (relative to the spectral range) of the minimum.

    Flags the result as ambiguous when the gap above the ground space is
    within 10x of the grouping tolerance.
    """
    mat = h.to_matrix(dense_cap) if isinstance(h, PauliSum) else h
    w, v = np.linalg.eigh(mat)
    spread = max(1.0, float(w[-1] - w[0]))
    tol = degeneracy_tol * spread
    deg = int(np.sum(w <= w[0] + tol))
    gap = float(w[deg] - w[0]) if deg < len(w) else np.inf
    return SpectralResult(
        eigenvalues=w,
        vectors=v,
        ground_energy=float(w[0]),
        ground_degeneracy=deg,
        gap=gap,
        degeneracy_tol=degeneracy_tol,
        ambiguous=bool(gap < 10 * tol),
    )


@dataclass
class PenaltyCalibration:
    """Ground-space expectation alpha per gauge element, keyed by Pauli string."""

    code_id: str
    alphas: dict[str, float]
    floor: float = 1e-6

    def alpha_for(self, op: PauliOp) -> float:
        key = op.key()
        if key not in self.alphas:
            raise CalibrationError(f"no calibrated alpha for gauge element {key}")
        a = self.alphas[key]
        if abs(a) < self.floor:
            raise CalibrationError(f"alpha for {key} is vanishing: {a}")
        return a

    def to_json(self) -> str:
        return json.dumps(
            {"code_id": self.code_id, "floor": self.floor,
             "alphas": {k: self.alphas[k] for k in sorted(self.alphas)}},
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "PenaltyCalibration":
        d = json.loads(text)
        return cls(d["code_id"], dict(d["alphas"]), float(d.get("floor", 1e-6)))


@dataclass
class Lemma1Report:
    hypothesis_ok: bool
    expected_degeneracy: int
    degeneracy: int
    stabilizer_residuals: dict[str, float]
    alphas: dict[str, float]
    proportionality_residuals: dict[str, float]
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "hypothesis_ok": self.hypothesis_ok,
            "expected_degeneracy": self.expected_degeneracy,
            "degeneracy": self.degeneracy,
            "stabilizer_residuals": self.stabilizer_residuals,
            "alphas": self.alphas,
            "proportionality_residuals": self.proportionality_residuals,
            "failures": self.failures,
            "passed": self.passed,
        }


def _spans_equal(a: SpanGF2, b: SpanGF2) -> bool:
    return a.rank == b.rank and all(b.contains(r) for r in a)


def verify_lemma1(code: SubsystemCode, penalty: PauliSum, result: SpectralResult,
                  tol: float = 1e-10, structure: CodeStructure | None = None,
                  strict: bool = True) -> Lemma1Report:
    """Check the three penalty-spectrum statements against a diagonalization:
    stabilizers fix the ground space, the degeneracy is 2^k, and each
    generator acts on the ground space as a scalar.

    If the penalty terms do not span the code's gauge group the hypothesis is
    violated: the report flags it and failures are not raised as errors.
    """
    structure = structure or derive_structure(code)
    pen_span = SpanGF2((op.x | (op.z << code.n)) for _, op in penalty.terms)
    hypothesis_ok = _spans_equal(code.gauge_span(), pen_span)

    v = result.ground_vectors
    stab_res = {}
    failures = []
    for s in structure.stabilizer_basis:
        r = float(np.linalg.norm(apply_pauli(s, v) - v, 2))
        stab_res[s.key()] = r
        if r > tol:
            failures.append(f"stabilizer {s.key()} does not fix the ground space "
                            f"(residual {r:.3e})")

    expected = 2 ** structure.k
    if result.ground_degeneracy != expected:
        failures.append(f"ground degeneracy {result.ground_degeneracy} != 2^k = {expected}")

    alphas = {}
    prop_res = {}
    eye = np.eye(result.ground_degeneracy)
    for _, g in penalty.terms:
        block = result.ground_block(g)
        a = float(np.real(np.trace(block)) / result.ground_degeneracy)
        r = float(np.linalg.norm(block - a * eye, 2))
        alphas[g.key()] = a
        prop_res[g.key()] = r
        if r > tol:
            failures.append(f"P g P not proportional to P for {g.key()} "
                            f"(residual {r:.3e})")

    report = Lemma1Report(hypothesis_ok, expected, result.ground_degeneracy,
                          stab_res, alphas, prop_res, failures)
    if strict and hypothesis_ok and failures:
        raise Lemma1Error("; ".join(failures))
    return report


def calibrate(code: SubsystemCode, result: SpectralResult,
              requested: list[PauliOp], code_id: str = "",
              floor: float = 1e-6, tol: float = 1e-10) -> PenaltyCalibration:
    """alpha = tr(P g P)/tr(P) for each requested gauge element.

    Every element must lie in span(G); the proportionality residual is
    verified, and a vanishing alpha raises (the rescaling would blow up).
    """
    span = code.gauge_span()
    eye = np.eye(result.ground_degeneracy)
    alphas: dict[str, float] = {}
    for op in requested:
        if not span.contains(op.x | (op.z << code.n)):
            raise CalibrationError(f"{op.key()} is not in the gauge span")
        block = result.ground_block(op)
        a = float(np.real(np.trace(block)) / result.ground_degeneracy)
        r = float(np.linalg.norm(block - a * eye, 2))
        if r > tol:
            raise CalibrationError(f"P g P not proportional to P for {op.key()} "
                                   f"(residual {r:.3e})")
        if abs(a) < floor:
            raise CalibrationError(f"alpha for {op.key()} is vanishing: {a}")
        alphas[op.key()] = a
    return PenaltyCalibration(code_id, alphas, floor)


@dataclass
class ErrorDetectionReport:
    max_residual: float
    worst_sigma: str
    residuals: dict[str, float]

    def to_dict(self) -> dict:
        return {"max_residual": self.max_residual, "worst_sigma": self.worst_sigma,
                "residuals": self.residuals}


def error_detection_check(result: SpectralResult, n: int,
                          tol: float = 1e-10, strict: bool = True) -> ErrorDetectionReport:
    """||P sigma P|| over all 3n one-local Paulis; all must vanish for an
    error-detecting ground space."""
    residuals = {}
    for q in range(n):
        for letter in "XYZ":
            sigma = PauliOp.single(n, q, letter)
            residuals[sigma.key()] = float(np.linalg.norm(result.ground_block(sigma), 2))
    worst = max(residuals, key=residuals.get)
    report = ErrorDetectionReport(residuals[worst], worst, residuals)
    if strict and report.max_residual > tol:
        raise ErrorDetectionError(
            f"one-local {worst} is not detected: ||P s P|| = {report.max_residual:.3e}")
    return report


def ground_offblock_norm(result: SpectralResult, h: PauliSum | PauliOp) -> float:
    """||(1-P) H P||, which equals ||[H, P]|| for Hermitian H."""
    v = result.ground_vectors
    hv = apply_pauli(h, v) if isinstance(h, PauliOp) else h.apply(v)
    return float(np.linalg.norm(hv - v @ (v.conj().T @ hv), 2))


def effective_difference_norm(result: SpectralResult, h1: PauliSum, h2: PauliSum) -> float:
    """||P h1 P - P h2 P|| via the ground block."""
    return float(np.linalg.norm(result.ground_block(h1 - h2), 2))


@dataclass
class SectorReport:
    n_sectors: int
    sector_dims: list[int]
    z_labels: int
    s_labels: int
    block_diagonal: bool
    off_diagonals_nonpositive: bool
    irreducible: bool
    unique_positive_ground: bool
    ground_in_plus_sectors: bool
    identical_blocks_across_z: bool
    ground_energies: dict[str, float]
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["passed"] = self.passed
        return d


def sector_analysis(code: SubsystemCode, penalty: PauliSum,
                    structure: CodeStructure | None = None,
                    atol: float = 1e-12, strict: bool = True) -> SectorReport:
    """Decompose H_p over joint eigenspaces of the Z-type bare logicals and
    Z-type stabilizers and verify the structure the uniqueness argument needs:
    block-diagonality, non-positive off-diagonal entries, connectivity of each
    block, a unique strictly-positive ground state per block, global minima
    only in the all-(+1) stabilizer sectors, and z-independence of the blocks.
    """
    structure = structure or derive_structure(code)
    n = code.n
    z_logicals = [p[1] for p in structure.logical_pairs]
    x_logicals = [p[0] for p in structure.logical_pairs]
    z_stabs = [s for s in structure.stabilizer_basis if s.is_z_type]
    if not all(zl.is_z_type for zl in z_logicals):
        raise ValueError("sector analysis needs Z-type logical representatives")
    if not all(xl.is_x_type for xl in x_logicals):
        raise ValueError("sector analysis needs X-type logical representatives")

    h = penalty.to_matrix()
    if np.iscomplexobj(h):
        raise ValueError("penalty Hamiltonian must be real in the computational basis")
    dim = h.shape[0]

    basis = np.arange(dim)
    zbits = np.zeros((len(z_logicals), dim), dtype=np.uint8)
    for i, zl in enumerate(z_logicals):
        for j in range(n):
            if (zl.z >> j) & 1:
                zbits[i] ^= ((basis >> j) & 1).astype(np.uint8)
    sbits = np.zeros((len(z_stabs), dim), dtype=np.uint8)
    for i, zs in enumerate(z_stabs):
        for j in range(n):
            if (zs.z >> j) & 1:
                sbits[i] ^= ((basis >> j) & 1).astype(np.uint8)

    sectors: dict[tuple, np.ndarray] = {}
    keys = [tuple(zbits[:, b]) + tuple(sbits[:, b]) for b in range(dim)]
    for b, key in enumerate(keys):
        sectors.setdefault(key, []).append(b)
    sectors = {k: np.array(v) for k, v in sectors.items()}

    def label(key) -> str:
        z = "".join("+" if t == 0 else "-" for t in key[: len(z_logicals)])
        s = "".join("+" if t == 0 else "-" for t in key[len(z_logicals):])
        return f"z={z} s={s}"

    failures: list[str] = []

    # (a) block diagonality
    rr, cc = np.nonzero(np.abs(h) > atol)
    sec_id = np.array([keys[b] for b in range(dim)], dtype=object)
    block_diag = all(keys[r] == keys[c] for r, c in zip(rr, cc))
    if not block_diag:
        bad = next((r, c) for r, c in zip(rr, cc) if keys[r] != keys[c])
        failures.append(f"nonzero entry between sectors {label(keys[bad[0]])} "
                        f"and {label(keys[bad[1]])}")

    # (b) non-positive off-diagonal entries (global property of -X-type terms)
    off = h.copy()
    np.fill_diagonal(off, 0.0)
    nonpos = bool(np.max(off) <= atol)
    if not nonpos:
        r, c = np.unravel_index(np.argmax(off), off.shape)
        failures.append(f"positive off-diagonal entry at sector {label(keys[r])}")

    # (c,d) per-sector: connectivity, unique strictly positive ground state
    irreducible = True
    unique_positive = True
    ground_energies: dict[str, float] = {}
    sector_min: dict[tuple, tuple] = {}
    for key, states in sectors.items():
        block = h[np.ix_(states, states)]
        m = len(states)
        adj = np.abs(block) > atol
        np.fill_diagonal(adj, False)
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in np.nonzero(adj[i])[0]:
                if j not in seen:
                    seen.add(int(j))
                    stack.append(int(j))
        if len(seen) != m:
            irreducible = False
            failures.append(f"sector {label(key)} is reducible "
                            f"({len(seen)} of {m} states reachable)")
        w, v = np.linalg.eigh(block)
        ground_energies[label(key)] = float(w[0])
        sector_min[key] = (float(w[0]), key[len(z_logicals):])
        if m > 1 and w[1] - w[0] < 1e-9:
            unique_positive = False
            failures.append(f"sector {label(key)} ground state is degenerate")
        g = v[:, 0]
        g = g * np.sign(g[np.argmax(np.abs(g))])
        if np.min(g) <= 1e-12:
            unique_positive = False
            failures.append(f"sector {label(key)} ground state is not strictly positive")

    # (e) global minima sit in the all-(+1) stabilizer sectors, and within each
    # z the minimum is at s = +1
    e0 = min(e for e, _ in sector_min.values())
    plus = tuple([0] * len(z_stabs))
    ground_plus = True
    for key, (e, s_key) in sector_min.items():
        if e <= e0 + 1e-9 and s_key != plus:
            ground_plus = False
            failures.append(f"global ground state found in sector {label(key)}")
    by_z: dict[tuple, dict[tuple, float]] = {}
    for key, (e, s_key) in sector_min.items():
        by_z.setdefault(key[: len(z_logicals)], {})[s_key] = e
    for z_key, table in by_z.items():
        e_plus = table[plus]
        for s_key, e in table.items():
            if s_key != plus and e <= e_plus + 1e-9:
                ground_plus = False
                failures.append(f"sector z-part {z_key}: s={s_key} is not above s=+1")

    # identical blocks across z at fixed s, via the explicit X-logical shift
    identical = True
    ref_z = tuple([0] * len(z_logicals))
    for key, states in sectors.items():
        z_key, s_key = key[: len(z_logicals)], key[len(z_logicals):]
        if z_key == ref_z:
            continue
        shift = 0
        for i, bit in enumerate(z_key):
            if bit:
                shift ^= x_logicals[i].x
        ref_states = sectors[ref_z + s_key]
        mapped = ref_states ^ shift
        if sorted(mapped.tolist()) != sorted(states.tolist()):
            identical = False
            failures.append(f"X-logical shift does not map onto sector {label(key)}")
            continue
        if not np.allclose(h[np.ix_(mapped, mapped)],
                           h[np.ix_(ref_states, ref_states)], atol=1e-12):
            identical = False
            failures.append(f"sector {label(key)} block differs from its z=+..+ twin")

    report = SectorReport(
        n_sectors=len(sectors),
        sector_dims=sorted(len(v) for v in sectors.values()),
        z_labels=2 ** len(z_logicals),
        s_labels=2 ** len(z_stabs),
        block_diagonal=block_diag,
        off_diagonals_nonpositive=nonpos,
        irreducible=irreducible,
        unique_positive_ground=unique_positive,
        ground_in_plus_sectors=ground_plus,
        identical_blocks_across_z=identical,
        ground_energies=ground_energies,
        failures=failures,
    )
    if strict and failures:
        raise SectorAnalysisError("; ".join(failures))
    return report
