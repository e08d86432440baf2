"""Pauli-sum Hamiltonians: penalty terms, logical encodings and bath assembly.

Matrix construction uses the permutation action of a Pauli on computational
basis states: X^x Z^z |b> = (-1)^{z.b} |b XOR x>, so each term fills one
diagonal of the matrix in O(2^n).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .codes import SubsystemCode
from .paulis import PauliOp

__all__ = [
    "PauliSum",
    "ProblemSpec",
    "BathSpec",
    "DEFAULT_DENSE_CAP",
    "penalty_hamiltonian",
    "bare_encoded_hamiltonian",
    "physical_encoded_hamiltonian",
    "gauge_residues",
    "assemble_total",
    "apply_pauli",
]

DEFAULT_DENSE_CAP = 14


def _basis_signs(z: int, n: int) -> np.ndarray:
    """(-1)^{parity(z & b)} for every basis state b, as float64."""
    b = np.arange(1 << n, dtype=np.uint32)
    acc = np.zeros(1 << n, dtype=np.uint32)
    for j in range(n):
        if (z >> j) & 1:
            acc ^= (b >> j) & 1
    return 1.0 - 2.0 * acc


def apply_pauli(op: PauliOp, vec: np.ndarray) -> np.ndarray:
    """Apply a PauliOp to a state vector or a (dim, m) block of columns."""
    dim = 1 << op.n
    if vec.shape[0] != dim:
        raise ValueError(f"vector has dim {vec.shape[0]}, operator needs {dim}")
    vals = (1j ** op.phase) * _basis_signs(op.z, op.n)
    if op.phase % 2 == 0:
        vals = vals.real
    scaled = vals[:, None] * vec if vec.ndim == 2 else vals * vec
    out = np.empty(vec.shape, dtype=scaled.dtype)
    rows = np.arange(dim) ^ op.x
    out[rows] = scaled
    return out


@dataclass(frozen=True)
class PauliSum:
    """Real-weighted sum of Hermitian Paulis; terms deduplicated on (x, z)."""

    n: int
    terms: tuple[tuple[float, PauliOp], ...]

    @classmethod
    def from_terms(cls, n: int, terms) -> "PauliSum":
        acc: dict[tuple[int, int], float] = {}
        for coeff, op in terms:
            if op.n != n:
                raise ValueError(f"term {op} has {op.n} qubits, sum is on {n}")
            c = float(coeff) * op.hermitian_sign()
            key = (op.x, op.z)
            acc[key] = acc.get(key, 0.0) + c
        kept = tuple((c, PauliOp.hermitian(n, x, z)) for (x, z), c in acc.items() if c != 0.0)
        return cls(n, kept)

    @classmethod
    def zero(cls, n: int) -> "PauliSum":
        return cls(n, ())

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if self.n != other.n:
            raise ValueError("qubit count mismatch")
        return PauliSum.from_terms(self.n, list(self.terms) + list(other.terms))

    def __rmul__(self, scalar) -> "PauliSum":
        return PauliSum(self.n, tuple((scalar * c, op) for c, op in self.terms))

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1.0) * other

    @property
    def is_real(self) -> bool:
        """True iff the matrix representation has no imaginary entries."""
        return all(op.phase % 2 == 0 for _, op in self.terms)

    def max_weight(self) -> int:
        return max((op.weight for _, op in self.terms), default=0)

    def to_matrix(self, dense_cap: int = DEFAULT_DENSE_CAP) -> np.ndarray:
        """Dense matrix; real float64 when possible, else complex128.

        Refuses above dense_cap qubits: use apply() (matrix-free) instead.
        """
        if self.n > dense_cap:
            raise ValueError(
                f"{self.n} qubits exceeds dense cap {dense_cap}; "
                "use PauliSum.apply for matrix-free application")
        dim = 1 << self.n
        dtype = np.float64 if self.is_real else np.complex128
        m = np.zeros((dim, dim), dtype=dtype)
        basis = np.arange(dim)
        for c, op in self.terms:
            vals = c * (1j ** op.phase) * _basis_signs(op.z, self.n)
            if dtype is np.float64:
                vals = vals.real
            m[basis ^ op.x, basis] += vals
        return m

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix-free H @ vec for a vector or (dim, m) column block."""
        out = None
        for c, op in self.terms:
            contrib = c * apply_pauli(op, vec)
            out = contrib if out is None else out + contrib
        if out is None:
            return np.zeros_like(vec, dtype=np.float64)
        return out

    def embedded(self, n_total: int, offset: int = 0) -> "PauliSum":
        """The same operator acting on a larger register, qubits shifted by offset."""
        if offset + self.n > n_total:
            raise ValueError("embedding does not fit")
        return PauliSum.from_terms(
            n_total,
            ((c, PauliOp(n_total, op.x << offset, op.z << offset, op.phase))
             for c, op in self.terms),
        )


@dataclass(frozen=True)
class ProblemSpec:
    """Coefficients of the target Hamiltonian: X/Z fields and XX/ZZ (optionally
    YY) couplings on m logical qubits."""

    m: int
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    yy: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=float))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float))
        object.__setattr__(self, "c", np.asarray(self.c, dtype=float))
        object.__setattr__(self, "d", np.asarray(self.d, dtype=float))
        if self.yy is not None:
            object.__setattr__(self, "yy", np.asarray(self.yy, dtype=float))
        m = self.m
        if self.a.shape != (m,) or self.b.shape != (m,):
            raise ValueError("field vectors must have length m")
        for name, mat in (("c", self.c), ("d", self.d), ("yy", self.yy)):
            if mat is None:
                continue
            if mat.shape != (m, m):
                raise ValueError(f"{name} must be m x m")
            if not np.allclose(mat, mat.T):
                raise ValueError(f"{name} must be symmetric")
            if np.any(np.diag(mat) != 0):
                raise ValueError(f"{name} must have zero diagonal")

    @classmethod
    def zero(cls, m: int) -> "ProblemSpec":
        return cls(m, np.zeros(m), np.zeros(m), np.zeros((m, m)), np.zeros((m, m)))

    @classmethod
    def random(cls, m: int, rng: np.random.Generator, with_yy: bool = False) -> "ProblemSpec":
        """Coefficients uniform in [-1, 1]; couplings symmetric, zero diagonal."""
        def sym():
            u = np.triu(rng.uniform(-1, 1, (m, m)), k=1)
            return u + u.T
        return cls(m, rng.uniform(-1, 1, m), rng.uniform(-1, 1, m), sym(), sym(),
                   sym() if with_yy else None)

    def couplings(self):
        """Yield (i, j, kind, value) over nonzero upper-triangle couplings."""
        mats = [("x", self.c), ("z", self.d)]
        if self.yy is not None:
            mats.append(("y", self.yy))
        for kind, mat in mats:
            for i in range(self.m):
                for j in range(i + 1, self.m):
                    if mat[i, j] != 0.0:
                        yield i, j, kind, float(mat[i, j])

    def to_json(self) -> str:
        d = {"m": self.m, "a": self.a.tolist(), "b": self.b.tolist(),
             "c": self.c.tolist(), "d": self.d.tolist()}
        if self.yy is not None:
            d["yy"] = self.yy.tolist()
        return json.dumps(d, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ProblemSpec":
        d = json.loads(text)
        return cls(int(d["m"]), np.array(d["a"]), np.array(d["b"]),
                   np.array(d["c"]), np.array(d["d"]),
                   np.array(d["yy"]) if "yy" in d else None)


@dataclass(frozen=True)
class BathSpec:
    """A small Hamiltonian bath: its own terms plus one-local system couplings.

    couplings: (system qubit, axis in {X,Y,Z}, bath operator, strength).
    """

    n_bath: int
    h_bath: PauliSum
    couplings: tuple[tuple[int, str, PauliOp, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.h_bath.n != self.n_bath:
            raise ValueError("bath Hamiltonian size mismatch")
        for q, axis, op, _ in self.couplings:
            if axis.upper() not in "XYZ":
                raise ValueError(f"bad axis {axis}")
            if op.n != self.n_bath:
                raise ValueError("bath coupling operator size mismatch")

    @classmethod
    def single_qubit(cls, omega: float = 1.0,
                     couplings: list[tuple[int, str, float]] = ()) -> "BathSpec":
        """One bath qubit with H_B = omega * Z; couplings are (sys qubit, axis,
        strength) against X on the bath."""
        hb = PauliSum.from_terms(1, [(omega, PauliOp.single(1, 0, "Z"))])
        xb = PauliOp.single(1, 0, "X")
        return cls(1, hb, tuple((q, ax, xb, s) for q, ax, s in couplings))


def penalty_hamiltonian(code: SubsystemCode) -> PauliSum:
    """H_p: coefficient -1 on every supplied gauge generator.

    Generators must each be purely X-type or Z-type; a mixed generator breaks
    the spectral analysis this Hamiltonian is built for.
    """
    for g in code.gauge_generators:
        if not (g.is_x_type or g.is_z_type):
            raise ValueError(f"generator {g} is neither X-type nor Z-type")
    return PauliSum.from_terms(code.n, ((-1.0, g) for g in code.gauge_generators))


def logical_y(x_bar: PauliOp, z_bar: PauliOp) -> PauliOp:
    """The Hermitian logical Y = i * Xbar * Zbar."""
    p = x_bar * z_bar
    return PauliOp(p.n, p.x, p.z, (p.phase + 1) & 3)


def bare_encoded_hamiltonian(problem: ProblemSpec,
                             logicals: list[tuple[PauliOp, PauliOp]]) -> PauliSum:
    """Encode the problem with bare logicals; couplings become weight-4 terms."""
    if problem.m != len(logicals):
        raise ValueError(f"problem has m={problem.m} but {len(logicals)} logical pairs")
    n = logicals[0][0].n
    terms: list[tuple[float, PauliOp]] = []
    for i, (xb, zb) in enumerate(logicals):
        if problem.a[i] != 0.0:
            terms.append((problem.a[i], xb))
        if problem.b[i] != 0.0:
            terms.append((problem.b[i], zb))
    for i, j, kind, val in problem.couplings():
        if kind == "x":
            terms.append((val, logicals[i][0] * logicals[j][0]))
        elif kind == "z":
            terms.append((val, logicals[i][1] * logicals[j][1]))
        else:
            terms.append((val, logical_y(*logicals[i]) * logical_y(*logicals[j])))
    return PauliSum.from_terms(n, terms)


def _site(code: SubsystemCode, letter: str, label: str) -> PauliOp:
    return PauliOp.single(code.n, code.qubit(label), letter)


def physical_encoded_hamiltonian(problem: ProblemSpec, code: SubsystemCode,
                                 calibration=None, rescale: bool = True) -> PauliSum:
    """The two-local implementation on the chain code: fields on (L_i, B_i) /
    (B_i, R_i) pairs, couplings on (B_i, B_j) divided by the calibrated ratio
    of their gauge residue.  rescale=False keeps the raw coefficients (the
    ablation the rescaling claim is tested against)."""
    _check_logical_count(problem, code)
    m = problem.m
    terms: list[tuple[float, PauliOp]] = []
    for i in range(m):
        if problem.a[i] != 0.0:
            terms.append((problem.a[i],
                          _site(code, "X", f"L{i + 1}") * _site(code, "X", f"B{i + 1}")))
        if problem.b[i] != 0.0:
            terms.append((problem.b[i],
                          _site(code, "Z", f"B{i + 1}") * _site(code, "Z", f"R{i + 1}")))
    residues = {(i, j, kind): op for i, j, kind, op in gauge_residues(problem, code)}
    for i, j, kind, val in problem.couplings():
        letter = kind.upper()
        op = (_site(code, letter, f"B{i + 1}") * _site(code, letter, f"B{j + 1}"))
        if rescale:
            if calibration is None:
                raise ValueError("rescaling requested but no calibration given")
            val = val / calibration.alpha_for(residues[(i, j, kind)])
        terms.append((val, op))
    return PauliSum.from_terms(code.n, terms)


def _check_logical_count(problem: ProblemSpec, code: SubsystemCode):
    n_logical = sum(1 for lab in code.labels.values() if lab.startswith("B"))
    if problem.m != n_logical:
        raise ValueError(f"problem has m={problem.m} but the code encodes {n_logical} qubits")


def gauge_residues(problem: ProblemSpec, code: SubsystemCode,
                   logicals: list[tuple[PauliOp, PauliOp]] | None = None
                   ) -> list[tuple[int, int, str, PauliOp]]:
    """Gauge element g with (physical coupling term) = (bare product) * g,
    as an exact Pauli identity with phase +1, for every nonzero coupling.

    Membership of g in span(G) is asserted; a failure is an internal error.
    """
    from .bacon_shor import chain_logicals  # local import to avoid cycle
    _check_logical_count(problem, code)
    if logicals is None:
        logicals = chain_logicals(problem.m // 2, code)
    span = code.gauge_span()
    out = []
    for i, j, kind, _ in problem.couplings():
        letter = kind.upper()
        phys = _site(code, letter, f"B{i + 1}") * _site(code, letter, f"B{j + 1}")
        if kind == "x":
            bare = logicals[i][0] * logicals[j][0]
        elif kind == "z":
            bare = logicals[i][1] * logicals[j][1]
        else:
            bare = logical_y(*logicals[i]) * logical_y(*logicals[j])
        res = bare * phys
        if bare * res != phys:
            raise AssertionError(f"residue identity failed for coupling ({i},{j},{kind})")
        if res.hermitian_sign() != 1:
            raise AssertionError(f"residue for ({i},{j},{kind}) has sign -1")
        if not span.contains(res.x | (res.z << code.n)):
            raise AssertionError(f"residue {res} for ({i},{j},{kind}) is not in span(G)")
        out.append((i, j, kind, res))
    return out


def bath_terms(bath: BathSpec, n_sys: int) -> tuple[PauliSum, PauliSum]:
    """(H_B, H_SB) embedded on n_sys + n_bath qubits, bath in the high bits."""
    n_tot = n_sys + bath.n_bath
    hb = bath.h_bath.embedded(n_tot, offset=n_sys)
    cross = []
    for q, axis, bop, strength in bath.couplings:
        sys_op = PauliOp.single(n_tot, q, axis)
        bath_op = PauliOp(n_tot, bop.x << n_sys, bop.z << n_sys, bop.phase)
        cross.append((strength, sys_op * bath_op))
    return hb, PauliSum.from_terms(n_tot, cross)


def assemble_total(system: PauliSum, ep: float, penalty: PauliSum,
                   bath: BathSpec | None = None) -> PauliSum:
    """system + ep * penalty + H_B + H_SB on n_sys + n_bath qubits."""
    if system.n != penalty.n:
        raise ValueError("system and penalty act on different registers")
    ns = system.n
    nb = bath.n_bath if bath is not None else 0
    total = system.embedded(ns + nb) + (ep * penalty).embedded(ns + nb)
    if bath is not None:
        hb, hsb = bath_terms(bath, ns)
        total = total + hb + hsb
    return total
