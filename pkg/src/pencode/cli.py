"""Command-line entry point.

Subcommands: code, params, calibrate, evolve, nogo.  Every run writes its
reports as JSON under --out plus a manifest; deterministic commands reproduce
their reports byte for byte.  Exit codes: 0 success, 1 a numerically checked
claim failed, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .bacon_shor import (chain_code, chain_gauge_pairs, chain_logicals,
                         chain_matrix, chain_stabilizers, code_from_matrix,
                         code_params)
from .codes import WeightCapExceeded, code_distance, derive_structure
from .dynamics import (EvolutionConfig, decoupling_experiment,
                       encoded_computation_fidelity)
from .gf2 import parse_binary_matrix
from .hamiltonians import (BathSpec, ProblemSpec, gauge_residues,
                           penalty_hamiltonian)
from .nogo import NogoViolation, scan_matrices
from .spectral import (CalibrationError, ErrorDetectionError, Lemma1Error,
                       PenaltyCalibration, SectorAnalysisError, calibrate,
                       diagonalize, error_detection_check, sector_analysis,
                       verify_lemma1)

CHAIN_RANGE_NOTE = ("chain generator families X_L_i X_L_{i+1} and "
                    "Z_R_i Z_R_{i+1} run over 1 <= i <= 2k-1 (open chain, "
                    "no periodic wrap)")


class ConfigError(Exception):
    pass


def _write(out_dir: Path, name: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(text)
    return path


def _write_json(out_dir: Path, name: str, payload) -> Path:
    return _write(out_dir, name, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _manifest(out_dir: Path, command: str, config: dict, outputs: list[Path],
              t0: float, seeds=()) -> None:
    config = {k: v for k, v in config.items()
              if k != "fn" and isinstance(v, (str, int, float, bool, list, type(None)))}
    _write(out_dir, "manifest.json", json.dumps({
        "command": command,
        "config": config,
        "version": __version__,
        "seeds": list(seeds),
        "outputs": [p.name for p in outputs],
        "wall_clock_s": round(time.time() - t0, 3),
    }, indent=2, sort_keys=True) + "\n")


def _load_matrix(path: str) -> np.ndarray:
    try:
        return parse_binary_matrix(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read matrix file {path}: {exc}") from exc


def _resolve_code(args):
    if args.k is not None:
        if args.k < 1:
            raise ConfigError("--k must be >= 1")
        return chain_code(args.k), chain_matrix(args.k), args.k
    matrix = _load_matrix(args.matrix)
    return code_from_matrix(matrix), matrix, None


def cmd_code(args) -> int:
    t0 = time.time()
    out = Path(args.out)
    code, matrix, k = _resolve_code(args)
    structure = derive_structure(code)
    n, k_matrix, d_formula = code_params(matrix)
    try:
        d_enum = code_distance(code, args.w_max, structure)
    except WeightCapExceeded:
        d_enum = None
    report = {
        "n": code.n,
        "k_logical": structure.k,
        "s": structure.s,
        "g": structure.g,
        "d_formula": d_formula,
        "d_enumerated": d_enum,
        "w_max": args.w_max,
        "generator_count": len(code.gauge_generators),
        "generators": [g.key() for g in code.gauge_generators],
        "labels": {str(q): lab for q, lab in sorted(code.labels.items())},
    }
    if k is not None:
        report["notes"] = [CHAIN_RANGE_NOTE]
    outputs = [
        _write(out, "code.json", code.to_json() + "\n"),
        _write_json(out, "structure.json", report),
    ]
    _manifest(out, "code", vars(args), outputs, t0)
    print(f"[[{n},{k_matrix},{d_formula}]]  n={code.n} k={structure.k} "
          f"s={structure.s} g={structure.g} d={d_enum or d_formula}")
    return 0


def cmd_params(args) -> int:
    t0 = time.time()
    out = Path(args.out)
    _, matrix, _ = _resolve_code(args)
    n, k, d = code_params(matrix)
    outputs = [_write_json(out, "params.json", {"n": n, "k": k, "d": d})]
    _manifest(out, "params", vars(args), outputs, t0)
    print(f"[[{n},{k},{d}]]")
    return 0


def _chain_calibration(k: int, code, result, tol: float):
    """Calibrate the generators plus every pairwise coupling residue."""
    m = 2 * k
    ones = np.ones((m, m)) - np.eye(m)
    probe = ProblemSpec(m, np.zeros(m), np.zeros(m), ones, ones, ones)
    residues = [op for _, _, _, op in gauge_residues(probe, code)]
    requested = list(code.gauge_generators) + residues
    return calibrate(code, result, requested, code_id=f"chain-k{k}", tol=tol)


def cmd_calibrate(args) -> int:
    t0 = time.time()
    out = Path(args.out)
    if args.k < 1:
        raise ConfigError("--k must be >= 1")
    code = chain_code(args.k)
    if code.n > args.dense_cap:
        raise ConfigError(f"k={args.k} needs {code.n} qubits, above the dense "
                          f"cap of {args.dense_cap}")
    penalty = penalty_hamiltonian(code)
    result = diagonalize(penalty, args.degeneracy_tol, args.dense_cap)
    structure = derive_structure(code)
    lemma = verify_lemma1(code, penalty, result, tol=args.tol, structure=structure)
    detection = error_detection_check(result, code.n, tol=args.tol)
    cal = _chain_calibration(args.k, code, result, args.tol)
    outputs = [
        _write(out, "calibration.json", cal.to_json() + "\n"),
        _write_json(out, "lemma1_report.json", lemma.to_dict()),
        _write_json(out, "error_detection.json", detection.to_dict()),
        _write_json(out, "spectrum.json", {
            "ground_energy": result.ground_energy,
            "ground_degeneracy": result.ground_degeneracy,
            "gap": result.gap,
        }),
    ]
    if args.sectors:
        sec = sector_analysis(code, penalty, structure)
        outputs.append(_write_json(out, "sector_report.json", sec.to_dict()))
    _manifest(out, "calibrate", vars(args), outputs, t0)
    print(f"k={args.k}: degeneracy={result.ground_degeneracy} gap={result.gap:.6f} "
          f"alpha[{code.gauge_generators[0].key()}]="
          f"{cal.alphas[code.gauge_generators[0].key()]:.4f}")
    return 0


def _load_calibration(args, code, k) -> PenaltyCalibration:
    if args.calibration:
        path = Path(args.calibration)
        if not path.exists():
            raise ConfigError(f"calibration file not found: {path}")
        return PenaltyCalibration.from_json(path.read_text())
    penalty = penalty_hamiltonian(code)
    result = diagonalize(penalty, args.degeneracy_tol, args.dense_cap)
    return _chain_calibration(k, code, result, args.tol)


def cmd_evolve(args) -> int:
    t0 = time.time()
    out = Path(args.out)
    if args.k < 1:
        raise ConfigError("--k must be >= 1")
    if any(e <= 0 for e in args.ep):
        raise ConfigError("--ep values must be positive")
    code = chain_code(args.k)
    n_total = code.n + (1 if args.bath else 0)
    if n_total > args.dense_cap:
        raise ConfigError(f"evolution needs {n_total} qubits, above the dense "
                          f"cap of {args.dense_cap}")
    calibration = _load_calibration(args, code, args.k)

    bath = BathSpec.single_qubit(
        omega=args.bath_omega,
        couplings=[(code.qubit("B1"), "X", args.bath_strength)]) if args.bath else None

    decoupling = []
    fidelity = []
    failed = False
    for seed in args.seeds:
        rng = np.random.default_rng(seed)
        if args.problem:
            problem = ProblemSpec.from_json(Path(args.problem).read_text())
        else:
            problem = ProblemSpec.random(2 * args.k, rng)
        cfg = EvolutionConfig(total_time=args.T, steps=args.steps,
                              ep_values=tuple(sorted(args.ep)),
                              schedule=((0.0, problem),), bath=bath, seed=seed)
        rep = decoupling_experiment(cfg, code, calibration)
        decoupling.append(rep.to_dict())
        failed = failed or not rep.bound_satisfied
        cfg_nobath = EvolutionConfig(total_time=args.T, steps=args.steps,
                                     ep_values=tuple(sorted(args.ep)),
                                     schedule=((0.0, problem),), bath=None, seed=seed)
        fid = encoded_computation_fidelity(cfg_nobath, code, calibration,
                                           rescale=not args.no_rescale)
        fidelity.append(fid.to_dict())

    outputs = [
        _write_json(out, "decoupling.json", {"seeds": list(args.seeds),
                                             "reports": decoupling}),
        _write_json(out, "fidelity.json", {"seeds": list(args.seeds),
                                           "reports": fidelity}),
    ]
    if args.emit_csv:
        lines = ["seed,ep,lhs,rhs_bound,k_bound"]
        for rep in decoupling:
            for row in rep["rows"]:
                lines.append(f"{rep['seed']},{row['ep']},{row['lhs']!r},"
                             f"{row['rhs_bound']!r},{row['k_bound']!r}")
        outputs.append(_write(out, "decoupling.csv", "\n".join(lines) + "\n"))
        lines = ["seed,rescaled,ep,infidelity"]
        for rep in fidelity:
            for row in rep["rows"]:
                lines.append(f"{rep['seed']},{int(rep['rescaled'])},"
                             f"{row['ep']},{row['infidelity']!r}")
        outputs.append(_write(out, "fidelity.csv", "\n".join(lines) + "\n"))
    _manifest(out, "evolve", vars(args), outputs, t0, seeds=args.seeds)

    for rep in decoupling:
        print(f"seed {rep['seed']}: lhs=" +
              " ".join(f"{row['lhs']:.3e}" for row in rep["rows"]) +
              f"  slope={rep['loglog_slope']:.3f} monotone={rep['monotone']} "
              f"bound={'ok' if rep['bound_satisfied'] else 'VIOLATED'}")
    return 1 if failed else 0


def cmd_nogo(args) -> int:
    t0 = time.time()
    out = Path(args.out)
    if args.size_max > 6:
        raise ConfigError("--size-max above 6 is beyond desk scale")
    try:
        report = scan_matrices(args.size_max, args.count, args.seed,
                               w_cap=args.w_cap, strict=False)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    outputs = [_write_json(out, "nogo_scan.json", report.to_dict())]
    _manifest(out, "nogo", vars(args), outputs, t0, seeds=[args.seed])
    print(f"scanned {report.count} matrices (size<={args.size_max}, seed={args.seed}): "
          f"{'all pass' if report.all_pass else 'COUNTEREXAMPLE FOUND'}, "
          f"support disjoint: {report.support_disjoint_everywhere}")
    return 0 if report.all_pass and report.support_disjoint_everywhere else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pencode",
                                description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, k_or_matrix=False):
        sp.add_argument("--out", default="out", help="output directory")
        sp.add_argument("--dense-cap", type=int, default=14,
                        help="largest qubit count for dense matrices")
        sp.add_argument("--tol", type=float, default=1e-10,
                        help="residual tolerance for spectral checks")
        sp.add_argument("--degeneracy-tol", type=float, default=1e-9)
        if k_or_matrix:
            grp = sp.add_mutually_exclusive_group(required=True)
            grp.add_argument("--k", type=int, help="chain-family parameter")
            grp.add_argument("--matrix", help="binary matrix file (0/1 rows)")

    sp = sub.add_parser("code", help="build a code and report its structure")
    common(sp, k_or_matrix=True)
    sp.add_argument("--w-max", type=int, default=4,
                    help="distance enumeration cap")
    sp.set_defaults(fn=cmd_code)

    sp = sub.add_parser("params", help="matrix-formula code parameters only")
    common(sp, k_or_matrix=True)
    sp.set_defaults(fn=cmd_params)

    sp = sub.add_parser("calibrate",
                        help="diagonalize the penalty and calibrate alphas")
    common(sp)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--sectors", action="store_true",
                    help="also run the sector decomposition report")
    sp.set_defaults(fn=cmd_calibrate)

    sp = sub.add_parser("evolve", help="decoupling and fidelity experiments")
    common(sp)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--ep", type=float, nargs="+",
                    default=[5.0, 10.0, 20.0, 40.0, 80.0])
    sp.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    sp.add_argument("--T", type=float, default=1.0)
    sp.add_argument("--steps", type=int, default=64)
    sp.add_argument("--problem", help="ProblemSpec JSON file (else seeded random)")
    sp.add_argument("--calibration", help="calibration JSON (else computed)")
    sp.add_argument("--bath", action=argparse.BooleanOptionalAction, default=True)
    sp.add_argument("--bath-strength", type=float, default=0.1)
    sp.add_argument("--bath-omega", type=float, default=1.0)
    sp.add_argument("--no-rescale", action="store_true",
                    help="ablation: skip the coupling rescaling")
    sp.add_argument("--emit-csv", action="store_true")
    sp.set_defaults(fn=cmd_evolve)

    sp = sub.add_parser("nogo", help="scan random matrix codes for bound violations")
    common(sp)
    sp.add_argument("--size-max", type=int, default=5)
    sp.add_argument("--count", type=int, default=200)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--w-cap", type=int, default=4)
    sp.set_defaults(fn=cmd_nogo)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (Lemma1Error, ErrorDetectionError, SectorAnalysisError,
            CalibrationError, NogoViolation) as exc:
        print(f"claim violated: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
