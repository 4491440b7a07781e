"""Command-line front end.

Exit codes: 0 success, 1 invalid configuration, 2 quadrature did not
converge (payload still written), 3 a verification check failed.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import fock, states
from .dispersion import GammaModel, constraint_report, dispersion_curve
from .distributions import KINDS, DistributionSpec
from .emit import dumps_csv, dumps_json
from .errors import FuzzyLadderError, QuadratureNonConvergence
from .moments import (
    DEFAULT_REL_TOL,
    MAX_PANELS,
    commutation_function,
    compare_uniform_published,
    moments,
    moments_quadrature,
)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_QUADRATURE = 2
EXIT_VERIFY = 3

COMMANDS = ("moments", "commutator", "vacuum", "spectrum", "wavefunction", "coherent",
            "dispersion", "verify")


@dataclass(frozen=True)
class RunConfig:
    dist: str = "lorentzian"
    zeta: float = 0.3
    table: Optional[str] = None
    dim: Optional[int] = None
    rel_tol: float = DEFAULT_REL_TOL
    tail_tol: float = fock.DEFAULT_TAIL_TOL
    format: str = "json"
    out: Optional[str] = None
    parallel: bool = False
    method: str = "auto"
    max_panels: int = MAX_PANELS
    compare_paper: bool = False
    levels: int = 8
    n: int = 0
    z: str = "1"
    drive: float = 0.0
    sharp: bool = False
    coherent_method: str = "displaced"
    grid: str = "-5:5:1001"
    omega_grid: str = "0.05:10:200"
    gamma_model: str = "2,2,1"
    suite: str = "all"
    deterministic: bool = True

    def __post_init__(self):
        if self.dist not in KINDS:
            raise ValueError(f"--dist must be one of {', '.join(KINDS)}")
        if self.format not in ("json", "csv"):
            raise ValueError("--format must be json or csv")
        if self.dist == "tabulated" and not self.table:
            raise ValueError("--dist tabulated needs --table PATH")
        if self.dim is not None and self.dim < 3:
            raise ValueError("--dim must be at least 3")
        if not 1e-13 <= self.rel_tol <= 1e-3:
            raise ValueError("--rel-tol must lie in [1e-13, 1e-3]")
        if not self.tail_tol > 0:
            raise ValueError("--tail-tol must be positive")
        if self.levels < 1:
            raise ValueError("--levels must be positive")

    def spec(self) -> DistributionSpec:
        if self.dist == "delta":
            return DistributionSpec.delta()
        if self.dist == "tabulated":
            return DistributionSpec.from_csv(self.table)
        return DistributionSpec(self.dist, float(self.zeta))

    def complex_z(self) -> complex:
        try:
            return complex(str(self.z).replace(" ", "").replace("i", "j"))
        except ValueError:
            raise ValueError(f"--z must be a complex number such as 1+1j, got {self.z!r}") from None


_FIELDS = {f.name for f in dataclasses.fields(RunConfig)}


class _Output:
    """Collects the text a command produces; written once at the end."""

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg

    def emit(self, payload, csv_header=None, csv_rows=None):
        if self.cfg.format == "csv" and csv_header is not None:
            text = dumps_csv(csv_header, csv_rows)
        else:
            text = dumps_json(payload)
        if self.cfg.out:
            with open(self.cfg.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _coefficients(cfg: RunConfig):
    spec = cfg.spec()
    if cfg.method == "quadrature" or (cfg.method == "auto" and spec.kind in ("gaussian", "tabulated")):
        m = moments_quadrature(spec, cfg.rel_tol, max_panels=cfg.max_panels)
    else:
        m = moments(spec, cfg.method, cfg.rel_tol)
    return m, commutation_function(m)


def _dim(cfg, coeffs):
    return cfg.dim if cfg.dim is not None else max(fock.DEFAULT_DIM, fock.auto_dim(coeffs, cfg.tail_tol))


# ---------------------------------------------------------------------------
# commands


def cmd_moments(cfg: RunConfig, out: _Output) -> int:
    try:
        m, c = _coefficients(cfg)
    except QuadratureNonConvergence as exc:
        payload = {"dist": cfg.dist, "zeta": cfg.zeta, "error": str(exc),
                   "partial_value": exc.value, "achieved_error": exc.achieved_error}
        out.emit(payload)
        return EXIT_QUADRATURE
    payload = {"dist": cfg.dist, "zeta": 0.0 if cfg.dist == "delta" else cfg.zeta,
               "I0": m.I0, "I1": m.I1, "C": c.C, "method": m.method, "est_error": m.est_error}
    if cfg.compare_paper:
        if cfg.dist != "uniform":
            raise ValueError("--compare-paper applies to --dist uniform only")
        cmp = compare_uniform_published(cfg.zeta, cfg.rel_tol)
        payload.update({
            "definitional": cmp["definitional"],
            "quadrature": cmp["quadrature"],
            "paper_eq20": cmp["published"],
            "discrepancy": cmp["discrepancy"],
            "flagged": cmp["flagged"],
        })
    header = ["I0_re", "I0_im", "I1_re", "I1_im", "C", "est_error"]
    row = [m.I0.real, m.I0.imag, m.I1.real, m.I1.imag, c.C, m.est_error]
    out.emit(payload, header, [row])
    return EXIT_OK


def cmd_commutator(cfg: RunConfig, out: _Output) -> int:
    m, c = _coefficients(cfg)
    dim = cfg.dim or fock.DEFAULT_DIM
    ls = fock.fuzzy_ladder(dim, c)
    block = fock.interior(fock.commutator(ls.a_fuzzy, ls.a_fuzzy_dag), 1)
    dev = float(np.max(np.abs(block - c.C * np.eye(block.shape[0]))))
    payload = {"dist": cfg.dist, "u": c.u, "v": c.v, "C": c.C,
               "identity_residual": c.identity_residual, "sub_bosonic": c.sub_bosonic,
               "dim": dim, "interior_deviation": dev}
    out.emit(payload, ["C", "u_re", "u_im", "v_re", "v_im", "interior_deviation"],
             [[c.C, c.u.real, c.u.imag, c.v.real, c.v.imag, dev]])
    return EXIT_OK


def cmd_vacuum(cfg: RunConfig, out: _Output) -> int:
    _, c = _coefficients(cfg)
    dim = _dim(cfg, c)
    vac = fock.fuzzy_vacuum(c, dim, cfg.tail_tol)
    ls = fock.fuzzy_ladder(dim, c)
    payload = {
        "dist": cfg.dist, "dim": dim, "C": c.C,
        "overlap_with_sharp_vacuum": abs(vac.coeffs[0]) ** 2,
        "decay_ratio": fock.vacuum_decay_ratio(c),
        "annihilation_residual": float(np.linalg.norm(ls.a_fuzzy @ vac.coeffs)),
        "coeffs": vac.coeffs,
    }
    rows = [[j, a.real, a.imag] for j, a in enumerate(vac.coeffs)]
    out.emit(payload, ["n", "re", "im"], rows)
    return EXIT_OK


def cmd_spectrum(cfg: RunConfig, out: _Output) -> int:
    _, c = _coefficients(cfg)
    dim = cfg.dim or 96
    ls = fock.fuzzy_ladder(dim, c)
    H = fock.hamiltonian(ls, fock.HamiltonianSpec(drive=cfg.drive, fuzzy=not cfg.sharp))
    levels = fock.spectrum(H, cfg.levels)
    payload = {"dist": cfg.dist, "dim": dim, "C": c.C, "drive": cfg.drive, "levels": levels}
    out.emit(payload, ["n", "energy"], [[j, e] for j, e in enumerate(levels)])
    return EXIT_OK


def cmd_wavefunction(cfg: RunConfig, out: _Output) -> int:
    _, c = _coefficients(cfg)
    dim = cfg.dim or max(fock.DEFAULT_DIM, 2 * cfg.n + 32)
    grid = states.Grid.parse(cfg.grid)
    ls = fock.fuzzy_ladder(dim, c)
    vac = fock.fuzzy_vacuum(c, dim, max(cfg.tail_tol, 1e-14))
    state = fock.fuzzy_fock_state(cfg.n, vac, ls)
    dens = states.position_density(state, grid)
    payload = {"dist": cfg.dist, "n": cfg.n, "dim": dim, "xi": grid.points, "density": dens,
               "sharp_density": states.hermite_wavefunction(cfg.n, grid) ** 2}
    out.emit(payload, ["xi", "density"], list(zip(grid.points, dens)))
    return EXIT_OK


def cmd_coherent(cfg: RunConfig, out: _Output) -> int:
    _, c = _coefficients(cfg)
    z = cfg.complex_z()
    dim = cfg.dim or fock.DEFAULT_DIM
    displaced = states.coherent_displaced(z, c, dim)
    summed = states.coherent_sum(z, c, dim)
    chosen = summed if cfg.coherent_method == "sum" else displaced
    arg = states.rescale_displacement(z, c)
    x_mean = states.expectation(chosen, fock.sharp_ladder(dim).q).real
    payload = {"dist": cfg.dist, "dim": dim, "z": z, "z_rescaled": arg.z_rescaled,
               "z_generator": arg.z_generator, "method": cfg.coherent_method,
               "position_mean": x_mean, "fidelity_displaced_vs_sum": states.fidelity(displaced, summed),
               "coeffs": chosen.coeffs}
    rows = [[j, a.real, a.imag] for j, a in enumerate(chosen.coeffs)]
    out.emit(payload, ["n", "re", "im"], rows)
    return EXIT_OK


def cmd_dispersion(cfg: RunConfig, out: _Output) -> int:
    kind = cfg.dist if cfg.dist in ("lorentzian", "uniform") else None
    if kind is None:
        raise ValueError("dispersion supports --dist lorentzian or uniform")
    model = GammaModel.parse(cfg.gamma_model, kind)
    grid = states.Grid.parse(cfg.omega_grid).points
    curve = dispersion_curve(model, grid, parallel=cfg.parallel)
    report = constraint_report(model, grid)
    payload = {"model": dataclasses.asdict(model), "curve": [list(p) for p in curve],
               "report": dataclasses.asdict(report)}
    out.emit(payload, ["omega", "energy"], curve)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out: _Output) -> int:
    results = run_suite(cfg.suite, echo=lambda line: print(line, flush=True))
    failed = [chk.number for chk, ok, _ in results if not ok]
    if cfg.out:
        records = [{"criterion": chk.number, "suite": chk.suite, "title": chk.title,
                    "passed": ok, "detail": detail} for chk, ok, detail in results]
        out.emit(records)
    if failed:
        print(f"failed criteria: {', '.join(map(str, failed))}")
        return EXIT_VERIFY
    print(f"all {len(results)} checks passed")
    return EXIT_OK


HANDLERS = {
    "moments": cmd_moments,
    "commutator": cmd_commutator,
    "vacuum": cmd_vacuum,
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "coherent": cmd_coherent,
    "dispersion": cmd_dispersion,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing


def _common(p):
    # defaults are None so that config-file values are only overridden by explicit flags
    p.add_argument("--config", help="JSON file with the same keys as the flags")
    p.add_argument("--dist", choices=KINDS)
    p.add_argument("--zeta", type=float)
    p.add_argument("--table", help="two-column CSV for --dist tabulated")
    p.add_argument("--dim", type=int)
    p.add_argument("--rel-tol", type=float)
    p.add_argument("--tail-tol", type=float)
    p.add_argument("--method", choices=("auto", "analytic", "quadrature"))
    p.add_argument("--max-panels", type=int, help=argparse.SUPPRESS)
    p.add_argument("--format", choices=("json", "csv"))
    p.add_argument("--out")
    p.add_argument("--parallel", action="store_true", default=None)


class _Parser(argparse.ArgumentParser):
    # usage errors are bad input: exit 1, keeping 2 for quadrature failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzyladder",
                                     description="Frequency-averaged ladder operators.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "moments": "moment integrals I0, I1 and C",
        "commutator": "fuzzy coefficients and the matrix commutator check",
        "vacuum": "fuzzy vacuum in the sharp Fock basis",
        "spectrum": "lowest levels of the fuzzy Hamiltonian",
        "wavefunction": "position density of a fuzzy Fock state",
        "coherent": "fuzzy coherent states",
        "dispersion": "single-excitation energy versus frequency",
        "verify": "run the self-check suites",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        _common(p)
        if name == "moments":
            p.add_argument("--compare-paper", action="store_true", default=None,
                           help="also report the published uniform closed form")
        if name == "spectrum":
            p.add_argument("--levels", type=int)
            p.add_argument("--drive", type=float)
            p.add_argument("--sharp", action="store_true", default=None)
        if name == "wavefunction":
            p.add_argument("--n", type=int)
            p.add_argument("--grid", help="A:B:N")
        if name == "coherent":
            p.add_argument("--z")
            p.add_argument("--coherent-method", choices=("displaced", "sum"))
        if name == "dispersion":
            p.add_argument("--omega-grid", help="A:B:N")
            p.add_argument("--gamma-model", help="g,mu,c")
        if name == "verify":
            p.add_argument("--suite", choices=SUITES)
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        for key, val in data.items():
            k = key.replace("-", "_")
            if k not in _FIELDS:
                raise ValueError(f"unknown config key {key!r}")
            values[k] = val
    for key, val in vars(args).items():
        if key in _FIELDS and val is not None:
            values[key] = val
    return RunConfig(**values)


_RANGE_FLAGS = ("--grid", "--omega-grid")


def _glue_ranges(argv):
    # "--grid -5:5:11" would otherwise read -5:5:11 as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_ranges(argv))
    try:
        cfg = load_config(args)
        return HANDLERS[args.command](cfg, _Output(cfg))
    except QuadratureNonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    except (FuzzyLadderError, ValueError, TypeError, OSError) as exc:
        print(f"error: {' '.join(str(exc).split())}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
