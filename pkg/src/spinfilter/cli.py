"""Command-line surface: exact runs, sampled runs, canonical translation,
and gate-list circuit export.

Configuration is a flat key=value text file; command-line flags override
file values. All CSV output is UTF-8 with '#'-prefixed metadata lines
followed by a header row, floats in full round-trip precision. Reports
also render matplotlib figures next to the CSV files unless --no-plot
is given.
"""

import argparse
import os
import sys
from dataclasses import dataclass, field, fields

import numpy as np

from . import __version__
from .evolve import TrotterPlan
from .exact import (
    DEFAULT_MAX_EXACT_QUBITS,
    Spectrum,
    exact_traces,
    full_diagonalize,
    histogram_and_tau,
)
from .filtering import FilterParams
from .model import SpinChainModel, build_chain
from .randomstates import RandomStateKind, RandomStateSpec, draw_angles
from .sampling import estimate_traces, run_samples
from .states import StateVector, apply_exp_swap, apply_phase_diag
from .thermo import (
    ThermoPoint,
    canonical_from_dos_grid,
    canonical_from_spectrum,
    cumulative_states,
    derive_thermo,
)

_KIND_NAMES = {
    "full": RandomStateKind.FULL_PHASE,
    "product": RandomStateKind.PRODUCT_PHASE,
    "entangled": RandomStateKind.ENTANGLED_PHASE,
    "discrete": RandomStateKind.DISCRETE_PRODUCT_PHASE,
}


@dataclass
class RunConfig:
    n: int = 8
    j: float = 1.0
    boundary: str = "periodic"
    kind: str = "entangled"
    levels: int | None = None
    dt: float = 0.01
    tmax: float = 50.0
    e_grid: list = field(default_factory=list)
    tau_grid: list = field(default_factory=list)
    beta_grid: list = field(default_factory=list)
    samples: int = 64
    seed: int = 1
    nbin: int = 32
    out: str = "."
    threads: int = 0          # 0 = machine capacity
    g_file: str = ""
    plot: bool = True

    def model(self) -> SpinChainModel:
        return build_chain(self.n, self.j, self.boundary)

    def plan(self) -> TrotterPlan:
        n_steps = int(round(self.tmax / self.dt))
        return TrotterPlan(dt=self.dt, n_steps=n_steps)

    def grid(self):
        if not self.e_grid or not self.tau_grid:
            raise SystemExit("error: --e-grid and --tau-grid must be nonempty")
        return [(e, t) for t in self.tau_grid for e in self.e_grid]

    def effective_threads(self) -> int:
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)


def parse_grid(text: str) -> list:
    """'a,b,c' comma list or 'start:stop:count' inclusive linspace."""
    text = text.strip()
    if ":" in text:
        lo, hi, count = text.split(":")
        return [float(x) for x in np.linspace(float(lo), float(hi), int(count))]
    return [float(x) for x in text.split(",") if x.strip()]


def read_config_file(path) -> dict:
    values = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {raw.rstrip()}")
            key, val = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    file_values = read_config_file(args.config) if args.config else {}
    casts = {f.name: f for f in fields(RunConfig)}
    for key, raw in file_values.items():
        if key not in casts:
            raise SystemExit(f"error: unknown config key {key!r}")
        if key in ("e_grid", "tau_grid", "beta_grid"):
            setattr(cfg, key, parse_grid(raw))
        elif key in ("n", "samples", "seed", "nbin", "threads", "levels"):
            setattr(cfg, key, int(raw))
        elif key in ("j", "dt", "tmax"):
            setattr(cfg, key, float(raw))
        elif key == "plot":
            setattr(cfg, key, raw.lower() not in ("0", "false", "no"))
        else:
            setattr(cfg, key, raw)
    for key in casts:
        override = getattr(args, key, None)
        if override is not None:
            setattr(cfg, key, override)
    if getattr(args, "no_plot", False):
        cfg.plot = False
    return cfg


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def write_csv(path, header, rows, metadata) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for key, val in metadata:
            fh.write(f"# {key} = {val}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def read_csv(path):
    """Columns of a '#'-commented CSV as {name: float array}; NaN for blanks."""
    with open(path, encoding="utf-8") as fh:
        lines = [l.rstrip("\n") for l in fh if not l.startswith("#")]
    header = lines[0].split(",")
    cols = {name: [] for name in header}
    for line in lines[1:]:
        for name, cell in zip(header, line.split(",")):
            try:
                cols[name].append(float(cell))
            except ValueError:
                cols[name].append(float("nan"))
    return {name: np.array(vals) for name, vals in cols.items()}


def _common_metadata(cfg: RunConfig):
    return [
        ("generator", f"spinfilter {__version__}"),
        ("n", cfg.n), ("j", _fmt(cfg.j)), ("boundary", cfg.boundary),
        ("seed", cfg.seed),
    ]


def run_exact(cfg: RunConfig) -> list:
    os.makedirs(cfg.out, exist_ok=True)
    model = cfg.model()
    spectrum = full_diagonalize(model)
    meta = _common_metadata(cfg)
    written = []

    rows = []
    for energy, tau in cfg.grid():
        tr_g, tr_hg, tr_h2g = exact_traces(spectrum, energy, tau)
        point = derive_thermo(ThermoPoint(
            energy=energy, tau=tau, dim=spectrum.dim,
            tr_g=tr_g, tr_hg=tr_hg, tr_h2g=tr_h2g))
        rows.append([energy, tau, tr_g, tr_hg, tr_h2g, point.dos,
                     point.entropy, point.beta, point.mean_energy,
                     point.sigma, point.delta_e])
    path = os.path.join(cfg.out, "thermo.csv")
    write_csv(path, ["E", "tau", "trG", "trHG", "trH2G", "g", "S", "beta",
                     "energy", "sigma", "deltaE"], rows, meta)
    written.append(path)

    hist = histogram_and_tau(spectrum, cfg.nbin)
    rows = []
    for center, count in zip(hist.centers, hist.counts):
        tr_g, _, _ = exact_traces(spectrum, float(center), hist.tau_bin)
        rows.append([center, count, tr_g, hist.delta_e_bin, hist.tau_bin])
    path = os.path.join(cfg.out, "histogram.csv")
    write_csv(path, ["bin_center", "count", "trG_at_center", "deltaE_bin",
                     "tau_bin"], rows, meta + [("nbin", cfg.nbin)])
    written.append(path)

    rows = []
    for tau in cfg.tau_grid:
        for energy in cfg.e_grid:
            rows.append([energy, tau,
                         cumulative_states(spectrum.eigenvalues, energy, tau)])
    path = os.path.join(cfg.out, "cumulative.csv")
    write_csv(path, ["E", "tau", "W"], rows, meta)
    written.append(path)

    if cfg.plot:
        from .plots import render_exact_figures
        written += render_exact_figures(cfg.out)
    return written


def run_sample(cfg: RunConfig) -> list:
    os.makedirs(cfg.out, exist_ok=True)
    model = cfg.model()
    kind = _KIND_NAMES[cfg.kind]
    template = RandomStateSpec(kind, cfg.n, cfg.seed, levels=cfg.levels)
    grid = cfg.grid()
    samples = run_samples(model, template, cfg.plan(), grid, cfg.samples,
                          threads=cfg.effective_threads())
    meta = _common_metadata(cfg) + [
        ("kind", cfg.kind), ("samples", cfg.samples),
        ("dt", _fmt(cfg.dt)), ("tmax", _fmt(cfg.tmax)),
    ]
    written = []

    rows = []
    for energy, tau in grid:
        est = estimate_traces(samples, (energy, tau))
        point = derive_thermo(ThermoPoint(
            energy=energy, tau=tau, dim=1 << cfg.n,
            tr_g=est.tr_g, tr_hg=est.tr_hg,
            sem_tr_g=est.sem_tr_g if est.sem_defined else 0.0,
            sem_tr_hg=est.sem_tr_hg if est.sem_defined else 0.0))
        if not point.valid:
            rows.append([energy, tau] + [""] * 8 + ["invalid"])
            continue
        status = "ok" if est.sem_defined else "sem-undefined"
        rows.append([energy, tau, point.dos, point.sem_dos,
                     point.entropy, point.sem_entropy,
                     point.beta, point.sem_beta,
                     point.mean_energy, point.sem_mean_energy, status])
    path = os.path.join(cfg.out, "sampled_thermo.csv")
    write_csv(path, ["E", "tau", "g", "g_sem", "S", "S_sem", "beta",
                     "beta_sem", "energy", "energy_sem", "status"], rows, meta)
    written.append(path)

    rows = []
    for r in range(samples.n_samples):
        for g, (energy, tau) in enumerate(grid):
            rows.append([r, energy, tau, samples.norms[r, g],
                         samples.energies[r, g]])
    path = os.path.join(cfg.out, "samples.csv")
    write_csv(path, ["r", "E", "tau", "N_re", "H_re"], rows, meta)
    written.append(path)

    if cfg.plot:
        from .plots import render_sample_figures
        written += render_sample_figures(cfg.out)
    return written


def run_canonical(cfg: RunConfig) -> list:
    os.makedirs(cfg.out, exist_ok=True)
    if not cfg.beta_grid or not cfg.tau_grid:
        raise SystemExit("error: canonical mode needs --beta-grid and --tau-grid")
    meta = _common_metadata(cfg)
    rows = []
    if cfg.g_file:
        cols = read_csv(cfg.g_file)
        for tau in cfg.tau_grid:
            sel = np.isclose(cols["tau"], tau)
            if not sel.any():
                raise SystemExit(f"error: no tau={tau:g} rows in {cfg.g_file}")
            order = np.argsort(cols["E"][sel])
            e_grid = cols["E"][sel][order]
            dos = cols["g"][sel][order]
            for beta in cfg.beta_grid:
                p = canonical_from_dos_grid(e_grid, dos, beta, tau)
                rows.append([beta, tau, p.z_can_tau, p.e_can_tau, p.s_can_tau,
                             "", "", ""])
    else:
        spectrum = full_diagonalize(cfg.model())
        for tau in cfg.tau_grid:
            for beta in cfg.beta_grid:
                p = canonical_from_spectrum(spectrum.eigenvalues, beta, tau)
                rows.append([beta, tau, p.z_can_tau, p.e_can_tau, p.s_can_tau,
                             p.z_can, p.e_can, p.s_can])
    path = os.path.join(cfg.out, "canonical.csv")
    write_csv(path, ["beta", "tau", "Z_can_tau", "E_can_tau", "S_can_tau",
                     "Z_can", "E_can", "S_can"], rows, meta)
    written = [path]
    if cfg.plot:
        from .plots import render_canonical_figures
        written += render_canonical_figures(cfg.out)
    return written


def gate_lines(cfg: RunConfig) -> list:
    """State-preparation-plus-evolution circuit, one gate per line.

    Layout: h on every qubit, the single-qubit rz angles, the two-qubit zz
    angles (entangled kind only), then n_steps repetitions of the two
    exponential-SWAP layers with angle 2*dt*J.
    """
    kind = _KIND_NAMES[cfg.kind]
    if kind not in (RandomStateKind.PRODUCT_PHASE,
                    RandomStateKind.ENTANGLED_PHASE):
        raise SystemExit(
            "error: circuit export supports only the product and entangled "
            "kinds (the full-phase kind needs exponentially many gates)")
    model = cfg.model()
    plan = cfg.plan()
    spec = RandomStateSpec(kind, cfg.n, cfg.seed)
    angles = draw_angles(spec)
    lines = [
        f"# spinfilter {__version__} gate list",
        f"# n = {cfg.n}  j = {_fmt(cfg.j)}  boundary = {cfg.boundary}",
        f"# kind = {cfg.kind}  seed = {cfg.seed}",
        f"# dt = {_fmt(plan.dt)}  steps = {plan.n_steps}",
    ]
    for q in range(cfg.n):
        lines.append(f"h {q}")
    for q in range(cfg.n):
        lines.append(f"rz {q} {_fmt(float(angles[q]))}")
    if kind is RandomStateKind.ENTANGLED_PHASE:
        k = cfg.n
        for i in range(cfg.n):
            for j in range(i):
                lines.append(f"zz {i} {j} {_fmt(float(angles[k]))}")
                k += 1
    theta = 2.0 * plan.dt * model.coupling
    for _ in range(plan.n_steps):
        for i, j in model.odd_bonds:
            lines.append(f"eswap {i} {j} {_fmt(theta)}")
        for i, j in model.even_bonds:
            lines.append(f"eswap {i} {j} {_fmt(theta)}")
    return lines


def export_circuit(cfg: RunConfig) -> list:
    os.makedirs(cfg.out, exist_ok=True)
    path = os.path.join(cfg.out, "circuit.txt")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(gate_lines(cfg)) + "\n")
    return [path]


def replay_gate_lines(lines) -> StateVector:
    """Run a gate list through the state-vector kernels, from |0...0>."""
    gates = [l.split() for l in lines if l.strip() and not l.startswith("#")]
    qubit_count = {"h": 1, "rz": 1, "zz": 2, "eswap": 2}
    n = 1 + max(int(tok) for g in gates
                for tok in g[1:1 + qubit_count.get(g[0], 0)])
    dim = 1 << n
    amps = np.zeros(dim, dtype=np.complex128)
    amps[0] = 1.0
    state = StateVector(n, amps)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for g in gates:
        if g[0] == "h":
            q = int(g[1])
            view = state.amplitudes.reshape(-1, 2, 1 << q)
            a0 = view[:, 0, :].copy()
            a1 = view[:, 1, :].copy()
            view[:, 0, :] = (a0 + a1) * inv_sqrt2
            view[:, 1, :] = (a0 - a1) * inv_sqrt2
        elif g[0] == "rz":
            apply_phase_diag(state, (int(g[1]),), float(g[2]))
        elif g[0] == "zz":
            apply_phase_diag(state, (int(g[1]), int(g[2])), float(g[3]))
        elif g[0] == "eswap":
            apply_exp_swap(state, int(g[1]), int(g[2]), float(g[3]))
        else:
            raise ValueError(f"unknown gate {g[0]!r}")
    return state


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="spinfilter",
        description="Microcanonical thermodynamics of Heisenberg chains "
                    "via energy-filtered random-phase states")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("exact", "full-diagonalization run: thermo, histogram, cumulative CSVs"),
        ("sample", "stochastic run over R random-phase samples"),
        ("canonical", "translate to the canonical ensemble"),
        ("export-circuit", "write the preparation+evolution gate list"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--n", type=int, help="number of qubits (even)")
        p.add_argument("--j", type=float, help="exchange coupling J > 0")
        p.add_argument("--boundary", choices=["periodic", "open"])
        p.add_argument("--kind", choices=sorted(_KIND_NAMES))
        p.add_argument("--levels", type=int,
                       help="angle grid size for the discrete kind")
        p.add_argument("--dt", type=float, help="Trotter step (1/J units)")
        p.add_argument("--tmax", type=float, help="kernel time cutoff")
        p.add_argument("--e-grid", dest="e_grid", type=parse_grid,
                       help="target energies: 'a,b,c' or 'lo:hi:count'")
        p.add_argument("--tau-grid", dest="tau_grid", type=parse_grid,
                       help="filtering times, same syntax")
        p.add_argument("--beta-grid", dest="beta_grid", type=parse_grid,
                       help="inverse temperatures (canonical mode)")
        p.add_argument("--samples", type=int, help="number R of random samples")
        p.add_argument("--seed", type=int, help="base seed")
        p.add_argument("--nbin", type=int, help="histogram bin count")
        p.add_argument("--out", help="output directory")
        p.add_argument("--threads", type=int,
                       help="sample-level parallelism (0 = all cores)")
        p.add_argument("--g-file", dest="g_file",
                       help="sampled density-of-states CSV (canonical mode)")
        p.add_argument("--no-plot", action="store_true",
                       help="skip figure rendering")
    args = parser.parse_args(argv)
    cfg = build_config(args)
    command = {
        "exact": run_exact,
        "sample": run_sample,
        "canonical": run_canonical,
        "export-circuit": export_circuit,
    }[args.command]
    for path in command(cfg):
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
