"""Figure rendering for the CLI report path.

Figures are produced from the CSV files (not from in-memory objects), so
anything written by a previous run can be re-rendered. PNG files land
next to the CSVs.
"""

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .cli import read_csv


def _by_energy(cols):
    for energy in np.unique(cols["E"]):
        sel = cols["E"] == energy
        order = np.argsort(cols["tau"][sel])
        yield energy, {k: v[sel][order] for k, v in cols.items()}


def render_exact_figures(outdir) -> list:
    written = []
    cols = read_csv(os.path.join(outdir, "thermo.csv"))

    fig, axes = plt.subplots(2, 2, figsize=(9, 7), sharex=True)
    panels = [("energy", "mean energy"), ("S", "entropy"),
              ("beta", "inverse temperature"), ("sigma", "energy fluctuation")]
    for ax, (key, label) in zip(axes.flat, panels):
        for energy, sub in _by_energy(cols):
            ax.plot(sub["tau"], sub[key], marker=".", label=f"E={energy:g}")
        ax.set_ylabel(label)
    for ax in axes[1]:
        ax.set_xlabel("filtering time tau")
    tau = np.sort(np.unique(cols["tau"]))
    axes[1, 1].plot(tau, 1.0 / (np.sqrt(2.0) * tau), "k--", lw=1,
                    label="1/(sqrt(2) tau)")
    if len(np.unique(cols["E"])) <= 8:   # dense E grids drown the panels
        axes[0, 0].legend(fontsize=8)
        axes[1, 1].legend(fontsize=8)
    else:
        axes[1, 1].legend(handles=axes[1, 1].lines[-1:], fontsize=8)
    fig.tight_layout()
    path = os.path.join(outdir, "thermo.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    hist = read_csv(os.path.join(outdir, "histogram.csv"))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    width = float(hist["deltaE_bin"][0])
    ax.bar(hist["bin_center"], hist["count"], width=0.9 * width,
           color="lightsteelblue", label="eigenvalue histogram")
    ax.plot(hist["bin_center"], hist["trG_at_center"], color="m",
            label="Tr[G] at bin centers")
    ax.set_yscale("log")
    ax.set_xlabel("energy")
    ax.set_ylabel("states per bin")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(outdir, "histogram.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    cum = read_csv(os.path.join(outdir, "cumulative.csv"))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for tau_val in np.unique(cum["tau"]):
        sel = cum["tau"] == tau_val
        order = np.argsort(cum["E"][sel])
        ax.plot(cum["E"][sel][order], cum["W"][sel][order], marker=".",
                label=f"tau={tau_val:g}")
    ax.set_xlabel("energy")
    ax.set_ylabel("cumulative number of states")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(outdir, "cumulative.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)
    return written


def render_sample_figures(outdir) -> list:
    cols = read_csv(os.path.join(outdir, "sampled_thermo.csv"))
    fig, axes = plt.subplots(2, 2, figsize=(9, 7), sharex=True)
    panels = [("energy", "mean energy"), ("S", "entropy"),
              ("beta", "inverse temperature"), ("g", "density of states")]
    for ax, (key, label) in zip(axes.flat, panels):
        for energy, sub in _by_energy(cols):
            ok = ~np.isnan(sub[key])
            ax.errorbar(sub["tau"][ok], sub[key][ok],
                        yerr=sub[f"{key}_sem"][ok], marker=".", capsize=2,
                        label=f"E={energy:g}")
        ax.set_ylabel(label)
    for ax in axes[1]:
        ax.set_xlabel("filtering time tau")
    if len(np.unique(cols["E"])) <= 8:
        axes[0, 0].legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(outdir, "sampled_thermo.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return [path]


def render_canonical_figures(outdir) -> list:
    cols = read_csv(os.path.join(outdir, "canonical.csv"))
    fig, axes = plt.subplots(1, 2, figsize=(9, 4))
    for tau_val in np.unique(cols["tau"]):
        sel = cols["tau"] == tau_val
        order = np.argsort(cols["beta"][sel])
        beta = cols["beta"][sel][order]
        axes[0].plot(beta, cols["E_can_tau"][sel][order], marker=".",
                     label=f"tau={tau_val:g}")
        axes[1].plot(beta, cols["S_can_tau"][sel][order], marker=".")
    if not np.isnan(cols["E_can"]).all():
        sel = cols["tau"] == np.unique(cols["tau"])[0]
        order = np.argsort(cols["beta"][sel])
        axes[0].plot(cols["beta"][sel][order], cols["E_can"][sel][order],
                     "m-", lw=1, label="canonical")
        axes[1].plot(cols["beta"][sel][order], cols["S_can"][sel][order],
                     "m-", lw=1)
    axes[0].set_xlabel("beta")
    axes[0].set_ylabel("energy")
    axes[1].set_xlabel("beta")
    axes[1].set_ylabel("entropy")
    axes[0].legend(fontsize=8)
    fig.tight_layout()
    path = os.path.join(outdir, "canonical.png")
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return [path]
