"""Figure-data emission: tidy CSVs plus standalone matplotlib scripts.

Each report aggregates the record store for one figure of the study,
writes the data as CSV with the analytic reference curves attached, and
drops a small plot script next to it.  Missing prerequisite records make
the report return a manifest of what still has to be computed instead of
writing files.
"""

from __future__ import annotations

import csv
import json
import math
from collections import defaultdict
from pathlib import Path

import numpy as np

from .entanglement import (
    HAAR_CAPACITY,
    haar_page_entropy,
    marchenko_pastur_eta,
    normalized_rdm_curve,
    relative_gap,
    syk2_mean_entropy,
)
from .fits import linear_fit, power_law_fit, saturating_exponential_fit
from .spacings import (
    ess_histogram,
    kl_divergence,
    kl_fidelity_scan,
    reference_bin_masses,
    transition_point,
)
from .sre import golden_sre2, haar_sre2

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "dos", "gap")

_WD_OF_CLASS = {0: "wd_goe", 2: "wd_gue", 4: "wd_gse", 6: "wd_gue"}


def wd_kind_for(n_majorana: int) -> str:
    """Wigner-Dyson class of the SYK-4 spectrum by N mod 8."""
    return _WD_OF_CLASS[n_majorana % 8]


def _by_diagnostic(records, diagnostic):
    return [r for r in records if r["key"]["diagnostic"] == diagnostic]


def _missing(diagnostic, figure):
    return {"figure": figure, "missing_diagnostic": diagnostic,
            "hint": f"run with --diagnostics {diagnostic}"}


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _mean_entropy_table(records):
    """(N, g, state) -> (mean over realizations of bipartition-mean S1, std)."""
    acc = defaultdict(list)
    for rec in records:
        key = rec["key"]
        alphas, table = rec["payload"]
        s1_col = alphas.index(1.0)
        s1 = float(np.mean([row[s1_col] for row in table]))
        acc[(key["N"], key["g"], key["state"])].append(s1)
    return {k: (float(np.mean(v)), float(np.std(v))) for k, v in acc.items()}


def export_scan_csv(records: list[dict], diagnostic: str, path) -> int:
    """Raw per-record CSV export for one diagnostic; returns the row count.

    Schemas: entropy -> (seed, N, g, state_kind, bipartition_id, alpha, S);
    capacity / antiflatness -> (seed, N, g, state_kind, value), the value
    being the bipartition-averaged scalar the runner records;
    sre -> (seed, N, g, state_kind, method, n_samples, M2, std_error).
    """
    rows = []
    if diagnostic == "entropy":
        header = ["seed", "N", "g", "state_kind", "bipartition_id",
                  "alpha", "S"]
        for rec in _by_diagnostic(records, "entropy"):
            key = rec["key"]
            alphas, table = rec["payload"]
            for bip_id, values in enumerate(table):
                for alpha, s in zip(alphas, values):
                    rows.append([key["seed"], key["N"], key["g"],
                                 key["state"], bip_id, alpha, repr(s)])
    elif diagnostic in ("capacity", "antiflatness"):
        header = ["seed", "N", "g", "state_kind", "value"]
        for rec in _by_diagnostic(records, diagnostic):
            key = rec["key"]
            rows.append([key["seed"], key["N"], key["g"], key["state"],
                         repr(rec["payload"])])
    elif diagnostic == "sre":
        header = ["seed", "N", "g", "state_kind", "method", "n_samples",
                  "M2", "std_error"]
        for rec in _by_diagnostic(records, "sre"):
            key = rec["key"]
            p = rec["payload"]
            rows.append([key["seed"], key["N"], key["g"], key["state"],
                         p["method"], p["n_samples"], repr(p["value"]),
                         repr(p["std_error"])])
    else:
        raise ValueError(f"no raw exporter for diagnostic {diagnostic!r}")
    _write_csv(Path(path), header, rows)
    return len(rows)


def emit_report(records: list[dict], figure: str, out_dir) -> dict:
    """Write `figure`'s CSV(s) and plot script; returns a small manifest.

    On success the manifest lists the files written; when records are
    missing it lists what to compute and writes nothing.
    """
    if figure not in FIGURES:
        raise ValueError(f"unknown figure {figure!r}; pick from {FIGURES}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    emitter = {
        "fig1": _emit_fig1, "fig2": _emit_fig2, "fig3": _emit_fig3,
        "fig4": _emit_fig4, "fig5": _emit_fig5, "fig6": _emit_fig6,
        "dos": _emit_dos, "gap": _emit_gap,
    }[figure]
    return emitter(records, out)


# -- fig1: entropy vs g plus relative-gap scaling ---------------------------

def _emit_fig1(records, out: Path) -> dict:
    entropy = _by_diagnostic(records, "entropy")
    if not entropy:
        return _missing("entropy", "fig1")
    table = _mean_entropy_table(entropy)
    rows = []
    for (n_major, g, state), (mean, std) in sorted(table.items()):
        n = n_major // 2
        r = max(1, n // 2)
        rescaled = 2.0 * mean / (n * math.log(2.0))
        rows.append([n_major, g, state, repr(mean), repr(std), repr(rescaled),
                     repr(haar_page_entropy(n, r)),
                     repr(syk2_mean_entropy(r, r / n))])
    _write_csv(out / "fig1.csv",
               ["N", "g", "state", "S1_mean", "S1_std", "S1_rescaled",
                "haar_page", "syk2_analytic"], rows)

    gap_rows = []
    fits = {}
    for state in ("gs", "ms"):
        for g_pick in (0.0, 1.0):
            pts = []
            for (n_major, g, st), (mean, _std) in table.items():
                if st != state or abs(g - g_pick) > 1e-9:
                    continue
                n = n_major // 2
                ref = haar_page_entropy(n, max(1, n // 2))
                delta = relative_gap(mean, ref)
                pts.append((1.0 / n_major, delta))
                gap_rows.append([n_major, g_pick, state, repr(1.0 / n_major),
                                 repr(delta)])
            if len(pts) >= 3:
                xs, ys = zip(*sorted(pts))
                fit = linear_fit(xs, ys)
                fits[f"{state}_g{g_pick:g}"] = json.loads(fit.to_json())
    _write_csv(out / "fig1_relative_gap.csv",
               ["N", "g", "state", "inv_N", "relative_gap"], gap_rows)
    written = ["fig1.csv", "fig1_relative_gap.csv", "fig1_plot.py"]
    if fits:
        (out / "fig1_fits.json").write_text(json.dumps(fits, indent=2,
                                                       sort_keys=True))
        written.append("fig1_fits.json")
    _write_plot_script(out / "fig1_plot.py", _FIG1_PLOT)
    return {"written": written}


# -- fig2: normalized RDM curves and KL fidelity ----------------------------

def _averaged_spectra(records):
    """(N, state) -> {g: averaged descending spectrum}."""
    acc = defaultdict(list)
    for rec in _by_diagnostic(records, "rdm_curve"):
        key = rec["key"]
        acc[(key["N"], key["state"], key["g"])].append(
            np.asarray(rec["payload"], dtype=float))
    curves = defaultdict(dict)
    for (n_major, state, g), specs in acc.items():
        mean = np.mean(specs, axis=0)
        curves[(n_major, state)][g] = mean / mean.sum()
    return curves


def _emit_fig2(records, out: Path) -> dict:
    curves = _averaged_spectra(records)
    if not curves:
        return _missing("rdm_curve", "fig2")
    rows = []
    for (n_major, state), by_g in sorted(curves.items()):
        for g, lam in sorted(by_g.items()):
            x, eta = normalized_rdm_curve(lam)
            mp = marchenko_pastur_eta(np.clip(x, 0.0, 1.0))
            for xk, ek, mk, lk in zip(x, eta, mp, lam):
                rows.append([n_major, state, g, repr(float(xk)),
                             repr(float(ek)), repr(float(mk)), repr(float(lk))])
    _write_csv(out / "fig2_rdm_curves.csv",
               ["N", "state", "g", "x", "eta", "eta_haar", "lambda"], rows)

    fid_rows = []
    for (n_major, state), by_g in sorted(curves.items()):
        gs = sorted(by_g)
        if len(gs) < 2:
            continue
        eps = round(gs[1] - gs[0], 10)
        for g, d in kl_fidelity_scan(by_g, eps):
            fid_rows.append([n_major, state, repr(eps), g, repr(d)])
    _write_csv(out / "fig2_kl_fidelity.csv",
               ["N", "state", "epsilon", "g", "kl"], fid_rows)
    _write_plot_script(out / "fig2_plot.py", _FIG2_PLOT)
    return {"written": ["fig2_rdm_curves.csv", "fig2_kl_fidelity.csv",
                        "fig2_plot.py"]}


# -- fig3: fidelity scans, transition points, power law ---------------------

def _emit_fig3(records, out: Path) -> dict:
    curves = _averaged_spectra(records)
    gs_curves = {n: by_g for (n, state), by_g in curves.items()
                 if state == "gs"}
    if not gs_curves:
        return _missing("rdm_curve", "fig3")
    scan_rows, trans_rows = [], []
    points = []
    for n_major, by_g in sorted(gs_curves.items()):
        gs = sorted(by_g)
        if len(gs) < 13:
            continue
        eps = round(gs[1] - gs[0], 10)
        curve = kl_fidelity_scan(by_g, eps)
        peak = max(v for _, v in curve) or 1.0
        for g, d in curve:
            scan_rows.append([n_major, repr(eps), g, repr(d), repr(d / peak)])
        est = transition_point(curve)
        trans_rows.append([n_major, repr(est.g_c), est.boundary])
        if not est.boundary:
            points.append((n_major, est.g_c))
    _write_csv(out / "fig3_fidelity.csv",
               ["N", "epsilon", "g", "kl", "kl_rescaled"], scan_rows)
    _write_csv(out / "fig3_transition.csv", ["N", "g_c", "boundary_flag"],
               trans_rows)
    manifest = {"written": ["fig3_fidelity.csv", "fig3_transition.csv",
                            "fig3_plot.py"]}
    if len(points) >= 3:
        ns, gcs = zip(*points)
        fit = power_law_fit(ns, gcs)
        (out / "fig3_power_law.json").write_text(fit.to_json(indent=2))
        manifest["written"].append("fig3_power_law.json")
    _write_plot_script(out / "fig3_plot.py", _FIG3_PLOT)
    return manifest


# -- fig4: ESS histograms with reference overlays ---------------------------

def _emit_fig4(records, out: Path, bins: int = 100) -> dict:
    ess = _by_diagnostic(records, "ess")
    if not ess:
        return _missing("ess", "fig4")
    pooled = defaultdict(list)
    for rec in ess:
        key = rec["key"]
        pooled[(key["N"], key["state"], key["g"])].extend(rec["payload"])
    hist_rows, kl_rows = [], []
    for (n_major, state, g), ratios in sorted(pooled.items()):
        if not any(r <= 10.0 for r in ratios):
            continue       # nothing resolvable at this (state, g)
        hist = ess_histogram(ratios, bins=bins)
        wd_kind = wd_kind_for(n_major)
        refs = {kind: reference_bin_masses(kind, hist.bin_edges)
                for kind in ("poisson", wd_kind)}
        ref_dens = {kind: mass / hist.widths for kind, mass in refs.items()}
        for i in range(bins):
            hist_rows.append([
                n_major, state, g,
                repr(float(hist.bin_edges[i])), repr(float(hist.bin_edges[i + 1])),
                repr(float(hist.densities[i])),
                repr(float(ref_dens["poisson"][i])),
                repr(float(ref_dens[wd_kind][i])), wd_kind])
        for kind, mass in refs.items():
            kl_rows.append([n_major, state, g, kind,
                            repr(kl_divergence(hist, mass)),
                            hist.n_samples, hist.excluded])
    _write_csv(out / "fig4_ess_hist.csv",
               ["N", "state", "g", "bin_lo", "bin_hi", "density",
                "poisson_density", "wd_density", "wd_kind"], hist_rows)
    _write_csv(out / "fig4_kl.csv",
               ["N", "state", "g", "reference", "kl", "n_samples", "excluded"],
               kl_rows)
    _write_plot_script(out / "fig4_plot.py", _FIG4_PLOT)
    return {"written": ["fig4_ess_hist.csv", "fig4_kl.csv", "fig4_plot.py"]}


# -- fig5: stabilizer entropy panels -----------------------------------------

def _emit_fig5(records, out: Path) -> dict:
    sre = _by_diagnostic(records, "sre")
    if not sre:
        return _missing("sre", "fig5")
    acc = defaultdict(list)
    for rec in sre:
        key = rec["key"]
        acc[(key["N"], key["state"], key["g"])].append(rec["payload"]["value"])
    rows = []
    for (n_major, state, g), vals in sorted(acc.items()):
        n = n_major // 2
        rows.append([n_major, state, g, repr(float(np.mean(vals))),
                     repr(float(np.std(vals))), len(vals),
                     repr(haar_sre2(n)), repr(golden_sre2(n))])
    _write_csv(out / "fig5_sre.csv",
               ["N", "state", "g", "M2_mean", "M2_std", "realizations",
                "haar_reference", "golden_reference"], rows)

    # panel (b): rescaled SRE at g = 0, grouped by N mod 8
    g0 = {(k[0], k[1]): float(np.mean(v)) for k, v in acc.items()
          if abs(k[2]) < 1e-12}
    group_rows, fits = [], {}
    groups = {"mod8_0": [], "mod8_2_6": [], "mod8_4": []}
    for (n_major, state), m2 in sorted(g0.items()):
        if state != "gs":
            continue
        n = n_major // 2
        rescaled = m2 / n
        label = {0: "mod8_0", 2: "mod8_2_6", 4: "mod8_4",
                 6: "mod8_2_6"}[n_major % 8]
        groups[label].append((n_major, rescaled))
        group_rows.append([n_major, label, repr(rescaled)])
    for label, pts in groups.items():
        if len(pts) >= 4:
            xs, ys = zip(*sorted(pts))
            fit = saturating_exponential_fit(xs, ys, "a_times_one_minus_exp")
            fits[label] = json.loads(fit.to_json())
    _write_csv(out / "fig5_groups.csv", ["N", "group", "M2_over_n"], group_rows)
    if fits:
        (out / "fig5_group_fits.json").write_text(
            json.dumps(fits, indent=2, sort_keys=True))
    _write_plot_script(out / "fig5_plot.py", _FIG5_PLOT)
    return {"written": ["fig5_sre.csv", "fig5_groups.csv", "fig5_plot.py"]}


# -- fig6: capacity of entanglement ------------------------------------------

def _emit_fig6(records, out: Path) -> dict:
    cap = _by_diagnostic(records, "capacity")
    if not cap:
        return _missing("capacity", "fig6")
    acc = defaultdict(list)
    for rec in cap:
        key = rec["key"]
        acc[(key["N"], key["state"], key["g"])].append(rec["payload"])
    rows = []
    for (n_major, state, g), vals in sorted(acc.items()):
        # magnitudes are reported; the internal sign convention is negative
        rows.append([n_major, state, g, repr(float(np.mean(np.abs(vals)))),
                     repr(float(np.std(np.abs(vals)))),
                     repr(abs(HAAR_CAPACITY))])
    _write_csv(out / "fig6_capacity.csv",
               ["N", "state", "g", "abs_capacity_mean", "abs_capacity_std",
                "haar_reference"], rows)
    _write_plot_script(out / "fig6_plot.py", _FIG6_PLOT)
    return {"written": ["fig6_capacity.csv", "fig6_plot.py"]}


# -- appendix reports: dos and gap -------------------------------------------

def _emit_dos(records, out: Path, bins: int = 120) -> dict:
    dos = _by_diagnostic(records, "dos")
    if not dos:
        return _missing("dos", "dos")
    pooled = defaultdict(list)
    for rec in dos:
        key = rec["key"]
        pooled[(key["N"], key["g"])].extend(rec["payload"])
    rows, support_rows = [], []
    for (n_major, g), values in sorted(pooled.items()):
        values = np.asarray(values)
        dens, edges = np.histogram(values, bins=bins, density=True)
        for i in range(bins):
            rows.append([n_major, g, repr(float(edges[i])),
                         repr(float(edges[i + 1])), repr(float(dens[i]))])
        support_rows.append([n_major, g, repr(float(values.min())),
                             repr(float(values.max())),
                             repr(float(values.max() - values.min()))])
    _write_csv(out / "dos_hist.csv",
               ["N", "g", "bin_lo", "bin_hi", "density"], rows)
    _write_csv(out / "dos_support.csv",
               ["N", "g", "e_min", "e_max", "width"], support_rows)
    _write_plot_script(out / "dos_plot.py", _DOS_PLOT)
    return {"written": ["dos_hist.csv", "dos_support.csv", "dos_plot.py"]}


def _emit_gap(records, out: Path) -> dict:
    gaps = _by_diagnostic(records, "gap")
    if not gaps:
        return _missing("gap", "gap")
    acc = defaultdict(list)
    for rec in gaps:
        key = rec["key"]
        acc[(key["N"], key["g"])].append(rec["payload"])
    rows = []
    by_g = defaultdict(list)
    for (n_major, g), vals in sorted(acc.items()):
        mean = float(np.mean(vals))
        rows.append([n_major, g, repr(mean), repr(float(np.std(vals))),
                     len(vals)])
        by_g[g].append((n_major, mean))
    _write_csv(out / "gap_mean.csv",
               ["N", "g", "gap_mean", "gap_std", "realizations"], rows)
    written = ["gap_mean.csv", "gap_plot.py"]
    fits = {}
    for g, pts in sorted(by_g.items()):
        if len(pts) >= 3 and all(v > 0 for _, v in pts):
            ns, means = zip(*sorted(pts))
            fits[f"g={g:g}"] = json.loads(power_law_fit(ns, means).to_json())
    if fits:
        (out / "gap_power_laws.json").write_text(
            json.dumps(fits, indent=2, sort_keys=True))
        written.append("gap_power_laws.json")
    _write_plot_script(out / "gap_plot.py", _GAP_PLOT)
    return {"written": written}


# -- plot-script templates ----------------------------------------------------

_PLOT_PRELUDE = '''\
#!/usr/bin/env python3
"""Auto-generated plot script; run next to its CSV files (needs matplotlib)."""
import csv
from collections import defaultdict
from pathlib import Path

import matplotlib.pyplot as plt


def read_csv(name):
    rows = []
    with open(Path(__file__).parent / name) as fh:
        for row in csv.DictReader(fh):
            rows.append(row)
    return rows

'''

_FIG1_PLOT = _PLOT_PRELUDE + '''\
rows = read_csv("fig1.csv")
fig, axes = plt.subplots(1, 2, figsize=(9, 4), sharey=True)
for ax, state in zip(axes, ("gs", "ms")):
    series = defaultdict(list)
    for r in rows:
        if r["state"] == state:
            series[int(r["N"])].append((float(r["g"]), float(r["S1_rescaled"])))
    for n, pts in sorted(series.items()):
        pts.sort()
        ax.plot(*zip(*pts), label=f"N={n}")
    ax.axhline(1.0, ls="--", c="k", lw=0.8, label="Haar")
    ax.set_xlabel("g")
    ax.set_title(state.upper())
    ax.legend(fontsize=7)
axes[0].set_ylabel("rescaled mean entropy")
fig.tight_layout()
fig.savefig("fig1.png", dpi=160)
print("wrote fig1.png")
'''

_FIG2_PLOT = _PLOT_PRELUDE + '''\
rows = read_csv("fig2_rdm_curves.csv")
fid = read_csv("fig2_kl_fidelity.csv")
states = sorted({r["state"] for r in rows})
fig, axes = plt.subplots(2, len(states), figsize=(5 * len(states), 7))
axes = axes.reshape(2, -1)
for j, state in enumerate(states):
    sel = [r for r in rows if r["state"] == state]
    gs = sorted({float(r["g"]) for r in sel})
    for g in gs[:: max(1, len(gs) // 6)]:
        pts = sorted((float(r["x"]), float(r["eta"])) for r in sel
                     if abs(float(r["g"]) - g) < 1e-12)
        axes[0, j].plot(*zip(*pts), marker=".", ms=3, label=f"g={g:g}")
    mp = sorted((float(r["x"]), float(r["eta_haar"])) for r in sel)
    axes[0, j].plot(*zip(*mp), "k--", lw=0.8, label="M-P")
    axes[0, j].set_title(f"{state.upper()} normalized RDM")
    axes[0, j].legend(fontsize=6)
    pts = defaultdict(list)
    for r in fid:
        if r["state"] == state:
            pts[int(r["N"])].append((float(r["g"]), float(r["kl"])))
    for n, curve in sorted(pts.items()):
        curve.sort()
        axes[1, j].plot(*zip(*curve), label=f"N={n}")
    axes[1, j].set_xlabel("g")
    axes[1, j].set_ylabel("KL fidelity")
    axes[1, j].legend(fontsize=6)
fig.tight_layout()
fig.savefig("fig2.png", dpi=160)
print("wrote fig2.png")
'''

_FIG3_PLOT = _PLOT_PRELUDE + '''\
scan = read_csv("fig3_fidelity.csv")
trans = read_csv("fig3_transition.csv")
fig, axes = plt.subplots(1, 2, figsize=(9, 4))
series = defaultdict(list)
for r in scan:
    series[int(r["N"])].append((float(r["g"]), float(r["kl_rescaled"])))
for n, pts in sorted(series.items()):
    pts.sort()
    axes[0].plot(*zip(*pts), label=f"N={n}")
axes[0].set_xlabel("g"); axes[0].set_ylabel("rescaled KL fidelity")
axes[0].legend(fontsize=7)
pts = [(int(r["N"]), float(r["g_c"])) for r in trans
       if r["boundary_flag"] == "False"]
if pts:
    pts.sort()
    axes[1].loglog(*zip(*pts), "o-")
axes[1].set_xlabel("N"); axes[1].set_ylabel("g_c")
fig.tight_layout()
fig.savefig("fig3.png", dpi=160)
print("wrote fig3.png")
'''

_FIG4_PLOT = _PLOT_PRELUDE + '''\
rows = read_csv("fig4_ess_hist.csv")
gs = sorted({(r["state"], float(r["g"])) for r in rows})
cols = min(4, len(gs))
rowsn = (len(gs) + cols - 1) // cols
fig, axes = plt.subplots(rowsn, cols, figsize=(3.2 * cols, 2.6 * rowsn),
                         squeeze=False)
for k, (state, g) in enumerate(gs):
    ax = axes[k // cols][k % cols]
    sel = [r for r in rows if r["state"] == state and abs(float(r["g"]) - g) < 1e-12]
    mids = [(float(r["bin_lo"]) + float(r["bin_hi"])) / 2 for r in sel]
    ax.bar(mids, [float(r["density"]) for r in sel],
           width=float(sel[0]["bin_hi"]) - float(sel[0]["bin_lo"]), alpha=0.5)
    ax.plot(mids, [float(r["poisson_density"]) for r in sel], "b-", lw=1,
            label="Poisson")
    ax.plot(mids, [float(r["wd_density"]) for r in sel], "r--", lw=1,
            label=sel[0]["wd_kind"])
    ax.set_xlim(0, 4)
    ax.set_title(f"{state} g={g:g}", fontsize=8)
    ax.legend(fontsize=6)
fig.tight_layout()
fig.savefig("fig4.png", dpi=160)
print("wrote fig4.png")
'''

_FIG5_PLOT = _PLOT_PRELUDE + '''\
rows = read_csv("fig5_sre.csv")
fig, axes = plt.subplots(1, 3, figsize=(13, 4))
series = defaultdict(list)
for r in rows:
    if r["state"] == "gs":
        series[int(r["N"])].append((float(r["g"]), float(r["M2_mean"])))
for n, pts in sorted(series.items()):
    pts.sort()
    axes[0].plot(*zip(*pts), label=f"N={n}")
axes[0].set_xlabel("g"); axes[0].set_ylabel("mean M2"); axes[0].legend(fontsize=7)
groups = read_csv("fig5_groups.csv")
for label in sorted({r["group"] for r in groups}):
    pts = sorted((int(r["N"]), float(r["M2_over_n"])) for r in groups
                 if r["group"] == label)
    axes[1].plot(*zip(*pts), "o-", label=label)
axes[1].set_xlabel("N"); axes[1].set_ylabel("M2 / n"); axes[1].legend(fontsize=7)
g0 = sorted((int(r["N"]) // 2, float(r["M2_mean"]), float(r["haar_reference"]),
             float(r["golden_reference"])) for r in rows
            if r["state"] == "gs" and float(r["g"]) == 0.0)
if g0:
    ns = [p[0] for p in g0]
    axes[2].plot(ns, [p[1] for p in g0], "o-", label="SYK-4 GS")
    axes[2].plot(ns, [p[2] for p in g0], "k--", label="Haar")
    axes[2].plot(ns, [p[3] for p in g0], "m:", label="golden product")
    axes[2].set_xlabel("qubits n"); axes[2].set_ylabel("M2"); axes[2].legend(fontsize=7)
fig.tight_layout()
fig.savefig("fig5.png", dpi=160)
print("wrote fig5.png")
'''

_FIG6_PLOT = _PLOT_PRELUDE + '''\
rows = read_csv("fig6_capacity.csv")
states = sorted({r["state"] for r in rows})
fig, axes = plt.subplots(1, len(states), figsize=(4.5 * len(states), 4),
                         squeeze=False)
for j, state in enumerate(states):
    ax = axes[0][j]
    series = defaultdict(list)
    for r in rows:
        if r["state"] == state:
            series[int(r["N"])].append((float(r["g"]),
                                        float(r["abs_capacity_mean"])))
    for n, pts in sorted(series.items()):
        pts.sort()
        ax.plot(*zip(*pts), label=f"N={n}")
    ax.axhline(float(rows[0]["haar_reference"]), ls="--", c="k", lw=0.8,
               label="|Haar|")
    ax.set_xlabel("g"); ax.set_ylabel("|C_E|")
    ax.set_title(state.upper()); ax.legend(fontsize=7)
fig.tight_layout()
fig.savefig("fig6.png", dpi=160)
print("wrote fig6.png")
'''

_DOS_PLOT = _PLOT_PRELUDE + '''\
rows = read_csv("dos_hist.csv")
gs = sorted({float(r["g"]) for r in rows})
cols = min(4, len(gs))
rowsn = (len(gs) + cols - 1) // cols
fig, axes = plt.subplots(rowsn, cols, figsize=(3.2 * cols, 2.6 * rowsn),
                         squeeze=False)
for k, g in enumerate(gs):
    ax = axes[k // cols][k % cols]
    sel = [r for r in rows if abs(float(r["g"]) - g) < 1e-12]
    mids = [(float(r["bin_lo"]) + float(r["bin_hi"])) / 2 for r in sel]
    ax.fill_between(mids, [float(r["density"]) for r in sel], alpha=0.6)
    ax.set_title(f"g={g:g}", fontsize=8)
fig.tight_layout()
fig.savefig("dos.png", dpi=160)
print("wrote dos.png")
'''

_GAP_PLOT = _PLOT_PRELUDE + '''\
rows = read_csv("gap_mean.csv")
fig, ax = plt.subplots(figsize=(5, 4))
series = defaultdict(list)
for r in rows:
    series[float(r["g"])].append((int(r["N"]), float(r["gap_mean"])))
for g, pts in sorted(series.items()):
    pts.sort()
    ax.loglog(*zip(*pts), "o-", label=f"g={g:g}")
ax.set_xlabel("N"); ax.set_ylabel("mean gap")
ax.legend(fontsize=7)
fig.tight_layout()
fig.savefig("gap.png", dpi=160)
print("wrote gap.png")
'''


def _write_plot_script(path: Path, body: str) -> None:
    path.write_text(body)
    path.chmod(0o755)
