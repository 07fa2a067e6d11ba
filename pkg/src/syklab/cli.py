"""Command-line front end.

Subcommands: build, run, merge, report, fit, references, selftest.
Exit codes: 0 on success, 2 on partial completion (a manifest of pending
or missing work was emitted), 1 on error.  The SYKLAB_OUT environment
variable overrides the run output directory.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np


def _parse_g(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) == 1:
        g = float(parts[0])
        return g, g, 1.0
    if len(parts) == 3:
        return float(parts[0]), float(parts[1]), float(parts[2])
    raise argparse.ArgumentTypeError("expected G or START:STOP:STEP")


def _parse_realizations(text: str):
    if "=" not in text:
        return int(text)
    table = {}
    for item in text.split(","):
        n, m = item.split("=")
        table[int(n)] = int(m)
    return table


def _cmd_build(args) -> int:
    from .syk import (DisorderSpec, assemble_sparse, build_interpolated,
                      build_syk, sample_couplings, write_hamiltonian_dump)

    if args.g is None:
        spec = DisorderSpec(args.n, args.q, args.coupling, args.seed)
        h = build_syk(sample_couplings(spec))
        q, g = args.q, 0.0
    else:
        h4 = build_syk(sample_couplings(DisorderSpec(args.n, 4, args.coupling,
                                                     args.seed)))
        h2 = build_syk(sample_couplings(DisorderSpec(args.n, 2, args.coupling,
                                                     args.seed)))
        h = build_interpolated(h4, h2, args.g)
        q, g = 0, args.g
    ham = assemble_sparse(h, memory_budget_bytes=args.memory_cap_mb << 20)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_hamiltonian_dump(out, ham, seed=args.seed, n_majorana=args.n,
                           q=q, g=g)
    print(f"wrote {out} (dim={ham.dim}, nnz={ham.matrix.nnz})")
    return 0


def _cmd_run(args) -> int:
    from .runner import ExperimentConfig, run_experiment

    if args.config:
        config = ExperimentConfig.from_json(Path(args.config).read_text())
        updates = {}
        if args.n:
            updates["n_list"] = tuple(args.n)
        if args.seed is not None:
            updates["seed"] = args.seed
        if args.g:
            updates["g_start"], updates["g_stop"], updates["g_step"] = args.g
        if args.realizations is not None:
            updates["realizations"] = _realization_table(args)
        if args.diagnostics:
            updates["diagnostics"] = tuple(args.diagnostics.split(","))
        if args.out:
            updates["output_dir"] = args.out
        if args.threads:
            updates["threads"] = args.threads
        if updates:
            from dataclasses import replace
            config = replace(config, **updates)
    else:
        if not args.n:
            print("error: --n or --config is required", file=sys.stderr)
            return 1
        g = args.g or (0.0, 1.0, 0.01)
        config = ExperimentConfig(
            n_list=tuple(args.n),
            seed=args.seed if args.seed is not None else 0,
            g_start=g[0], g_stop=g[1], g_step=g[2],
            realizations=_realization_table(args),
            diagnostics=tuple((args.diagnostics or "entropy").split(",")),
            output_dir=args.out or "runs/out",
            threads=args.threads or 1,
        )
    result = run_experiment(config)
    print(f"store: {result.store_dir}")
    print(f"computed {len(result.computed)} unit(s), "
          f"skipped {len(result.skipped)} existing")
    if result.partial:
        print(f"pending (over memory cap): {len(result.pending)} unit(s); "
              f"see pending_manifest.json")
        return 2
    return 0


def _realization_table(args):
    if args.realizations is None:
        return None
    table = _parse_realizations(args.realizations)
    if isinstance(table, int):
        return {n: table for n in (args.n or [])}
    return table


def _cmd_merge(args) -> int:
    from .runner import merge_stores, write_merged_store

    records = merge_stores(list(args.stores))
    path = write_merged_store(records, args.out)
    print(f"wrote {path} ({len(records)} records)")
    return 0


def _cmd_report(args) -> int:
    from .reports import emit_report
    from .runner import load_store

    records = load_store(args.store)
    manifest = emit_report(records, args.figure, args.out)
    print(json.dumps(manifest, indent=2, sort_keys=True))
    return 0 if "written" in manifest else 2


def _cmd_fit(args) -> int:
    from . import fits

    xs, ys = [], []
    with open(args.csv) as fh:
        for row in csv.DictReader(fh):
            xs.append(float(row[args.x]))
            ys.append(float(row[args.y]))
    if args.model == "linear":
        result = fits.linear_fit(xs, ys)
    elif args.model == "power_law":
        result = fits.power_law_fit(xs, ys)
    elif args.model in ("one_minus_a_exp", "a_times_one_minus_exp"):
        result = fits.saturating_exponential_fit(xs, ys, args.model,
                                                 errors=args.errors)
    elif args.model == "polynomial_peak":
        location, result = fits.polynomial_peak(xs, ys, degree=args.degree)
        print(json.dumps({"peak": location}, indent=2))
    else:
        print(f"error: unknown model {args.model}", file=sys.stderr)
        return 1
    print(result.to_json(indent=2))
    return 0


def _cmd_references(_args) -> int:
    from .entanglement import (HAAR_CAPACITY, HAAR_LOG_ANTIFLATNESS,
                               syk2_entropy_coefficient)
    from .spacings import (RBAR_GOE, RBAR_GSE, RBAR_GUE, RBAR_POISSON)

    refs = {
        "rbar": {"poisson": RBAR_POISSON, "goe": RBAR_GOE, "gue": RBAR_GUE,
                 "gse": RBAR_GSE},
        "haar": {
            "capacity_of_entanglement": HAAR_CAPACITY,
            "log_antiflatness": HAAR_LOG_ANTIFLATNESS,
            "page_rescaled_at_half": 1.0,
            "sre2_per_qubit_offset": -2.0,
        },
        "syk2": {
            "entropy_coefficient_at_half": syk2_entropy_coefficient(0.5),
        },
        "golden_state": {"sre2_per_qubit": math.log2(1.5)},
        "sre_fits": {"gs": {"a": -2.4, "b": 0.95}, "ms": {"a": -2.6, "b": 0.96}},
        "wd_normalizations": {"Z1": 8 / 27, "Z2": (4 / 81) * math.pi / math.sqrt(3),
                              "Z4": (4 / 729) * math.pi / math.sqrt(3)},
    }
    print(json.dumps(refs, indent=2, sort_keys=True))
    return 0


def _cmd_selftest(_args) -> int:
    """Fast oracle suite: exact algebra identities and reference constants."""
    import scipy.integrate as si

    from .ensembles import sample_rmt_spectrum
    from .entanglement import marchenko_pastur_eta, syk2_log_antiflatness
    from .pauli import PauliString, multiply
    from .spacings import (RBAR_POISSON, average_ratio, reference_pdf)
    from .sre import exact_sre, golden_product_state, golden_sre2
    from .syk import jordan_wigner, majorana_product

    failures = 0

    def check(name, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1

    # pauli products against the dense Kronecker oracle on 2 qubits
    import itertools

    ok = True
    letters = ["I", "X", "Y", "Z"]
    for a, b in itertools.product(itertools.product(letters, repeat=2),
                                  repeat=2):
        pa = PauliString.from_label("".join(a))
        pb = PauliString.from_label("".join(b))
        m = multiply(pa, pb).to_matrix()
        ok &= bool(np.allclose(m, pa.to_matrix() @ pb.to_matrix(), atol=1e-12))
    check("pauli product matches dense oracle (2 qubits)", ok)

    ok = True
    for n_major in (4, 8, 12):
        chis = [jordan_wigner(i, n_major) for i in range(1, n_major + 1)]
        for i, ci in enumerate(chis):
            ok &= (ci * ci).is_identity
            for cj in chis[i + 1:]:
                ab, ba = ci * cj, cj * ci
                ok &= ab.x_mask == ba.x_mask and ab.z_mask == ba.z_mask
                ok &= (ab.phase_exp - ba.phase_exp) % 4 == 2
    check("jordan-wigner anticommutation and involution", ok)

    ok = True
    for kind in ("poisson", "wd_goe", "wd_gue", "wd_gse"):
        val, _err = si.quad(lambda r: reference_pdf(kind, r), 0, np.inf,
                            limit=200)
        ok &= abs(val - 1.0) < 1e-6
    check("reference ratio PDFs integrate to 1", ok)

    levels = [sample_rmt_spectrum("poisson_levels", 512, seed)
              for seed in range(40)]
    rbar = average_ratio(levels)
    check("poisson rbar near 2 ln 2 - 1",
          abs(rbar - RBAR_POISSON) < 0.01)

    est = exact_sre(golden_product_state(3))
    check("golden-state SRE (exact path)",
          abs(est.value - golden_sre2(3)) < 1e-9)

    check("marchenko-pastur endpoints",
          abs(marchenko_pastur_eta(0.0) - 1.0) < 1e-12
          and abs(marchenko_pastur_eta(1.0)) < 1e-12)

    check("SYK-2 anti-flatness series vanishes as f -> 0",
          abs(syk2_log_antiflatness(4, 1e-9)) < 1e-6)

    ok = True
    for n_major in (4, 6):
        for tup in itertools.combinations(range(1, n_major + 1), 4):
            s = majorana_product(tup, n_major)
            ok &= s.is_hermitian
    check("majorana quad products hermitian", ok)

    print(f"{'OK' if failures == 0 else 'FAILED'}: "
          f"{failures} failure(s)")
    return 0 if failures == 0 else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="syklab",
        description="SYK-4 + SYK-2 interpolation laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build one Hamiltonian and dump it")
    p.add_argument("--n", type=int, required=True, help="Majorana count")
    p.add_argument("--q", type=int, default=4, choices=(2, 4))
    p.add_argument("--g", type=float, default=None,
                   help="interpolation parameter (builds H4/H2 pair)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coupling", type=float, default=1.0)
    p.add_argument("--memory-cap-mb", type=int, default=4096)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("run", help="run a configured ensemble sweep")
    p.add_argument("--config", help="JSON config path")
    p.add_argument("--n", type=int, action="append",
                   help="Majorana count (repeatable)")
    p.add_argument("--g", type=_parse_g, help="g grid START:STOP:STEP")
    p.add_argument("--seed", type=int)
    p.add_argument("--realizations",
                   help="count, or per-N table like 14=400,16=200")
    p.add_argument("--diagnostics",
                   help="comma list: entropy,rdm_curve,ess,kl_fidelity,"
                        "sre,capacity,antiflatness,dos,gap")
    p.add_argument("--out")
    p.add_argument("--threads", type=int)
    p.add_argument("--resume", action="store_true",
                   help="skip existing unit files (always on)")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("merge", help="merge record stores")
    p.add_argument("stores", nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_merge)

    p = sub.add_parser("report", help="emit figure CSVs and plot scripts")
    p.add_argument("--store", required=True)
    p.add_argument("--figure", required=True,
                   choices=("fig1", "fig2", "fig3", "fig4", "fig5", "fig6",
                            "dos", "gap"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("fit", help="fit a model to CSV columns")
    p.add_argument("--model", required=True,
                   choices=("linear", "power_law", "one_minus_a_exp",
                            "a_times_one_minus_exp", "polynomial_peak"))
    p.add_argument("--csv", required=True)
    p.add_argument("--x", default="x")
    p.add_argument("--y", default="y")
    p.add_argument("--degree", type=int, default=10)
    p.add_argument("--errors", default="jacobian",
                   choices=("jacobian", "bootstrap"))
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("references", help="dump all closed-form constants")
    p.set_defaults(func=_cmd_references)

    p = sub.add_parser("selftest", help="run the fast oracle suite")
    p.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, RuntimeError, MemoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
