"""Experiment orchestration: disorder-ensemble scheduling, parallel
execution, JSON-lines persistence, merging, and figure-data emission.

A work unit is one (N, realization); the g sweep runs inside the unit so
each Hamiltonian pair is built once and rescaled, which is where the cost
of large-N SYK-4 construction is amortized.  Workers share nothing and
write one append-only record file per unit via an atomic rename, so runs
are crash-safe, resumable, and bit-identical for a fixed (config, seed)
regardless of the worker count.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .entanglement import (
    Bipartition,
    capacity_of_entanglement,
    log_antiflatness,
    partial_trace,
    renyi_entropy,
    sample_subsets,
)
from .spacings import gap_ratios
from .spectra import (
    _canonical_phase,
    collapse_degenerate,
    parity_sector_indices,
    strip_paired,
)
from .sre import exact_sre, mps_compress, sampled_sre2
from .syk import assemble_sparse, build_hamiltonian_pair, estimate_assembly_bytes

DIAGNOSTICS = ("entropy", "rdm_curve", "ess", "kl_fidelity", "sre",
               "capacity", "antiflatness", "dos", "gap")
STATE_KINDS = ("gs", "ms")

# realization schedule per Majorana count (ensemble sizes shrink with N)
DEFAULT_REALIZATIONS = {
    6: 1000, 8: 1000, 10: 1000,
    12: 400, 14: 400,
    16: 200, 18: 200, 20: 200,
    22: 100, 24: 100, 26: 100,
    28: 50, 30: 30, 32: 10,
}

ENTROPY_ALPHAS = (1.0, 2.0, 3.0)
SRE_SAMPLES = 10_000
SRE_EXACT_LIMIT = 8


class StoreConflictError(RuntimeError):
    """Two stores disagree on the payload of the same record key."""


@dataclass(frozen=True)
class ExperimentConfig:
    n_list: tuple[int, ...]
    seed: int = 0
    g_start: float = 0.0
    g_stop: float = 1.0
    g_step: float = 0.01
    sre_step: float = 0.05
    realizations: dict | None = None       # per-N override of the schedule
    diagnostics: tuple[str, ...] = ("entropy",)
    states: tuple[str, ...] = ("gs", "ms")
    bipartition_count: int | None = None   # default: the fermion count N
    f: float = 0.5
    output_dir: str = "runs/out"
    dense_limit: int = 1 << 13
    memory_cap_mb: int = 4096
    threads: int = 1

    def __post_init__(self):
        object.__setattr__(self, "n_list", tuple(int(n) for n in self.n_list))
        object.__setattr__(self, "diagnostics", tuple(self.diagnostics))
        object.__setattr__(self, "states", tuple(self.states))
        for n in self.n_list:
            if n % 2 or n < 4:
                raise ValueError(f"N={n} must be an even Majorana count >= 4")
        for d in self.diagnostics:
            if d not in DIAGNOSTICS:
                raise ValueError(f"unknown diagnostic {d!r}")
        for s in self.states:
            if s not in STATE_KINDS:
                raise ValueError(f"unknown state kind {s!r}")
        if not 0.0 <= self.g_start <= self.g_stop <= 1.0:
            raise ValueError("g grid must satisfy 0 <= start <= stop <= 1")
        if self.g_step <= 0:
            raise ValueError("g step must be positive")

    # -- derived schedule ---------------------------------------------------

    def realization_count(self, n_majorana: int) -> int:
        table = dict(DEFAULT_REALIZATIONS)
        if self.realizations:
            table.update({int(k): int(v) for k, v in self.realizations.items()})
        if n_majorana not in table:
            raise ValueError(f"no realization count configured for N={n_majorana}")
        return table[n_majorana]

    def g_grid(self) -> list[float]:
        count = int(round((self.g_stop - self.g_start) / self.g_step))
        grid = [round(self.g_start + k * self.g_step, 10) for k in range(count + 1)]
        return [g for g in grid if g <= self.g_stop + 1e-12]

    def sre_grid(self) -> list[float]:
        out = []
        for g in self.g_grid():
            ratio = g / self.sre_step
            if abs(ratio - round(ratio)) < 1e-9:
                out.append(g)
        return out

    def subsystem_size(self, n_majorana: int) -> int:
        # R = floor(f * n); odd qubit counts round down, as for half
        # bipartitions of N = 22 -> n = 11 -> R = 5
        return max(1, int(math.floor(self.f * (n_majorana // 2) + 1e-9)))

    def bipartitions_for(self, n_majorana: int) -> list[Bipartition]:
        n = n_majorana // 2
        r = self.subsystem_size(n_majorana)
        count = self.bipartition_count or n_majorana
        count = min(count, math.comb(n, r))
        return sample_subsets(n, r, count, seed=self.seed)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> str:
        raw = asdict(self)
        if raw["realizations"] is not None:
            raw["realizations"] = {str(k): v for k, v in raw["realizations"].items()}
        return json.dumps(raw, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        raw = json.loads(text)
        if raw.get("realizations") is not None:
            raw["realizations"] = {int(k): int(v)
                                   for k, v in raw["realizations"].items()}
        for key in ("n_list", "diagnostics", "states"):
            if key in raw:
                raw[key] = tuple(raw[key])
        return cls(**raw)

    def config_hash(self) -> str:
        """Hash of the physics-defining fields only.

        Output location, thread count and resource caps do not change any
        record payload, so two runs differing only in those must produce
        byte-identical stores under the same hash.
        """
        raw = asdict(self)
        for transient in ("output_dir", "threads", "memory_cap_mb",
                          "dense_limit"):
            raw.pop(transient, None)
        if raw["realizations"] is not None:
            raw["realizations"] = {str(k): v
                                   for k, v in raw["realizations"].items()}
        text = json.dumps(raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def unit_seed(base_seed: int, n_majorana: int, realization: int) -> int:
    """Well-mixed per-unit seed, a pure function of (base, N, m)."""
    ss = np.random.SeedSequence([base_seed, n_majorana, realization])
    return int(ss.generate_state(1, np.uint64)[0])


def _record(key: dict, payload, provenance: dict) -> dict:
    return {"key": key, "payload": payload, "provenance": provenance}


def record_line(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _key_text(record: dict) -> str:
    return json.dumps(record["key"], sort_keys=True, separators=(",", ":"))


def _sector_eigh(block: np.ndarray, vectors: bool):
    import scipy.linalg as sla

    if vectors:
        return sla.eigh(block)
    return sla.eigvalsh(block), None


def compute_unit(config: ExperimentConfig, n_majorana: int,
                 realization: int) -> list[dict]:
    """All records for one (N, realization) across the g sweep.

    Couplings are sampled once; H(g) reuses the same assembled pair.  The
    ground state is resolved per fermion-parity sector, which keeps the
    state deterministic and smooth through the exact degeneracies of the
    SYK-4 point.
    """
    n = n_majorana // 2
    dim = 1 << n
    seed = unit_seed(config.seed, n_majorana, realization)
    provenance = {"version": __version__, "config_hash": config.config_hash()}

    h4, h2 = build_hamiltonian_pair(n_majorana, seed=seed)
    cap = config.memory_cap_mb * (1 << 20)
    need = estimate_assembly_bytes(h4) + estimate_assembly_bytes(h2)
    if need > cap:
        raise MemoryError(f"unit N={n_majorana} m={realization} needs ~{need} bytes")
    a4 = assemble_sparse(h4).toarray()
    a2 = assemble_sparse(h2).toarray()

    sectors = parity_sector_indices(n)
    blocks4 = [a4[np.ix_(s, s)] for s in sectors]
    blocks2 = [a2[np.ix_(s, s)] for s in sectors]

    diagnostics = set(config.diagnostics)
    if "kl_fidelity" in diagnostics:
        diagnostics.add("rdm_curve")       # scans are derived from these
    state_diags = diagnostics & {"entropy", "rdm_curve", "ess", "sre",
                                 "capacity", "antiflatness"}
    need_ms = bool(state_diags) and "ms" in config.states
    need_gs = bool(state_diags) and "gs" in config.states

    bips = config.bipartitions_for(n_majorana) if (
        diagnostics & {"entropy", "capacity", "antiflatness"}) else []
    r_half = config.subsystem_size(n_majorana)
    fixed_bip = Bipartition(n, tuple(range(1, r_half + 1)))
    sre_grid = set(config.sre_grid())

    records: list[dict] = []
    for g in config.g_grid():
        hb = [(1.0 - g) * b4 + g * b2 for b4, b2 in zip(blocks4, blocks2)]
        want_vectors = need_gs or need_ms
        eigs = []
        vecs = []
        for block in hb:
            w, v = _sector_eigh(block, want_vectors or need_ms)
            eigs.append(w)
            vecs.append(v)

        merged = np.sort(np.concatenate(eigs))
        base_key = {"N": n_majorana, "m": realization, "seed": seed, "g": g}

        if "dos" in diagnostics:
            records.append(_record(
                {**base_key, "state": None, "diagnostic": "dos"},
                [float(x) for x in strip_paired(merged)], provenance))
        if "gap" in diagnostics:
            levels = collapse_degenerate(merged)
            gap = float(levels[1] - levels[0]) if levels.size > 1 else 0.0
            records.append(_record(
                {**base_key, "state": None, "diagnostic": "gap"},
                gap, provenance))

        states: dict[str, np.ndarray] = {}
        if want_vectors:
            if need_gs:
                # two lowest levels across sectors; an exactly degenerate
                # doublet is mixed with equal weight (generic eigenspace
                # member, deterministic via canonical phases)
                cands = sorted(
                    (w[k], s, k) for s, w in enumerate(eigs) for k in (0, 1))
                (e0, s0, k0), (e1, s1, k1) = cands[0], cands[1]
                vec = np.zeros(dim, dtype=complex)
                vec[sectors[s0]] = vecs[s0][:, k0]
                if e1 - e0 <= 1e-9:
                    other = np.zeros(dim, dtype=complex)
                    other[sectors[s1]] = vecs[s1][:, k1]
                    vec = (_canonical_phase(vec) + _canonical_phase(other))
                    vec /= np.sqrt(2.0)
                states["gs"] = vec
            if need_ms:
                # middle state: energy closest to zero across both sectors
                cands = [(abs(w[k]), s, k) for s, w in enumerate(eigs)
                         for k in (np.argmin(np.abs(w)),)]
                _, si_m, k_m = min(cands)
                vec_m = np.zeros(dim, dtype=complex)
                vec_m[sectors[si_m]] = vecs[si_m][:, k_m]
                states["ms"] = vec_m

        for state_kind in config.states:
            if state_kind not in states:
                continue
            psi = states[state_kind]
            key = {**base_key, "state": state_kind}

            if diagnostics & {"rdm_curve", "ess"}:
                spec = partial_trace(psi, fixed_bip)
                if "rdm_curve" in diagnostics:
                    records.append(_record(
                        {**key, "diagnostic": "rdm_curve"},
                        [float(x) for x in spec.eigenvalues], provenance))
                if "ess" in diagnostics:
                    try:
                        ratios = gap_ratios(np.sort(spec.eigenvalues))
                    except ValueError:
                        ratios = []      # spectrum too degenerate to resolve
                    records.append(_record(
                        {**key, "diagnostic": "ess"},
                        [float(x) for x in ratios], provenance))

            if diagnostics & {"entropy", "capacity", "antiflatness"}:
                specs = [partial_trace(psi, b) for b in bips]
                if "entropy" in diagnostics:
                    payload = [[round(a, 10) for a in ENTROPY_ALPHAS],
                               [[float(renyi_entropy(s, a))
                                 for a in ENTROPY_ALPHAS] for s in specs]]
                    records.append(_record(
                        {**key, "diagnostic": "entropy"}, payload, provenance))
                if "capacity" in diagnostics:
                    val = float(np.mean([capacity_of_entanglement(s)
                                         for s in specs]))
                    records.append(_record(
                        {**key, "diagnostic": "capacity"}, val, provenance))
                if "antiflatness" in diagnostics:
                    val = float(np.mean([log_antiflatness(s) for s in specs]))
                    records.append(_record(
                        {**key, "diagnostic": "antiflatness"}, val, provenance))

            if "sre" in diagnostics and g in sre_grid:
                if n <= SRE_EXACT_LIMIT:
                    est = exact_sre(psi, 2.0)
                else:
                    mps = mps_compress(psi, chi_max=1 << (n // 2 + 1),
                                       cutoff=1e-8)
                    est = sampled_sre2(mps, SRE_SAMPLES,
                                       seed=unit_seed(seed, n_majorana,
                                                      int(round(g * 1000))))
                records.append(_record(
                    {**key, "diagnostic": "sre"},
                    {"value": est.value, "std_error": est.std_error,
                     "n_samples": est.n_samples, "method": est.method},
                    provenance))
    return records


# -- persistence ---------------------------------------------------------------

def _unit_filename(n_majorana: int, realization: int) -> str:
    return f"N{n_majorana:02d}_m{realization:05d}.jsonl"


def _write_unit_file(path: Path, records: list[dict]) -> None:
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    with open(tmp, "w") as fh:
        for rec in records:
            fh.write(record_line(rec) + "\n")
    os.replace(tmp, path)


def _compute_and_write(args) -> str:
    config, n_majorana, realization, path = args
    records = compute_unit(config, n_majorana, realization)
    _write_unit_file(Path(path), records)
    return str(path)


@dataclass
class RunResult:
    store_dir: str
    computed: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    pending: list[dict] = field(default_factory=list)

    @property
    def partial(self) -> bool:
        return bool(self.pending)


def run_experiment(config: ExperimentConfig) -> RunResult:
    """Execute the configured sweep; existing unit files are skipped.

    Work units whose assembly would breach the memory cap are not failed:
    they are listed in pending_manifest.json and reported in the result.
    """
    out = Path(os.environ.get("SYKLAB_OUT", "") or config.output_dir)
    records_dir = out / "records"
    records_dir.mkdir(parents=True, exist_ok=True)
    meta_path = out / "meta.json"
    if meta_path.exists():
        stored = json.loads(meta_path.read_text())
        if stored.get("config_hash") != config.config_hash():
            raise ValueError(
                f"output dir {out} belongs to a different config "
                f"({stored.get('config_hash')} != {config.config_hash()})")
    else:
        meta_path.write_text(json.dumps(
            {"config": json.loads(config.to_json()),
             "config_hash": config.config_hash(),
             "version": __version__}, indent=2, sort_keys=True))

    result = RunResult(store_dir=str(out))
    todo = []
    for n_majorana in config.n_list:
        m_count = config.realization_count(n_majorana)
        n = n_majorana // 2
        # conservative per-unit memory screen before any work happens
        approx_groups = math.comb(n, 4) + math.comb(n, 2) + n + 1
        approx_bytes = 4 * approx_groups * (1 << n) * 20 + 3 * (1 << (2 * n)) * 16
        if approx_bytes > config.memory_cap_mb * (1 << 20):
            for m in range(m_count):
                result.pending.append(
                    {"N": n_majorana, "m": m, "estimated_bytes": approx_bytes})
            continue
        for m in range(m_count):
            path = records_dir / _unit_filename(n_majorana, m)
            if path.exists():
                result.skipped.append(str(path))
            else:
                todo.append((config, n_majorana, m, str(path)))

    if config.threads > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            for path in pool.map(_compute_and_write, todo, chunksize=1):
                result.computed.append(path)
    else:
        for args in todo:
            result.computed.append(_compute_and_write(args))

    if result.pending:
        (out / "pending_manifest.json").write_text(
            json.dumps(result.pending, indent=2, sort_keys=True))
    return result


def load_store(store_dir) -> list[dict]:
    """All records of a store (unit files and/or a merged file)."""
    store_dir = Path(store_dir)
    records = []
    paths = sorted(store_dir.glob("records/*.jsonl")) + sorted(
        store_dir.glob("*.jsonl"))
    for path in paths:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    records.append(json.loads(line))
    return records


def merge_stores(stores: list) -> list[dict]:
    """Union of record lists; identical keys must carry identical payloads."""
    merged: dict[str, dict] = {}
    for store in stores:
        records = store if isinstance(store, list) else load_store(store)
        for rec in records:
            key = _key_text(rec)
            body = record_line(rec)
            if key in merged:
                if record_line(merged[key]) != body:
                    raise StoreConflictError(
                        f"conflicting payloads for key {key}")
            else:
                merged[key] = rec
    return [merged[k] for k in sorted(merged)]


def write_merged_store(records: list[dict], out_dir) -> Path:
    """Canonical merged artifact: key-sorted JSON lines (byte-reproducible)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "merged.jsonl"
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    with open(tmp, "w") as fh:
        for rec in records:
            fh.write(record_line(rec) + "\n")
    os.replace(tmp, path)
    return path
