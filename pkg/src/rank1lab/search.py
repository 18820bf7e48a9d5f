"""Checkpointed search for orbits that survive the rank-one filters.

Origamis are enumerated in a fixed order, one candidate is kept per
SL(2,Z)-orbit, and the filters run in the order requested, stopping at the
first failure.  Reports go to a line-delimited file followed by a summary
record.  A checkpoint next to the cache directory records how far the job
got, so an interrupted run can be resumed and produces the same bytes.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .degeneration import rank1_filter
from .errors import IoFailure, ResumeMismatch
from .lyapunov import random_walk_exponents
from .origami import Origami, Stratum, canonical_form, enumerate_origamis, genus, loads
from .sl2z import cusps, orbit

BATCH = 1000
FILTERS = ("config", "pinch", "lyapunov")


@dataclass
class SearchJob:
    strata: list = field(default_factory=list)  # zero-order tuples; empty means any
    min_squares: int = 1
    max_squares: int = 1
    filters: list = field(default_factory=lambda: ["config", "pinch"])
    steps: int = 100_000
    seed: int = 0
    tol: float = 0.05
    output_path: str = "search.jsonl"
    inputs: list = field(default_factory=list)  # explicit candidate files

    def config(self) -> dict:
        d = asdict(self)
        d["strata"] = [list(s) for s in self.strata]
        d["output_path"] = str(Path(self.output_path).resolve())
        d["inputs"] = [str(Path(p).resolve()) for p in self.inputs]
        return d


def cache_dir() -> Path:
    return Path(os.environ.get("RANK1LAB_CACHE_DIR") or Path.home() / ".cache" / "rank1lab")


def checkpoint_path(job: SearchJob) -> Path:
    key = hashlib.sha256(str(Path(job.output_path).resolve()).encode()).hexdigest()[:16]
    return cache_dir() / f"search-{key}.json"


def _read_inputs(paths) -> list[Origami]:
    out = []
    for p in paths:
        try:
            text = Path(p).read_text()
        except OSError as exc:
            raise IoFailure(f"cannot read {p}: {exc}") from exc
        for line in text.splitlines():
            if line.strip():
                out.append(canonical_form(loads(line)))
    return out


def candidate_stream(job: SearchJob):
    """Canonical origamis in search order (explicit inputs first)."""
    yield from _read_inputs(job.inputs)
    strata = [Stratum(tuple(s)) for s in job.strata] or [None]
    for n in range(job.min_squares, job.max_squares + 1):
        for s in strata:
            yield from enumerate_origamis(n, s)


def evaluate(o: Origami, job_cfg: dict) -> dict:
    """Candidate report for the orbit of ``o``; runs in worker processes."""
    orb = orbit(o)
    rec = {
        "origami": orb.members[0].to_dict(),
        "orbit_size": len(orb),
        "cusp_count": len(cusps(orb)),
        "filter_report": None,
        "lyapunov_estimate": None,
        "verdict": "pass",
    }
    for f in job_cfg["filters"]:
        if f in ("config", "pinch"):
            rep = rank1_filter(orb.members[0], stages=(f,), orb=orb)
            d = rep.to_dict()
            prev = rec["filter_report"]
            if prev is not None:
                d["directions_checked"] += prev["directions_checked"]
            rec["filter_report"] = d
            if not rep.passed:
                rec["verdict"] = "fail"
                break
        elif f == "lyapunov":
            if genus(o) < 2:
                continue
            est = random_walk_exponents(o, job_cfg["steps"], job_cfg["seed"])
            rec["lyapunov_estimate"] = est.to_dict()
            g = len(est.exponents) // 2
            if not all(abs(x) < job_cfg["tol"] for x in est.exponents[1:g]):
                rec["verdict"] = "fail"
                break
    return rec


def _orbit_keys(o: Origami) -> set:
    return set(orbit(o).index)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def run_search(job: SearchJob, resume: bool = False, threads: int = 1, batch: int = BATCH) -> dict:
    cfg = job.config()
    ck = checkpoint_path(job)
    out = Path(job.output_path)
    state = {"config": cfg, "consumed": 0, "bytes": 0, "done": False}

    seen: set = set()
    if resume and ck.exists():
        try:
            prev = json.loads(ck.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise IoFailure(f"cannot read checkpoint {ck}: {exc}") from exc
        if prev.get("config") != cfg:
            raise ResumeMismatch("checkpoint was written by a different job configuration")
        state = prev
        try:
            with open(out, "r+b") as fh:
                fh.truncate(state["bytes"])
            lines = out.read_text().splitlines()
        except OSError as exc:
            raise IoFailure(f"cannot reopen {out}: {exc}") from exc
        if state["done"]:
            return json.loads(lines[-1])
        for line in lines:
            seen |= _orbit_keys(loads(_dump(json.loads(line)["origami"])))
    else:
        try:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_bytes(b"")
        except OSError as exc:
            raise IoFailure(f"cannot write {out}: {exc}") from exc

    def save_checkpoint():
        try:
            ck.parent.mkdir(parents=True, exist_ok=True)
            tmp = ck.with_suffix(".tmp")
            tmp.write_text(_dump(state))
            os.replace(tmp, ck)
        except OSError as exc:
            raise IoFailure(f"cannot write checkpoint {ck}: {exc}") from exc

    pool = ProcessPoolExecutor(threads) if threads > 1 else None
    try:
        fh = open(out, "ab")
    except OSError as exc:
        raise IoFailure(f"cannot write {out}: {exc}") from exc
    try:
        stream = candidate_stream(job)
        for _ in range(state["consumed"]):
            next(stream)
        while True:
            chunk = []
            for o in stream:
                chunk.append(o)
                if len(chunk) == batch:
                    break
            if not chunk:
                break
            todo = []
            for o in chunk:
                if o.key() in seen:
                    continue
                keys = _orbit_keys(o)
                seen |= keys
                todo.append(o)
            if pool is not None:
                recs = list(pool.map(evaluate, todo, [cfg] * len(todo)))
            else:
                recs = [evaluate(o, cfg) for o in todo]
            for rec in recs:
                fh.write((_dump(rec) + "\n").encode())
            fh.flush()
            os.fsync(fh.fileno())
            state["consumed"] += len(chunk)
            state["bytes"] = fh.tell()
            save_checkpoint()

        summary = _summary(out, cfg)
        fh.write((_dump(summary) + "\n").encode())
        fh.flush()
        state["bytes"] = fh.tell()
        state["done"] = True
        save_checkpoint()
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    finally:
        fh.close()
        if pool is not None:
            pool.shutdown()
    return summary


def _summary(out: Path, cfg: dict) -> dict:
    recs = [json.loads(line) for line in out.read_text().splitlines() if line.strip()]
    passing = [r["origami"] for r in recs if r["verdict"] == "pass"]
    return {
        "summary": True,
        "candidates": len(recs),
        "passed": len(passing),
        "passing_origamis": passing,
        "strata": cfg["strata"],
        "squares": [cfg["min_squares"], cfg["max_squares"]],
        "filters": cfg["filters"],
        "bounded_search": True,
    }
