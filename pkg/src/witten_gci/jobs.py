"""Job execution shared by the command line and the golden corpus.

A job is a plain dict (the ``jobs.json`` schema): ``command`` plus the
optional keys ``bundle``, ``w_bundle`` (lists of integer vectors), ``c1c``,
``q_order``, ``require_string``, ``max_degree``, ``max_bundles``, ``n``.
``run_job`` returns ``(exit_code, payload)``; payloads hold only strings,
integers, booleans and lists so canonical dumps are byte-stable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .charclass import LineBundleSum, RootBundle, c1_vector
from .cohomology import ManifoldModel, ModelError
from .conditions import (
    SearchSpaceError, check_string_gci, fano_c1_check, iter_string_configurations,
    vanishing_reason,
)
from .genus import DualPathMismatch, SpinCError, elliptic, phi_c, witten_of_gci_checked
from .qseries import DEFAULT_Q_ORDER

COMMANDS = ("genus", "phi-c", "elliptic", "check", "fano", "search")

EXIT_OK, EXIT_CONDITION, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class JobError(ValueError):
    """Bad job parameters (exit code 2)."""


def default_q_order() -> int:
    raw = os.environ.get("WITTEN_Q_ORDER")
    if raw is None:
        return DEFAULT_Q_ORDER
    try:
        q = int(raw)
    except ValueError as exc:
        raise JobError(f"WITTEN_Q_ORDER={raw!r} is not an integer") from exc
    if q < 0:
        raise JobError("WITTEN_Q_ORDER must be >= 0")
    return q


@dataclass
class JobSpec:
    command: str
    manifold_file: str | None = None
    bundle: list[list[int]] = field(default_factory=list)
    w_bundle: list[list[int]] | None = None
    c1c: list[int] | None = None
    q_order: int | None = None
    format: str = "text"
    require_string: bool = False
    max_degree: int = 2
    max_bundles: int = 3
    n: int | None = None

    def to_job(self) -> dict:
        job = {"command": self.command, "bundle": self.bundle}
        if self.w_bundle is not None:
            job["w_bundle"] = self.w_bundle
        if self.c1c is not None:
            job["c1c"] = self.c1c
        if self.q_order is not None:
            job["q_order"] = self.q_order
        if self.require_string:
            job["require_string"] = True
        if self.command == "search":
            job["max_degree"] = self.max_degree
            job["max_bundles"] = self.max_bundles
        if self.n is not None:
            job["n"] = self.n
        return job


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def chunk_vectors(flat, m: int, what: str = "bundle") -> list[list[int]]:
    flat = [int(x) for x in flat]
    if m == 0:
        if flat:
            raise JobError(f"{what}: the model has no generators")
        return []
    if len(flat) % m:
        raise JobError(f"{what}: {len(flat)} integers is not a multiple of {m} generators")
    return [flat[i:i + m] for i in range(0, len(flat), m)]


def _vectors(job: dict, key: str, M: ManifoldModel) -> list[tuple[int, ...]]:
    raw = job.get(key) or []
    out = []
    for v in raw:
        if not isinstance(v, (list, tuple)) or len(v) != M.ngens:
            raise JobError(f"{key}: vector {v!r} must have length {M.ngens}")
        out.append(tuple(int(x) for x in v))
    return out


def _q_order(job: dict) -> int:
    q = job.get("q_order")
    if q is None:
        return default_q_order()
    q = int(q)
    if q < 0:
        raise JobError("q-order must be >= 0")
    return q


def iter_job(M: ManifoldModel, job: dict):
    """Yield ``(exit_code, payload)`` items; only ``search`` yields more than one."""
    command = job.get("command")
    if command not in COMMANDS:
        raise JobError(f"unknown command {command!r}; expected one of {COMMANDS}")
    V = LineBundleSum(tuple(_vectors(job, "bundle", M)))
    base = {"command": command, "manifold": M.name}

    if command == "genus":
        Q = _q_order(job)
        c1c = job.get("c1c")
        if c1c is not None and tuple(int(x) for x in c1c) != c1_vector(V, M):
            raise JobError("genus fixes c1c = c1(V); use phi-c for other Spin^c classes")
        lemma, _ = witten_of_gci_checked(M, V, Q)
        payload = {**base, **lemma.to_dict(), "dual_path": "agree",
                   "reason": vanishing_reason(M, V, lemma.series)}
        yield EXIT_OK, payload
    elif command == "phi-c":
        Q = _q_order(job)
        W = RootBundle(tuple(_vectors(job, "w_bundle", M)))
        c1c = job.get("c1c")
        c1c = c1_vector(V, M) if c1c is None else [int(x) for x in c1c]
        res = phi_c(M, V, W, c1c, Q)
        yield EXIT_OK, {**base, **res.to_dict(), "w_bundle": [list(r) for r in W.roots]}
    elif command == "elliptic":
        res = elliptic(M, _q_order(job))
        yield EXIT_OK, {**base, **res.to_dict()}
    elif command == "check":
        report = check_string_gci(M, V)
        payload = {**base, "bundle": [list(r) for r in V.roots], **report.to_dict()}
        failed = job.get("require_string") and not report.string_conditions
        yield (EXIT_CONDITION if failed else EXIT_OK), payload
    elif command == "fano":
        n = job.get("n")
        if n is None:
            if M.ngens != 1:
                raise JobError("fano needs a CP^n model (one generator) or an explicit n")
            n = M.complex_dimension
        degrees = [v[0] for v in V.roots] if M.ngens == 1 else list(job.get("degrees", []))
        res = fano_c1_check(int(n), degrees)
        yield EXIT_OK, {**base, "n": int(n), "degrees": degrees, **res.to_dict()}
    elif command == "search":
        count = 0
        for found in iter_string_configurations(M, int(job.get("max_degree", 2)),
                                                int(job.get("max_bundles", 3))):
            count += 1
            yield EXIT_OK, {**base, "bundle": [list(r) for r in found.roots]}
        yield EXIT_OK, {**base, "count": count, "done": True}


def run_job(M: ManifoldModel, job: dict) -> tuple[int, dict]:
    """Run one job to completion, mapping errors onto exit codes."""
    try:
        items = list(iter_job(M, job))
    except DualPathMismatch as exc:
        return EXIT_INTERNAL, {"error": str(exc), "kind": "internal"}
    except (JobError, ModelError, SpinCError, SearchSpaceError, ValueError) as exc:
        return EXIT_INPUT, {"error": str(exc), "kind": "input"}
    if len(items) == 1:
        return items[0]
    code = max(c for c, _ in items)
    return code, {"command": job["command"], "manifold": M.name,
                  "results": [p for _, p in items]}
