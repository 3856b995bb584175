"""Golden corpus: ``<root>/<name>/{manifold.json, jobs.json, expected.json}``.

``expected.json`` is the canonical dump of the list of job results, one
``{"exit_code", "job", "output"}`` object per job, followed by a newline.
Verification recomputes it and compares bytes.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .cohomology import ModelError, load_model
from .jobs import canonical_json, run_job


class CorpusError(Exception):
    """Missing or empty corpus (exit code 2)."""


@dataclass(frozen=True)
class EntryResult:
    name: str
    status: str  # "pass" | "fail" | "error"
    digest: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "sha256": self.digest,
                "detail": self.detail}


def entries(root: str | Path) -> list[Path]:
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus directory {root} does not exist")
    found = sorted(p for p in root.iterdir() if (p / "manifold.json").is_file())
    if not found:
        raise CorpusError(f"corpus directory {root} has no entries")
    return found


def render_entry(entry: Path) -> str:
    M = load_model(entry / "manifold.json")
    jobs = json.loads((entry / "jobs.json").read_text())
    results = []
    for job in jobs:
        code, payload = run_job(M, job)
        results.append({"exit_code": code, "job": job, "output": payload})
    return canonical_json(results) + "\n"


def verify_entry(entry: Path) -> EntryResult:
    try:
        rendered = render_entry(entry)
    except (ModelError, OSError, json.JSONDecodeError) as exc:
        return EntryResult(entry.name, "error", "", str(exc))
    digest = hashlib.sha256(rendered.encode()).hexdigest()
    expected = entry / "expected.json"
    if not expected.is_file():
        return EntryResult(entry.name, "fail", digest, "expected.json missing")
    if expected.read_bytes() != rendered.encode():
        return EntryResult(entry.name, "fail", digest, "output differs from expected.json")
    return EntryResult(entry.name, "pass", digest)


def corpus_verify(root: str | Path, jobs: int = 1) -> list[EntryResult]:
    paths = entries(root)
    if jobs <= 1:
        return [verify_entry(p) for p in paths]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(verify_entry, paths))


def corpus_regen(root: str | Path) -> list[str]:
    written = []
    for entry in entries(root):
        (entry / "expected.json").write_text(render_entry(entry))
        written.append(entry.name)
    return written
