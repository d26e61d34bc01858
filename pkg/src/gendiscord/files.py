"""State files and run reports.

A state file is a JSON object ``{"dims": [...], "re": [[...]], "im": [[...]]}``
holding the real and imaginary parts of the density matrix, rows in order,
subsystem 1 most significant. ``im`` may be omitted for real matrices.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .qcore import DensityMatrix, InvalidStateError

REPORT_VERSION = 1


def state_to_dict(rho: DensityMatrix) -> dict:
    return {
        "dims": list(rho.dims),
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
    }


def state_from_dict(obj) -> DensityMatrix:
    if not isinstance(obj, dict):
        raise InvalidStateError("format: state file must hold a JSON object with keys dims, re, im")
    missing = [k for k in ("dims", "re") if k not in obj]
    if missing:
        raise InvalidStateError(f"format: state file is missing key(s) {', '.join(missing)}")
    try:
        dims = tuple(int(d) for d in obj["dims"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidStateError(f"format: non-numeric entries in state file ({exc})") from None
    if re.shape != im.shape or re.ndim != 2:
        raise InvalidStateError(f"shape: re {re.shape} and im {im.shape} must be equal 2-d arrays")
    return DensityMatrix(dims, re + 1j * im)


def save_state(rho: DensityMatrix, path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(rho)) + "\n")


def load_state(path) -> DensityMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidStateError(f"readable: cannot read state file {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"format: state file {path} is not valid JSON ({exc.msg})") from None
    return state_from_dict(obj)


@dataclass
class GammaEntry:
    partition: str
    value: float
    restart_min: float
    restart_max: float
    restarts: int
    evaluations: int
    angles: list[float]
    wall_time_s: Optional[float] = None


@dataclass
class RunReport:
    input: dict
    config: dict
    per_gamma: list[GammaEntry]
    genuine: Optional[float]
    argmin: Optional[str]
    version: int = REPORT_VERSION

    def to_dict(self) -> dict:
        d = asdict(self)
        for g in d["per_gamma"]:
            if g["wall_time_s"] is None:
                del g["wall_time_s"]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        return cls(
            input=d["input"],
            config=d["config"],
            per_gamma=[GammaEntry(**g) for g in d["per_gamma"]],
            genuine=d["genuine"],
            argmin=d["argmin"],
            version=d.get("version", REPORT_VERSION),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls.from_dict(json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["partition", "value", "restart_min", "restart_max", "restarts", "evaluations"])
        for g in self.per_gamma:
            w.writerow([g.partition, repr(g.value), repr(g.restart_min), repr(g.restart_max), g.restarts, g.evaluations])
        return buf.getvalue()

    def to_table(self) -> str:
        rows = [("gamma", "discord", "restart spread", "evals")]
        for g in self.per_gamma:
            rows.append((g.partition, f"{g.value:.10f}", f"{g.restart_max - g.restart_min:.3e}", str(g.evaluations)))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = [f"input: {self.input.get('path') or self.input.get('family')}"]
        lines += ["  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))) for r in rows]
        if self.genuine is not None:
            lines.append(f"genuine discord: {self.genuine:.10f}  (argmin gamma = {self.argmin})")
        return "\n".join(lines) + "\n"
