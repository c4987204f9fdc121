"""Structured verification records."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, UNDETERMINED = "pass", "fail", "undetermined"


def _jsonable(obj):
    if hasattr(obj, "as_json"):
        return obj.as_json()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, float, bool, type(None))):
        return obj
    return str(obj)


@dataclass
class CheckReport:
    """Outcome of one named check.

    ``expected`` is the status the mathematics predicts; a check whose
    status equals ``expected`` counts as satisfied. Failing checks carry a
    witness and undetermined ones carry the limiting window.
    """

    name: str
    status: str
    window: dict = field(default_factory=dict)
    tables: list = field(default_factory=list)
    witness: object = None
    expected: str = PASS
    detail: str = ""
    children: list = field(default_factory=list)
    ms: float = 0.0

    def __post_init__(self):
        if self.status not in (PASS, FAIL, UNDETERMINED):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == FAIL and self.witness is None:
            self.witness = self.detail or "unspecified"
        if self.status == UNDETERMINED and not self.window:
            raise ValueError("undetermined checks must carry their window")

    @property
    def ok(self):
        return self.status == self.expected

    @property
    def passed(self):
        return self.status == PASS

    def as_json(self, timing=False):
        out = {
            "name": self.name,
            "status": self.status,
            "expected": self.expected,
            "window": self.window,
            "tables": _jsonable(self.tables),
        }
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.detail:
            out["detail"] = self.detail
        if self.children:
            out["checks"] = [c.as_json(timing) for c in self.children]
        if timing:
            out["ms"] = round(self.ms, 3)
        return out

    def flatten(self):
        yield self
        for c in self.children:
            yield from c.flatten()


def status_of(holds):
    if holds is None:
        return UNDETERMINED
    return PASS if holds else FAIL


def bundle(name, children, window, detail=""):
    """A report that passes iff every child meets its expectation."""
    if any(c.status == UNDETERMINED for c in children):
        status = UNDETERMINED
    else:
        status = PASS if all(c.ok for c in children) else FAIL
    witness = None
    if status == FAIL:
        witness = [c.name for c in children if not c.ok]
    return CheckReport(name, status, window=window, witness=witness, children=list(children), detail=detail)
