"""Verification report shared by identity and congruence checks."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

PASS = "pass"
FAIL = "fail"
INSUFFICIENT = "insufficient-precision"


@dataclass
class VerificationReport:
    id: str
    status: str
    n_checked: int
    depth: int
    counterexample: dict | None = None
    detail: str = ""
    elapsed: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INSUFFICIENT):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and self.counterexample is None:
            raise ValueError("a failing report must carry a counterexample")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("elapsed")
        return d

    def summary(self) -> str:
        if self.status == PASS:
            return f"{self.id} pass ({self.n_checked} terms)"
        if self.status == FAIL:
            return f"{self.id} FAIL {self.counterexample}"
        return f"{self.id} insufficient-precision ({self.n_checked} terms at depth {self.depth}) {self.detail}".rstrip()
