"""Claim records shared by the verifiers and the command line."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

STATUSES = ("pass", "fail", "skip")


@dataclass
class Claim:
    id: str
    status: str
    detail: str = ""
    seconds: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        out = {"id": self.id, "status": self.status, "detail": self.detail}
        if timing:
            out["timing"] = round(self.seconds, 6)
        return out


@dataclass
class Report:
    """Ordered claims plus free-form records (Bockstein data, ranks).

    ``skip`` marks a claim whose hypotheses were not met; it is neither a pass
    nor a failure.
    """

    claims: list[Claim] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)
    ranks: dict = field(default_factory=dict)
    _clock: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, cid: str, ok: bool, detail: str = "") -> bool:
        now = time.perf_counter()
        self.claims.append(Claim(cid, "pass" if ok else "fail", detail, now - self._clock))
        self._clock = now
        return ok

    def skip(self, cid: str, detail: str) -> None:
        now = time.perf_counter()
        self.claims.append(Claim(cid, "skip", detail, now - self._clock))
        self._clock = now

    def record(self, rid: str, value, detail: str = "") -> None:
        self.records.append({"id": rid, "value": value, "detail": detail})

    def extend(self, other: Report) -> Report:
        self.claims.extend(other.claims)
        self.records.extend(other.records)
        self.ranks.update(other.ranks)
        self._clock = time.perf_counter()
        return self

    def __getitem__(self, cid: str) -> Claim:
        for c in self.claims:
            if c.id == cid:
                return c
        raise KeyError(cid)

    @property
    def failures(self) -> list[Claim]:
        return [c for c in self.claims if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, int]:
        return {s: sum(c.status == s for c in self.claims) for s in STATUSES}
