"""Machine-readable statistics for a checking run.

The document is a single JSON object with exactly these keys::

    format        always 1
    verdict       "reachable" | "unreachable"
    engine        "compositional" | "monolithic"
    options       {"reduce", "memo", "mode", "budget", "assoc"}
    memo_hits     int
    total_time    float, seconds
    distance      int or null (monolithic engine only)
    nodes         list of {"node", "op", "states_before", "states_after",
                           "seconds", "memo_hit"}
    environment   {"python", "platform", "pnbcheck"}
"""

from __future__ import annotations

import json
import platform
from dataclasses import asdict, dataclass, field

from .. import __version__
from ..checker import CheckOptions, CheckResult, NodeStat

FORMAT_VERSION = 1
KEYS = ("format", "verdict", "engine", "options", "memo_hits", "total_time", "distance",
        "nodes", "environment")


@dataclass
class StatsReport:
    verdict: str
    engine: str
    options: dict
    memo_hits: int
    total_time: float
    distance: int | None
    nodes: list[NodeStat] = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    @classmethod
    def from_result(cls, result: CheckResult, opts: CheckOptions) -> "StatsReport":
        return cls(
            verdict=result.verdict,
            engine=opts.engine,
            options={
                "reduce": opts.reduce_level.value,
                "memo": opts.memo,
                "mode": opts.step_mode.value,
                "budget": opts.budget,
                "assoc": opts.assoc,
            },
            memo_hits=result.memo_hits,
            total_time=result.total_time,
            distance=result.distance,
            nodes=list(result.stats),
            environment={
                "python": platform.python_version(),
                "platform": platform.platform(),
                "pnbcheck": __version__,
            },
        )

    def to_dict(self) -> dict:
        d = {"format": FORMAT_VERSION}
        d.update(asdict(self))
        return {k: d[k] for k in KEYS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "StatsReport":
        if d.get("format") != FORMAT_VERSION:
            raise ValueError(f"unsupported stats format {d.get('format')!r}")
        missing = set(KEYS) - set(d)
        if missing:
            raise ValueError(f"stats document lacks keys {sorted(missing)}")
        return cls(
            verdict=d["verdict"],
            engine=d["engine"],
            options=dict(d["options"]),
            memo_hits=d["memo_hits"],
            total_time=d["total_time"],
            distance=d["distance"],
            nodes=[NodeStat(**n) for n in d["nodes"]],
            environment=dict(d["environment"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "StatsReport":
        return cls.from_dict(json.loads(text))
