"""Per-entity daily sentiment series for plotting brand reputation over time."""

from __future__ import annotations

import csv
import io
from collections import defaultdict
from dataclasses import dataclass
from datetime import date, datetime, timezone
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .corpus import LabeledDoc

__all__ = ["TimelineError", "TimelinePoint", "parse_timestamp", "aggregate", "timeline_csv"]

CSV_HEADER = ("entity", "date", "mean_pos", "mean_neg", "net", "doc_count")


class TimelineError(ValueError):
    pass


@dataclass(frozen=True)
class TimelinePoint:
    entity: str
    date: date
    mean_pos: float
    mean_neg: float
    doc_count: int

    @property
    def net(self) -> float:
        return self.mean_pos + self.mean_neg


def parse_timestamp(value: str) -> datetime:
    """ISO-8601 to an aware UTC datetime; naive stamps are taken as UTC."""
    s = value.strip()
    if s.endswith(("Z", "z")):
        s = s[:-1] + "+00:00"
    dt = datetime.fromisoformat(s)
    if dt.tzinfo is None:
        return dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def aggregate(docs: Iterable[LabeledDoc], source: str = "gold",
              predictions: Optional[Mapping[str, Tuple[int, int]]] = None) -> List[TimelinePoint]:
    """Average dual-scale sentiment per (entity, UTC day).

    ``predictions`` maps doc id to a (pos, signed neg) pair and is
    required when ``source == "predicted"``.
    """
    if source not in ("gold", "predicted"):
        raise TimelineError(f"source must be 'gold' or 'predicted', got {source!r}")
    if source == "predicted" and predictions is None:
        raise TimelineError("predicted source requires predictions")
    docs = list(docs)
    bad = [d.id for d in docs if not d.timestamp or not d.entity]
    if bad:
        raise TimelineError(f"documents without timestamp or entity: {', '.join(bad)}")
    if source == "predicted":
        missing = [d.id for d in docs if d.id not in predictions]
        if missing:
            raise TimelineError(f"no prediction for documents: {', '.join(missing)}")

    groups: Dict[Tuple[str, date], List[Tuple[int, int]]] = defaultdict(list)
    for d in docs:
        try:
            day = parse_timestamp(d.timestamp).date()
        except ValueError:
            raise TimelineError(f"document {d.id!r}: bad timestamp {d.timestamp!r}") from None
        pair = (d.pos.value, d.neg.value) if source == "gold" else tuple(predictions[d.id])
        groups[(d.entity, day)].append(pair)

    points = []
    for (entity, day), pairs in sorted(groups.items()):
        n = len(pairs)
        points.append(TimelinePoint(
            entity, day,
            sum(p for p, _ in pairs) / n,
            sum(q for _, q in pairs) / n,
            n,
        ))
    return points


def timeline_csv(points: Iterable[TimelinePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p in points:
        w.writerow([p.entity, p.date.isoformat(), repr(p.mean_pos), repr(p.mean_neg),
                    repr(p.net), p.doc_count])
    return buf.getvalue()
