"""Decision records with replayable witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


def jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays and tuples/sets into plain JSON values."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


@dataclass(frozen=True)
class Verdict:
    """``holds`` is the answer; ``witness`` is the least object deciding it.

    ``certificate`` carries whatever extra data a re-check needs, such as
    annihilator sets as element-index lists.  ``subject`` is the replay
    recipe (ring expression and module recipe) of the object examined.
    """

    predicate: str
    holds: bool
    witness: Any = None
    certificate: dict = field(default_factory=dict)
    subject: Any = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "predicate": self.predicate,
            "holds": bool(self.holds),
            "witness": jsonable(self.witness),
            "certificate": jsonable(self.certificate),
            "subject": jsonable(self.subject),
            "recheck": f"save this record and run `baerlab <command> --recheck FILE` to replay {self.predicate}",
        }
