"""Result object for theorem checks that may need to explain a failure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    """Truthy iff the check held; ``witness`` carries labels to replay a failure."""

    ok: bool
    witness: dict[str, Any] | None = None
    detail: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def passed(detail: str = "", **extra: Any) -> Check:
    return Check(True, None, detail, extra)


def failed(witness: dict[str, Any], detail: str = "", **extra: Any) -> Check:
    return Check(False, witness, detail, extra)
