"""Size caps for constructions and enumerations.

``BAERLAB_CAP`` overrides the defaults.  It is either a single integer (the
ring order cap) or a comma separated list such as
``ring=4096,submodules=16384,homs=4096,endo=1024``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from baerlab.errors import InvalidSpec


@dataclass(frozen=True)
class Caps:
    ring: int = 4096
    module: int = 4096
    submodules: int = 1 << 14
    homs: int = 4096
    endo: int = 1024
    free_fiber: int = 1 << 20


def _from_env(default: Caps) -> Caps:
    raw = os.environ.get("BAERLAB_CAP", "").strip()
    if not raw:
        return default
    try:
        if "=" not in raw:
            n = int(raw)
            return replace(default, ring=n, module=n)
        updates = {}
        for part in raw.split(","):
            key, _, value = part.partition("=")
            key = key.strip()
            if key not in Caps.__dataclass_fields__:
                raise InvalidSpec(f"unknown cap {key!r} in BAERLAB_CAP")
            updates[key] = int(value)
        return replace(default, **updates)
    except ValueError as exc:
        raise InvalidSpec(f"cannot parse BAERLAB_CAP={raw!r}") from exc


_caps = _from_env(Caps())


def caps() -> Caps:
    return _caps


def set_caps(new: Caps) -> None:
    global _caps
    _caps = new


def reload_caps() -> Caps:
    """Re-read ``BAERLAB_CAP``; used by the CLI and by tests."""
    set_caps(_from_env(Caps()))
    return _caps
