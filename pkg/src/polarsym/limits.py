"""Resource caps shared by every brute-force routine."""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace


class CapExceeded(RuntimeError):
    """A requested enumeration is larger than the configured cap."""


@dataclass(frozen=True)
class Limits:
    max_block_exp: int = 20          # N <= 2**20 for matrix construction
    max_rowspace: int = 1 << 24      # elements of a single row space
    max_domain: int = 1 << 22        # received vectors in a brute-force sweep
    max_alphabet: int = 1 << 16      # symbols of a derived multiset channel

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"{f.name} must be positive")


_current = Limits()

ENV_PREFIX = "POLARSYM_"


def current() -> Limits:
    return _current


def set_limits(**overrides) -> Limits:
    """Replace the process-wide limits; returns the previous value."""
    global _current
    previous = _current
    _current = replace(_current, **overrides)
    return previous


@contextmanager
def limits(**overrides):
    previous = set_limits(**overrides)
    try:
        yield _current
    finally:
        set_limits(**{f.name: getattr(previous, f.name) for f in fields(previous)})


def from_env(base: Limits | None = None) -> Limits:
    """Read ``POLARSYM_MAX_DOMAIN`` style overrides from the environment."""
    base = base or _current
    kw = {}
    for f in fields(base):
        raw = os.environ.get(ENV_PREFIX + f.name.upper())
        if raw:
            kw[f.name] = int(raw, 0)
    return replace(base, **kw)


def check(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise CapExceeded(f"{what}: {size} exceeds cap {cap}")
