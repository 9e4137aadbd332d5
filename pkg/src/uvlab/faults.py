"""Deliberate fault injection, used to check that the verifier notices bugs.

Only one fault exists: ``"neg"`` makes :func:`uvlab.order.neg_le` return the
plain set complement instead of its interior.
"""
from contextlib import contextmanager

KNOWN = ("neg",)
_active: set[str] = set()
_caches = []


def register_cache(fn):
    """Memoised functions registered here are flushed whenever the fault set
    changes, and by :func:`clear_caches`."""
    _caches.append(fn)
    return fn


def clear_caches():
    for fn in _caches:
        fn.cache_clear()


def active(name: str) -> bool:
    return name in _active


def current() -> list[str]:
    return sorted(_active)


@contextmanager
def injected(*names):
    for n in names:
        if n not in KNOWN:
            raise ValueError(f"unknown fault {n!r}")
    saved = set(_active)
    _active.update(names)
    clear_caches()
    try:
        yield
    finally:
        _active.clear()
        _active.update(saved)
        clear_caches()
