"""Persistent, idempotent cache of computed intersection numbers.

Two key namespaces share one table: pure psi keys ``g:d1,d2,...`` and Hodge
keys ``H:g:n:psi=...:lam=...``.  Re-inserting a key with the same value is a
no-op; inserting a conflicting value is a fatal integrity error.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, Optional, Tuple

from .algebra import rational_from_str, rational_to_str

__all__ = ["CacheIntegrityError", "IntegralCache", "CACHE_VERSION"]

CACHE_VERSION = "1"


class CacheIntegrityError(RuntimeError):
    """Raised when a key would be re-bound to a different value."""


class IntegralCache:
    """Associative table from canonical key strings to exact rationals.

    Safe for concurrent readers and idempotent concurrent insertion.  The
    ``transient`` dict holds intermediate reduction states that are memoized
    in-process but never written to disk.
    """

    def __init__(self) -> None:
        self._data: Dict[str, Fraction] = {}
        self._lock = threading.RLock()
        self.transient: Dict[object, Fraction] = {}

    def get(self, key: str) -> Optional[Fraction]:
        return self._data.get(key)

    def put(self, key: str, value: Fraction) -> None:
        with self._lock:
            old = self._data.get(key)
            if old is None:
                self._data[key] = Fraction(value)
            elif old != value:
                raise CacheIntegrityError(
                    f"conflicting value for {key!r}: "
                    f"{rational_to_str(old)} vs {rational_to_str(Fraction(value))}"
                )

    def __contains__(self, key: str) -> bool:
        return key in self._data

    def __len__(self) -> int:
        return len(self._data)

    def stats(self) -> Dict[str, int]:
        with self._lock:
            hodge = sum(1 for k in self._data if k.startswith("H:"))
            return {"psi": len(self._data) - hodge, "hodge": hodge, "total": len(self._data)}

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self.transient.clear()

    def iter_sorted(self) -> Iterator[Tuple[str, Fraction]]:
        with self._lock:
            items = sorted(self._data.items())
        return iter(items)

    # -- file format: `version 1` header, then `key p/q` lines sorted by key

    def write_file(self, path) -> None:
        lines = [f"version {CACHE_VERSION}\n"]
        lines.extend(f"{k} {rational_to_str(v)}\n" for k, v in self.iter_sorted())
        Path(path).write_text("".join(lines), encoding="ascii")

    def read_file(self, path) -> int:
        """Merge a cache file; on any error nothing is imported.

        Returns the number of keys read.
        """
        text = Path(path).read_text(encoding="ascii")
        lines = text.splitlines()
        if not lines or lines[0].strip() != f"version {CACHE_VERSION}":
            raise CacheIntegrityError(f"unsupported cache version in {path}")
        staged: Dict[str, Fraction] = {}
        for lineno, line in enumerate(lines[1:], start=2):
            line = line.strip()
            if not line:
                continue
            try:
                key, value_s = line.rsplit(" ", 1)
            except ValueError:
                raise CacheIntegrityError(f"{path}:{lineno}: malformed line {line!r}")
            value = rational_from_str(value_s)
            if staged.get(key, value) != value:
                raise CacheIntegrityError(f"{path}:{lineno}: duplicate key {key!r}")
            staged[key] = value
        with self._lock:
            for key, value in staged.items():
                old = self._data.get(key)
                if old is not None and old != value:
                    raise CacheIntegrityError(
                        f"import of {path} conflicts with existing value for {key!r}"
                    )
            self._data.update(staged)
        return len(staged)
