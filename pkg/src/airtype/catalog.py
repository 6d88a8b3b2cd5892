"""Fleet catalog: aircraft types keyed by shortcut with published lengths."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from airtype.errors import ConfigurationError


@dataclass(frozen=True)
class AircraftSpec:
    full_name: str
    shortcut: str
    actual_length_m: float

    def __post_init__(self):
        if not self.shortcut:
            raise ConfigurationError("aircraft shortcut must be non-empty")
        if not math.isfinite(self.actual_length_m) or self.actual_length_m <= 0:
            raise ConfigurationError(
                f"{self.shortcut}: actual_length_m must be positive, got {self.actual_length_m!r}"
            )


class Catalog:
    """Immutable, non-empty list of specs sorted by length then shortcut."""

    def __init__(self, specs: Iterable[AircraftSpec]):
        specs = list(specs)
        if not specs:
            raise ConfigurationError("catalog is empty")
        seen = set()
        for s in specs:
            if s.shortcut in seen:
                raise ConfigurationError(f"duplicate shortcut {s.shortcut!r} in catalog")
            seen.add(s.shortcut)
        self._specs = tuple(sorted(specs, key=lambda s: (s.actual_length_m, s.shortcut)))
        self._by_key = {s.shortcut: s for s in self._specs}

    def __iter__(self) -> Iterator[AircraftSpec]:
        return iter(self._specs)

    def __len__(self):
        return len(self._specs)

    def __contains__(self, shortcut):
        return shortcut in self._by_key

    def __getitem__(self, shortcut) -> AircraftSpec:
        try:
            return self._by_key[shortcut]
        except KeyError:
            raise ConfigurationError(f"unknown aircraft type {shortcut!r}") from None

    def __eq__(self, other):
        return isinstance(other, Catalog) and self._specs == other._specs

    def __repr__(self):
        return f"Catalog({[s.shortcut for s in self._specs]})"

    @property
    def shortcuts(self) -> list[str]:
        return [s.shortcut for s in self._specs]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "shortcut", "length_m"])
        for s in self._specs:
            w.writerow([s.full_name, s.shortcut, repr(s.actual_length_m)])
        return buf.getvalue()


# Paris Air Show fleet, lengths in metres.
DEFAULT_CATALOG = Catalog(
    [
        AircraftSpec("LockheedMartin-LM100J", "LM100J", 35.0),
        AircraftSpec("GULFSTREAM-G-280", "G-280", 20.0),
        AircraftSpec("GULFSTREAM-G-550", "G-550", 29.0),
        AircraftSpec("GULFSTREAM-G-650", "G-650", 30.0),
        AircraftSpec("Cessna-Citation CJ4", "CJ4", 16.0),
        AircraftSpec("Cessna-Citation M2", "CM2", 13.0),
        AircraftSpec("Boeing 787-8", "Bo787", 57.0),
        AircraftSpec("Airbus A-380", "A-380", 73.0),
        AircraftSpec("Airbus A-320", "A-320", 38.0),
    ]
)


def parse_catalog_csv(text: str) -> Catalog:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["name", "shortcut", "length_m"]:
        raise ConfigurationError(
            f"catalog header must be 'name,shortcut,length_m', got {reader.fieldnames!r}"
        )
    specs = []
    for lineno, row in enumerate(reader, start=2):
        row = {k.strip(): (v or "").strip() for k, v in row.items()}
        try:
            length = float(row["length_m"])
        except ValueError:
            raise ConfigurationError(f"catalog line {lineno}: bad length_m {row['length_m']!r}") from None
        specs.append(AircraftSpec(row["name"], row["shortcut"], length))
    return Catalog(specs)


def load_catalog(path=None) -> Catalog:
    """Read a catalog CSV; ``None`` gives the built-in default."""
    if path is None:
        return DEFAULT_CATALOG
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read catalog {path}: {exc}") from exc
    return parse_catalog_csv(text)
