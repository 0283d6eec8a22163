"""Shipped presentations, their builders and the presentation-file loader."""
from __future__ import annotations

from pathlib import Path

from .builders import (builder_group_algebra, builder_qea, builder_taft,
                       builder_taft_times_group, builder_uqplus_sl2, builder_uqplus_sl3)
from .embeddings import (group_in_qea, group_in_sl3, group_in_taft, shipped_embeddings,
                         subalgebra_uqplus_sl2_in_sl3)
from .loader import dumps, from_document, load, parse_text, write

DATA_DIR = Path(__file__).parent / "data"

# file stem -> document factory
SHIPPED = {
    "taft_l3": lambda: builder_taft(3),
    "qea_r2_l3": lambda: builder_qea(2, 3),
    "uqplus_sl2_a_l3": lambda: builder_uqplus_sl2(3, "A"),
    "uqplus_sl2_b_l3": lambda: builder_uqplus_sl2(3, "B"),
    "uqplus_sl3_a_l3": lambda: builder_uqplus_sl3(3, "A"),
    "uqplus_sl3_b_l3": lambda: builder_uqplus_sl3(3, "B"),
    "group_r2_l3": lambda: builder_group_algebra(2, 3),
    "taft_l3_x_z3": lambda: builder_taft_times_group(3),
}

_cache: dict = {}


def preset_path(name):
    return DATA_DIR / f"{name}.toml"


def preset(name, p=None):
    """Load a shipped preset by name (cached per ``(name, p)``)."""
    key = (name, p)
    if key not in _cache:
        if name not in SHIPPED:
            raise KeyError(f"unknown preset {name!r}; known: {sorted(SHIPPED)}")
        _cache[key] = load(preset_path(name), p=p)
    return _cache[key]


def regenerate(directory=DATA_DIR):
    for name, build in SHIPPED.items():
        write(build(), Path(directory) / f"{name}.toml")


def resolve_source(spec):
    """A preset name or a path to a presentation file."""
    path = Path(spec)
    if path.suffix == ".toml" and path.exists():
        return load(path)
    stem = path.stem if path.suffix == ".toml" else str(spec)
    return preset(stem)


__all__ = [
    "builder_group_algebra", "builder_qea", "builder_taft", "builder_taft_times_group",
    "builder_uqplus_sl2", "builder_uqplus_sl3", "dumps", "from_document", "load",
    "parse_text", "write", "preset", "preset_path", "regenerate", "resolve_source",
    "SHIPPED", "DATA_DIR", "subalgebra_uqplus_sl2_in_sl3", "group_in_taft", "group_in_qea",
    "group_in_sl3", "shipped_embeddings",
]
