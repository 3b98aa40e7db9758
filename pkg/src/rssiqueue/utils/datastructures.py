from __future__ import annotations

from collections.abc import Mapping
from typing import Any


def deep_update(mapping: dict[Any, Any], *updating_mappings: Mapping[Any, Any]) -> dict[Any, Any]:
    """Merge nested mappings into a copy of ``mapping``; later mappings win."""
    merged = dict(mapping)
    for updating in updating_mappings:
        for key, value in updating.items():
            current = merged.get(key)
            if isinstance(current, Mapping) and isinstance(value, Mapping):
                merged[key] = deep_update(dict(current), value)
            else:
                merged[key] = value
    return merged
