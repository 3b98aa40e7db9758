from __future__ import annotations

from typing import TYPE_CHECKING, Optional

import numpy as np

if TYPE_CHECKING:
    from collections.abc import Sequence

    from rssiqueue.core import RssiSample


def window_representative(samples: Sequence[RssiSample]) -> Optional[float]:
    """Mean RSSI of a window, ``None`` for an empty window."""
    if not samples:
        return None
    return float(np.mean([sample.value for sample in samples]))


def population_variance(values: Sequence[float]) -> Optional[float]:
    if len(values) < 2:  # noqa: PLR2004
        return None
    return float(np.var(np.asarray(values, dtype=np.float64)))


def pearson(
    a: Sequence[Optional[float]],
    b: Sequence[Optional[float]],
    min_paired: int = 3,
) -> Optional[float]:
    """Pearson correlation over the positions where both sequences are present.

    Args:
        a: First sequence, ``None`` marks a missing position
        b: Second sequence, positionally aligned with ``a``
        min_paired: Minimum number of positions present on both sides

    Returns:
        The correlation clipped to [-1, 1], or ``None`` if too few pairs exist or either side is constant
    """
    if len(a) != len(b):
        msg = f"Correlation sequences must be aligned, got lengths {len(a)} and {len(b)}"
        raise ValueError(msg)
    pairs = [(x, y) for x, y in zip(a, b) if x is not None and y is not None]
    if len(pairs) < min_paired:
        return None
    xs = np.array([x for x, _ in pairs], dtype=np.float64)
    ys = np.array([y for _, y in pairs], dtype=np.float64)
    # exact test: a constant side has no defined correlation
    if xs.max() == xs.min() or ys.max() == ys.min():
        return None
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    r = float(np.dot(dx, dy) / np.sqrt(np.dot(dx, dx) * np.dot(dy, dy)))
    return min(1.0, max(-1.0, r))
