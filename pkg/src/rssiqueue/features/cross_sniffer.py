"""Mobility correlation of one device between the two flanking sniffers (f9)."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from rssiqueue.features.statistics import pearson

if TYPE_CHECKING:
    from rssiqueue.features.backtrack import BacktrackContext


def f9_mobility_correlation(
    ctx: BacktrackContext,
    left: Optional[int],
    right: Optional[int],
    min_paired: int = 3,
) -> Optional[float]:
    if left is None or right is None:
        return None
    return pearson(ctx.sequence(left), ctx.sequence(right), min_paired)
