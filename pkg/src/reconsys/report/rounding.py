"""Presentation rounding: half-up, the style the reports display.

Stored statistics stay exact quotients; only display strings round.
"""

from __future__ import annotations

from decimal import ROUND_HALF_UP, Decimal


def round_half_up(value: float, decimals: int) -> Decimal:
    q = Decimal(1).scaleb(-decimals) if decimals > 0 else Decimal(1)
    return Decimal(str(value)).quantize(q, rounding=ROUND_HALF_UP)


def fmt_number(value: float, decimals: int = 1) -> str:
    return str(round_half_up(value, decimals))


def fmt_percent(ratio: float, decimals: int = 1) -> str:
    """0.364005 -> '36.4%' (one decimal), 0.3212 -> '32%' (zero decimals)."""
    return f"{round_half_up(ratio * 100.0, decimals)}%"
