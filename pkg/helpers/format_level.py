import math


def format_level(value) -> str:
    """Format a level, exponent or scale for file names: 8 -> "8", 0.5 -> "0.5", inf -> "inf"."""
    value = float(value)
    if math.isinf(value):
        return "inf"
    if value.is_integer():
        return str(int(value))
    return f"{value:g}"
