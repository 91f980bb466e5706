"""Published eigenvalue data used for comparison.

Every row carries a source tag. ``galerkin-*`` rows were produced by the same
trigonometric Galerkin method at the stated block size; ``external-*`` rows
come from independent methods in the literature and are treated as
comparison points, not ground truth.
"""

from __future__ import annotations

__all__ = [
    "DIAGONAL",
    "LOWEST_SIX",
    "SIZE_EVOLUTION",
    "LARGE_BLOCK_LEVELS",
    "LARGE_BLOCK_SIZE",
    "EXTERNAL_LEVELS",
    "REFERENCE_GROUND_STATE",
    "reference_rows",
]

# first six diagonal elements, interleaved by value (even k=0, odd k=1, even k=1, ...)
DIAGONAL = (1.21531728, 2.83630315, 4.38766562, 5.96864490, 7.53320446, 9.10820377)

# six lowest merged levels by block size (per parity)
LOWEST_SIX = {
    6: (1.1704897, 2.780209, 4.356483317, 5.9397942, 7.52131594, 9.099426),
    12: (1.1644016, 2.7690111, 4.3388792, 5.919976, 7.4952827, 9.0725254),
    10000: (1.157791, 2.754795, 4.3168638, 5.892233, 7.460284, 9.032984),
}

SIZE_EVOLUTION = {
    30: (1.160505, 2.760953, 4.326418, 5.904768, 7.476052, 9.051406),
    50: (1.159428, 2.758572, 4.322736, 5.900041, 7.470114, 9.044604),
    100: (1.158608, 2.756705, 4.319842, 5.896238, 7.465334, 9.039015),
    200: (1.158193, 2.755742, 4.318343, 5.894235, 7.462812, 9.036021),
    400: (1.157984, 2.755252, 4.317578, 5.893204, 7.461511, 9.034462),
    1000: (1.157858, 2.754954, 4.317114, 5.892573, 7.460714, 9.033504),
    2000: (1.157816, 2.754855, 4.316958, 5.892361, 7.460446, 9.033180),
    5000: (1.157791, 2.754795, 4.316864, 5.892233, 7.460284, 9.032984),
    10000: (1.157791, 2.754795, 4.316864, 5.892233, 7.460284, 9.032984),
}

LARGE_BLOCK_SIZE = 5000

# n -> (energy, n pi/2 - pi/8, relative error in percent, external value or None)
LARGE_BLOCK_LEVELS = {
    1: (1.157791, 1.178097, 1.75, 1.157773),
    2: (2.754795, 2.748894, 0.21, 2.754754),
    3: (4.316864, 4.319690, 0.06, 4.316801),
    4: (5.892233, 5.890486, 0.03, 5.892147),
    5: (7.460284, 7.461283, 0.013, 7.460175),
    6: (9.032984, 9.032079, 0.01, 9.032852),
    7: (10.602447, 10.602875, 0.004, 10.602293),
    8: (12.174295, 12.173672, 0.0051, 12.174118),
    9: (13.744308, 13.744468, 0.0012, 13.744109),
    10: (15.315777, 15.315264, 0.0033, 15.315554),
    11: (16.886062, 16.886061, 5.9e-8, None),
    12: (18.457329, 18.456857, 0.0026, None),
    13: (20.027767, 20.027653, 0.00057, None),
    14: (21.598914, 21.598449, 0.0021, None),
    15: (23.169448, 23.169246, 0.00087, None),
    16: (24.740517, 24.740042, 0.0019, None),
    17: (26.311115, 26.310838, 0.0011, None),
    18: (27.882131, 27.881635, 0.0018, None),
    19: (29.452773, 29.452431, 0.0012, None),
    20: (31.023751, 31.023227, 0.0016, None),
    30: (46.731898, 46.731191, 0.0015, None),
    50: (78.148251, 78.147117, 0.0015, None),
    100: (156.689159, 156.686934, 0.0014, None),
}

EXTERNAL_LEVELS = {
    "external-a": (1.1577, 2.7547, 4.3168, 5.8921, 7.4601, 9.0328),
    "external-b": (1.1577738, 2.7547547, 4.3168010, 5.8921474, 7.4601757, 9.0328526),
    "external-c": (1.1560, 2.7534, 4.3168, 5.8945, 7.4658, 9.0427),
    "external-d": (1.157776, 2.754769, 4.316837, 5.892214, 7.460282),
}

# the most precise independent ground-state value available
REFERENCE_GROUND_STATE = EXTERNAL_LEVELS["external-b"][0]


def reference_rows(tag: str):
    """``[(n, value, tag)]`` for one external source, ready for :func:`spectrum.compare_references`."""
    try:
        values = EXTERNAL_LEVELS[tag]
    except KeyError:
        raise KeyError(f"unknown reference {tag!r}; known: {sorted(EXTERNAL_LEVELS)}") from None
    return [(n, v, tag) for n, v in enumerate(values, start=1)]
