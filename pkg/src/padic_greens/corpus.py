"""The bundled test maps."""

from __future__ import annotations

from .morphism import HomogeneousMap, make_map

PRIMES = (2, 3, 5, 97)

# name -> forms in two variables (X, Y)
_BINARY = {
    "X2_Y2": [{(2, 0): 1}, {(0, 2): 1}],
    "X2_3Y2": [{(2, 0): 1}, {(0, 2): 3}],
    "X2+3Y2_Y2": [{(2, 0): 1, (0, 2): 3}, {(0, 2): 1}],
    "X2+XY_Y2+3X2": [{(2, 0): 1, (1, 1): 1}, {(0, 2): 1, (2, 0): 3}],
}

_TERNARY = {
    "X2_Y2_3Z2": ([{(2, 0, 0): 1}, {(0, 2, 0): 1}, {(0, 0, 2): 3}], 3),
}


def corpus() -> dict[str, HomogeneousMap]:
    """All corpus maps keyed by ``name@p``."""
    out = {}
    for name, forms in _BINARY.items():
        for p in PRIMES:
            out[f"{name}@{p}"] = make_map(forms, p)
    for name, (forms, p) in _TERNARY.items():
        out[f"{name}@{p}"] = make_map(forms, p)
    return out


def corpus_map(key: str) -> HomogeneousMap:
    maps = corpus()
    if key not in maps:
        raise KeyError(f"no corpus map {key!r}; known: {', '.join(maps)}")
    return maps[key]
