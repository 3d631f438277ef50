"""Depth bound for recall unfoldings"""
from typing import NamedTuple, Sequence

DEFAULT_CEILING = 10 ** 6


class DepthBound(NamedTuple):
    value: int
    saturated: bool


def depth_bound(nstates: int, k: int, resources: Sequence[int], ceiling: int = DEFAULT_CEILING) -> DepthBound:
    """|St| * 2^(2k^2) * prod(r+1), clipped at ceiling."""
    value = nstates * 2 ** (2 * k * k)
    for r in resources:
        value *= r + 1
    if value > ceiling:
        return DepthBound(ceiling, True)
    return DepthBound(value, False)
