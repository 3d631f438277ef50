"""Crisp Boolean guards over fuzzy-labelled states"""
import operator
from dataclasses import dataclass
from typing import Optional, Union

from model.rfcgs import Rfcgs

OPS = {
    '<': operator.lt,
    '<=': operator.le,
    '>': operator.gt,
    '>=': operator.ge,
    '=': operator.eq,
}


@dataclass(frozen=True)
class GTrue:
    pass


@dataclass(frozen=True)
class GCmp:
    """atom op threshold; a missing threshold is the bare-atom form (>= tau_guard)."""
    atom: str
    op: str = '>='
    threshold: Optional[float] = None


@dataclass(frozen=True)
class GNot:
    inner: 'GuardExpr'


@dataclass(frozen=True)
class GAnd:
    left: 'GuardExpr'
    right: 'GuardExpr'


@dataclass(frozen=True)
class GOr:
    left: 'GuardExpr'
    right: 'GuardExpr'


GuardExpr = Union[GTrue, GCmp, GNot, GAnd, GOr]

TRUE_GUARD = GTrue()


def eval_guard(m: Rfcgs, state: str, g: GuardExpr, tau_guard: float = 0.5) -> bool:
    if isinstance(g, GTrue):
        return True
    if isinstance(g, GCmp):
        v = m.label(state, g.atom)
        if g.threshold is None:
            return v >= tau_guard
        return OPS[g.op](v, g.threshold)
    if isinstance(g, GNot):
        return not eval_guard(m, state, g.inner, tau_guard)
    if isinstance(g, GAnd):
        return eval_guard(m, state, g.left, tau_guard) and eval_guard(m, state, g.right, tau_guard)
    if isinstance(g, GOr):
        return eval_guard(m, state, g.left, tau_guard) or eval_guard(m, state, g.right, tau_guard)
    raise TypeError(f"Not a guard: {g!r}")


def symbol_count(g: GuardExpr) -> int:
    if isinstance(g, (GTrue, GCmp)):
        return 1
    if isinstance(g, GNot):
        return 1 + symbol_count(g.inner)
    return 1 + symbol_count(g.left) + symbol_count(g.right)

