"""Regular expressions over guard literals"""
from dataclasses import dataclass
from typing import List, Union

from formula.guards import GTrue, GuardExpr, TRUE_GUARD


@dataclass(frozen=True)
class RLiteral:
    guard: GuardExpr


@dataclass(frozen=True)
class RConcat:
    left: 'GuardRegex'
    right: 'GuardRegex'


@dataclass(frozen=True)
class RUnion:
    left: 'GuardRegex'
    right: 'GuardRegex'


@dataclass(frozen=True)
class RStar:
    inner: 'GuardRegex'


GuardRegex = Union[RLiteral, RConcat, RUnion, RStar]

# True*.True: matches every non-empty history
DEFAULT_REGEX = RConcat(RStar(RLiteral(TRUE_GUARD)), RLiteral(TRUE_GUARD))


def size(r: GuardRegex) -> int:
    if isinstance(r, RLiteral):
        return 1
    if isinstance(r, RStar):
        return 1 + size(r.inner)
    return 1 + size(r.left) + size(r.right)


def literals(r: GuardRegex) -> List[GuardExpr]:
    """Distinct non-True literal guards in first-occurrence order; one letter bit each."""
    out: List[GuardExpr] = []

    def walk(node):
        if isinstance(node, RLiteral):
            if not isinstance(node.guard, GTrue) and node.guard not in out:
                out.append(node.guard)
        elif isinstance(node, RStar):
            walk(node.inner)
        else:
            walk(node.left)
            walk(node.right)

    walk(r)
    return out
