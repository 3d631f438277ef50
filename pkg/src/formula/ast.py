"""HumanATL[F] abstract syntax"""
from dataclasses import dataclass
from typing import Iterator, Tuple, Union


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Constant:
    value: float


@dataclass(frozen=True)
class Compare:
    """Crisp comparison of an atom's degree; evaluates to 1.0 or 0.0."""
    atom: str
    op: str
    threshold: float


@dataclass(frozen=True)
class Connective:
    func: str
    args: Tuple['Formula', ...]


@dataclass(frozen=True)
class Next:
    operand: 'Formula'


@dataclass(frozen=True)
class Until:
    left: 'Formula'
    right: 'Formula'


@dataclass(frozen=True)
class Release:
    left: 'Formula'
    right: 'Formula'


PathNode = Union[Next, Until, Release]


@dataclass(frozen=True)
class Strategic:
    coalition: Tuple[str, ...]
    k: int
    b: int
    path: PathNode


Formula = Union[Atom, Constant, Compare, Connective, Strategic]

TRUE = Constant(1.0)
FALSE = Constant(0.0)


def globally(phi: Formula) -> Release:
    return Release(FALSE, phi)


def eventually(phi: Formula) -> Until:
    return Until(TRUE, phi)


def path_operands(path: PathNode) -> Tuple[Formula, ...]:
    if isinstance(path, Next):
        return (path.operand,)
    return (path.left, path.right)


def subformulas(phi: Formula) -> Iterator[Formula]:
    """Post-order walk: children before parents."""
    if isinstance(phi, Connective):
        for a in phi.args:
            yield from subformulas(a)
    elif isinstance(phi, Strategic):
        for a in path_operands(phi.path):
            yield from subformulas(a)
    yield phi


def is_strategic_free(phi: Formula) -> bool:
    return not any(isinstance(f, Strategic) for f in subformulas(phi))
