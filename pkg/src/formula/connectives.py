"""Fuzzy connective library"""
from typing import Dict, Sequence, Tuple

from utils.errors import ArityError, DegreeRange, UnknownConnective

# name -> (min arity, max arity or None)
ARITY: Dict[str, Tuple[int, int]] = {
    'min': (2, 2),
    'max': (2, 2),
    'neg': (1, 1),
    'impl': (2, 2),
    'avg': (1, None),
}

ALIASES = {'not': 'neg'}


def canonical_name(func: str) -> str:
    name = ALIASES.get(func, func)
    if name not in ARITY:
        raise UnknownConnective(f"Unknown connective '{func}'")
    return name


def check_arity(func: str, n: int):
    lo, hi = ARITY[canonical_name(func)]
    if n < lo or (hi is not None and n > hi):
        raise ArityError(f"{func} expects {lo if hi == lo else f'at least {lo}'} argument(s), got {n}")


def eval_connective(func: str, args: Sequence[float]) -> float:
    name = canonical_name(func)
    check_arity(name, len(args))
    for x in args:
        if not 0.0 <= x <= 1.0:
            raise DegreeRange(f"{name}: degree {x} outside [0,1]")

    if name == 'min':
        return min(args)
    if name == 'max':
        return max(args)
    if name == 'neg':
        return 1.0 - args[0]
    if name == 'impl':
        x, y = args
        return max(y, 1.0 - x)
    # avg is an extension beyond min/max/neg/impl
    return sum(args) / len(args)
