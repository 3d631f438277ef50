"""Formula, guard and regex parsing (lark LALR) and printing"""
import re
from typing import List

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from automata.regex import GuardRegex, RConcat, RLiteral, RStar, RUnion
from formula.ast import (FALSE, TRUE, Atom, Compare, Connective, Constant, Formula, Next,
                         Release, Strategic, Until, eventually, globally)
from formula.connectives import canonical_name, check_arity
from formula.guards import GAnd, GCmp, GNot, GOr, GTrue, GuardExpr
from utils.errors import DegreeRange, FormulaError, NegativeBound, ParseError

GRAMMAR = r"""
?formula: strategic
        | "!" formula                                -> neg
        | primary

strategic: "<<" coalition ">>" BOUNDS path
coalition: IDENT ("," IDENT)*

?path: "X" formula                                   -> next
     | "G" formula                                   -> always
     | "F" formula                                   -> sometime
     | "(" formula "U" formula ")"                   -> until
     | "(" formula "R" formula ")"                   -> release

?primary: IDENT "(" formula ("," formula)* ")"       -> call
        | IDENT CMP NUMBER                           -> compare
        | IDENT                                      -> atom
        | "true"                                     -> true
        | "false"                                    -> false
        | "(" formula ")"

?guard: guard "|" gand                               -> g_or
      | gand
?gand: gand "&" gnot                                 -> g_and
     | gnot
?gnot: "!" gnot                                      -> g_not
     | gatom
?gatom: "true"                                       -> g_true
      | IDENT CMP NUMBER                             -> g_cmp
      | IDENT                                        -> g_bare
      | "(" guard ")"

?regex: regex "|" rconcat                            -> r_union
      | rconcat
?rconcat: rconcat "." rstar                          -> r_concat
        | rstar
?rstar: rstar "*"                                    -> r_star
      | ratom
?ratom: "{" guard "}"                                -> r_lit
      | "(" regex ")"

BOUNDS: /\[\s*k\s*<=\s*-?\d+\s*,\s*b\s*<=\s*-?\d+\s*\]/
CMP: "<=" | ">=" | "<" | ">" | "="
IDENT: /[A-Za-z_][A-Za-z0-9_]*/
NUMBER: /(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?/

%import common.WS
%ignore WS
"""

_BOUNDS = re.compile(r'k\s*<=\s*(-?\d+)\s*,\s*b\s*<=\s*(-?\d+)')


def _threshold(token) -> float:
    value = float(token)
    if not 0.0 <= value <= 1.0:
        raise DegreeRange(f"Threshold {value} outside [0,1]")
    return value


@v_args(inline=True)
class _Builder(Transformer):
    # formulas
    def atom(self, name):
        return Atom(str(name))

    def true(self):
        return TRUE

    def false(self):
        return FALSE

    def compare(self, name, op, number):
        return Compare(str(name), str(op), _threshold(number))

    def neg(self, inner):
        return Connective('neg', (inner,))

    def call(self, name, *args):
        func = canonical_name(str(name))
        check_arity(func, len(args))
        return Connective(func, tuple(args))

    def coalition(self, *names):
        seen: List[str] = []
        for n in names:
            if str(n) not in seen:
                seen.append(str(n))
        return tuple(seen)

    def strategic(self, coalition, bounds, path):
        k, b = (int(x) for x in _BOUNDS.search(str(bounds)).groups())
        if k < 0 or b < 0:
            raise NegativeBound(f"Bounds must be non-negative: k={k}, b={b}")
        return Strategic(coalition, k, b, path)

    def next(self, phi):
        return Next(phi)

    def always(self, phi):
        return globally(phi)

    def sometime(self, phi):
        return eventually(phi)

    def until(self, left, right):
        return Until(left, right)

    def release(self, left, right):
        return Release(left, right)

    # guards
    def g_true(self):
        return GTrue()

    def g_cmp(self, name, op, number):
        return GCmp(str(name), str(op), _threshold(number))

    def g_bare(self, name):
        return GCmp(str(name))

    def g_not(self, inner):
        return GNot(inner)

    def g_and(self, left, right):
        return GAnd(left, right)

    def g_or(self, left, right):
        return GOr(left, right)

    # regexes
    def r_lit(self, guard):
        return RLiteral(guard)

    def r_concat(self, left, right):
        return RConcat(left, right)

    def r_union(self, left, right):
        return RUnion(left, right)

    def r_star(self, inner):
        return RStar(inner)


_parser = Lark(GRAMMAR, parser='lalr', start=['formula', 'guard', 'regex'])


def _parse(text: str, start: str):
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedInput as e:
        pos = getattr(e, 'pos_in_stream', None)
        if pos is None or pos < 0:
            pos = len(text)
        raise ParseError(f"Cannot parse {start}: {text!r}", position=pos)
    try:
        return _Builder().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, (FormulaError, DegreeRange)):
            raise e.orig_exc
        raise


def parse_formula(text: str) -> Formula:
    return _parse(text, 'formula')


def parse_guard(text: str) -> GuardExpr:
    return _parse(text, 'guard')


def parse_regex(text: str) -> GuardRegex:
    return _parse(text, 'regex')


# --- printing ---

def _num(x: float) -> str:
    return repr(float(x))


def formula_to_text(phi: Formula) -> str:
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Constant):
        if phi.value == 1.0:
            return 'true'
        if phi.value == 0.0:
            return 'false'
        raise FormulaError(f"Constant {phi.value} has no concrete syntax")
    if isinstance(phi, Compare):
        return f"{phi.atom}{phi.op}{_num(phi.threshold)}"
    if isinstance(phi, Connective):
        if phi.func == 'neg':
            return f"!({formula_to_text(phi.args[0])})"
        return f"{phi.func}({', '.join(formula_to_text(a) for a in phi.args)})"
    if isinstance(phi, Strategic):
        head = f"<<{','.join(phi.coalition)}>>[k<={phi.k},b<={phi.b}]"
        path = phi.path
        if isinstance(path, Next):
            return f"{head}X {formula_to_text(path.operand)}"
        op = 'U' if isinstance(path, Until) else 'R'
        return f"{head}({formula_to_text(path.left)} {op} {formula_to_text(path.right)})"
    raise TypeError(f"Not a formula: {phi!r}")


def guard_to_text(g: GuardExpr) -> str:
    def wrap(x):
        text = guard_to_text(x)
        return f"({text})" if isinstance(x, (GAnd, GOr)) else text

    if isinstance(g, GTrue):
        return 'true'
    if isinstance(g, GCmp):
        if g.threshold is None:
            return g.atom
        return f"{g.atom}{g.op}{_num(g.threshold)}"
    if isinstance(g, GNot):
        return f"!{wrap(g.inner)}"
    if isinstance(g, GAnd):
        return f"{wrap(g.left)} & {wrap(g.right)}"
    return f"{wrap(g.left)} | {wrap(g.right)}"


def regex_to_text(r: GuardRegex) -> str:
    def wrap(x):
        text = regex_to_text(x)
        return f"({text})" if isinstance(x, (RConcat, RUnion)) else text

    if isinstance(r, RLiteral):
        return f"{{{guard_to_text(r.guard)}}}"
    if isinstance(r, RStar):
        return f"{wrap(r.inner)}*"
    if isinstance(r, RConcat):
        return f"{wrap(r.left)}.{wrap(r.right)}"
    return f"{wrap(r.left)}|{wrap(r.right)}"
