"""Optionality and satisfaction degree of formulas."""

from __future__ import annotations

from typing import Callable, Collection

from .connectives import LogicRegistry, connective_degree, connective_optionality
from .kernel import INF, And, Atom, Choice, Degree, Formula, Neg, Or

__all__ = ["CompiledFormula", "compile_formula", "optionality", "degree"]


class CompiledFormula:
    """A formula prepared for repeated evaluation under one registry.

    Optionalities are computed once per node when compiling; ``degree`` then
    walks a tree of closures that only looks at the interpretation.  Formulas
    nested deeper than ``CLOSURE_DEPTH`` run as a flat post-order program
    instead, so evaluation never recurses.
    """

    __slots__ = ("formula", "registry", "optionality", "_eval")

    def __init__(self, registry: LogicRegistry, formula: Formula):
        self.formula = formula
        self.registry = registry
        self.optionality, self._eval = _build(registry, formula)

    def degree(self, interp: Collection[str]) -> Degree:
        return self._eval(interp)

    __call__ = degree


CLOSURE_DEPTH = 200


def _depth(f: Formula) -> int:
    best, stack = 0, [(f, 1)]
    while stack:
        node, d = stack.pop()
        best = max(best, d)
        if isinstance(node, Neg):
            stack.append((node.child, d + 1))
        elif not isinstance(node, Atom):
            stack.append((node.left, d + 1))
            stack.append((node.right, d + 1))
    return best


def _build(reg: LogicRegistry, f: Formula):
    if _depth(f) > CLOSURE_DEPTH:
        return _build_flat(reg, f)
    # iterative post-order so deep chains do not hit the recursion limit
    done = {}
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in done:
            continue
        if isinstance(node, Atom):
            done[id(node)] = (1, _atom(node.name))
            continue
        children = (node.child,) if isinstance(node, Neg) else (node.left, node.right)
        if not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in children if id(c) not in done)
            continue
        if isinstance(node, Neg):
            _, ev = done[id(node.child)]
            done[id(node)] = (1, _neg(ev))
        elif isinstance(node, Choice):
            spec = reg[node.op]
            k, left = done[id(node.left)]
            l, right = done[id(node.right)]
            done[id(node)] = (connective_optionality(spec, k, l), _choice(spec, k, l, left, right))
        else:
            k, left = done[id(node.left)]
            l, right = done[id(node.right)]
            combine = _and if isinstance(node, And) else _or
            done[id(node)] = (max(k, l), combine(left, right))
    return done[id(f)]


_ATOM, _NEG, _AND, _OR, _CHOICE = range(5)


def _build_flat(reg: LogicRegistry, f: Formula):
    slots = {}
    program = []
    opts = []
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in slots:
            continue
        if isinstance(node, Atom):
            slots[id(node)] = len(program)
            program.append((_ATOM, node.name, None, None))
            opts.append(1)
            continue
        children = (node.child,) if isinstance(node, Neg) else (node.left, node.right)
        if not expanded:
            stack.append((node, True))
            stack.extend((c, False) for c in children if id(c) not in slots)
            continue
        if isinstance(node, Neg):
            op, opt = (_NEG, slots[id(node.child)], None, None), 1
        else:
            i, j = slots[id(node.left)], slots[id(node.right)]
            k, l = opts[i], opts[j]
            if isinstance(node, Choice):
                spec = reg[node.op]
                opt = connective_optionality(spec, k, l)
                fn = spec.deg_fn if spec.trusted else (lambda k, l, m, n, spec=spec: connective_degree(spec, k, l, m, n))
                op = (_CHOICE, i, j, (fn, k, l))
            else:
                op, opt = ((_AND if isinstance(node, And) else _OR), i, j, None), max(k, l)
        slots[id(node)] = len(program)
        program.append(op)
        opts.append(opt)

    def ev(interp):
        vals = []
        push = vals.append
        for kind, a, b, extra in program:
            if kind == _ATOM:
                push(1 if a in interp else INF)
            elif kind == _NEG:
                push(1 if vals[a] is INF else INF)
            elif kind == _AND:
                push(max(vals[a], vals[b]))
            elif kind == _OR:
                push(min(vals[a], vals[b]))
            else:
                fn, k, l = extra
                push(fn(k, l, vals[a], vals[b]))
        return vals[-1]

    return opts[-1], ev


def _atom(name) -> Callable:
    def ev(interp):
        return 1 if name in interp else INF

    return ev


def _neg(child) -> Callable:
    def ev(interp):
        return 1 if child(interp) is INF else INF

    return ev


def _and(left, right) -> Callable:
    def ev(interp):
        m = left(interp)
        if m is INF:
            return INF
        n = right(interp)
        return n if n is INF or n > m else m

    return ev


def _or(left, right) -> Callable:
    def ev(interp):
        m = left(interp)
        if m == 1:
            return 1
        n = right(interp)
        return m if m <= n else n

    return ev


def _choice(spec, k, l, left, right) -> Callable:
    if spec.trusted:
        fn = spec.deg_fn

        def ev(interp):
            return fn(k, l, left(interp), right(interp))

    else:

        def ev(interp):
            return connective_degree(spec, k, l, left(interp), right(interp))

    return ev


def compile_formula(reg: LogicRegistry, f: Formula) -> CompiledFormula:
    return CompiledFormula(reg, f)


def optionality(reg: LogicRegistry, f: Formula) -> int:
    return compile_formula(reg, f).optionality


def degree(reg: LogicRegistry, interp: Collection[str], f: Formula) -> Degree:
    return compile_formula(reg, f).degree(interp)
