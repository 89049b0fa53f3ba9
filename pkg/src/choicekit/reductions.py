"""Lexicographic-optimization encodings into choice logics.

Interpretations over an order ``x1 > ... > xn`` are ranked with ``x1`` most
significant: the 1st largest is ``{x1, ..., xn}``, the ``2^n``-th is empty.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import reduce
from typing import List, Optional, Sequence, Tuple

from .connectives import (
    LEXICOGRAPHIC,
    ORDERED_CONJUNCTION,
    ORDERED_DISJUNCTION,
    SIMPLE_CONJUNCTION,
    builtin_registry,
)
from .kernel import And, Atom, Choice, Formula, Interpretation, Neg, Or, size_of, vars_of
from .models import all_interpretations, interpretation_sort_key, pref_model_sat
from .synthesis import characteristic_formula
from .syntax import parse, render

__all__ = [
    "LexInstance",
    "LogBoundError",
    "ENCODING_TARGETS",
    "lex_rank",
    "kth_largest",
    "lex_formula_lcl",
    "encode_lexmaxsat_lcl",
    "encode_loglex",
    "encode",
    "lex_oracle",
    "solve_via_encoding",
]

ENCODING_TARGETS = ("LCL", "QCL", "CCL", "SCCL")


class LogBoundError(ValueError):
    """The order is too long for a polynomial log-bounded encoding."""


def _classical(f: Formula) -> bool:
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Choice):
            return False
        if isinstance(node, Atom):
            continue
        stack.extend((node.child,) if isinstance(node, Neg) else (node.left, node.right))
    return True


@dataclass(frozen=True)
class LexInstance:
    matrix: Formula
    order: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if not self.order:
            raise ValueError("order must name at least one variable")
        if len(set(self.order)) != len(self.order):
            raise ValueError(f"order variables must be distinct: {list(self.order)}")
        missing = set(self.order) - vars_of(self.matrix)
        if missing:
            raise ValueError(f"order variables {sorted(missing)} do not occur in the matrix")
        if not _classical(self.matrix):
            raise ValueError("the matrix must be a classical formula")

    @property
    def query(self) -> str:
        return self.order[-1]

    def log_bound_holds(self) -> bool:
        return len(self.order) <= math.floor(math.log2(size_of(self.matrix)))

    @classmethod
    def from_json(cls, data) -> "LexInstance":
        if isinstance(data, str):
            data = json.loads(data)
        order = tuple(data["order"])
        if "query" in data and data["query"] != order[-1]:
            raise ValueError(f"query {data['query']!r} must be the last order variable {order[-1]!r}")
        return cls(parse(builtin_registry("PL"), data["matrix"]), order)

    def to_json(self) -> dict:
        return {"matrix": render(self.matrix), "order": list(self.order), "query": self.query}


def lex_rank(order: Sequence[str], interp) -> int:
    """Position (1-based) of ``interp`` restricted to ``order`` among all ``2^n``."""
    n = len(order)
    value = sum(1 << (n - 1 - i) for i, x in enumerate(order) if x in interp)
    return (1 << n) - value


def kth_largest(order: Sequence[str], k: int) -> Interpretation:
    n = len(order)
    if not 1 <= k <= 1 << n:
        raise ValueError(f"rank {k} outside 1..{1 << n}")
    value = (1 << n) - k
    return frozenset(x for i, x in enumerate(order) if value >> (n - 1 - i) & 1)


def lex_formula_lcl(order: Sequence[str]) -> Formula:
    """Right-nested ``x1 @> (x2 @> (... @> xn))``."""
    if not order:
        raise ValueError("order must be nonempty")
    atoms = [Atom(x) for x in order]
    return reduce(lambda acc, a: Choice(LEXICOGRAPHIC.name, a, acc), reversed(atoms[:-1]), atoms[-1])


def encode_lexmaxsat_lcl(inst: LexInstance) -> Formula:
    return And(inst.matrix, lex_formula_lcl(inst.order))


def _blocks(order) -> List[Formula]:
    return [characteristic_formula(kth_largest(order, i), order) for i in range(1, (1 << len(order)) + 1)]


def encode_loglex(inst: LexInstance, target: str, *, enforce_log_bound: bool = True) -> Formula:
    """Encode a log-bounded lexicographic instance into QCL, CCL or SCCL.

    QCL chains the characteristic formulas of the ranked interpretations with
    ordered disjunction; CCL and SCCL chain the cumulative disjunctions
    ``C_i = A_1 | ... | A_(2^n - i + 1)``, SCCL left-nested.
    """
    target = target.upper()
    if enforce_log_bound and not inst.log_bound_holds():
        raise LogBoundError(
            f"order of length {len(inst.order)} exceeds floor(log2(|F|)) = "
            f"{math.floor(math.log2(size_of(inst.matrix)))}"
        )
    blocks = _blocks(inst.order)
    if target == "QCL":
        chain = reduce(lambda acc, a: Choice(ORDERED_DISJUNCTION.name, a, acc), reversed(blocks[:-1]), blocks[-1])
    elif target in ("CCL", "SCCL"):
        total = len(blocks)
        cumulative = [reduce(Or, blocks[: total - i]) for i in range(total)]
        if target == "CCL":
            name = ORDERED_CONJUNCTION.name
            chain = reduce(lambda acc, c: Choice(name, c, acc), reversed(cumulative[:-1]), cumulative[-1])
        else:
            name = SIMPLE_CONJUNCTION.name
            chain = reduce(lambda acc, c: Choice(name, acc, c), cumulative[1:], cumulative[0])
    else:
        raise ValueError(f"log-bounded encodings target QCL, CCL or SCCL, not {target!r}")
    return And(inst.matrix, chain)


def encode(inst: LexInstance, target: str, *, enforce_log_bound: bool = True) -> Formula:
    if target.upper() == "LCL":
        return encode_lexmaxsat_lcl(inst)
    return encode_loglex(inst, target, enforce_log_bound=enforce_log_bound)


def lex_oracle(inst: LexInstance, var_cap=None) -> Optional[Tuple[Interpretation, Interpretation]]:
    """Lexicographically largest extendable projection and one extension.

    Plain classical brute force over all interpretations of the matrix.
    """
    order = inst.order
    best = None
    for interp in all_interpretations(vars_of(inst.matrix), var_cap):
        if not _holds(inst.matrix, interp):
            continue
        rank = lex_rank(order, interp)
        if best is None or rank < best[0] or (
            rank == best[0] and interpretation_sort_key(interp) < interpretation_sort_key(best[1])
        ):
            best = (rank, interp)
    if best is None:
        return None
    return frozenset(x for x in order if x in best[1]), best[1]


def _holds(f: Formula, interp) -> bool:
    if isinstance(f, Atom):
        return f.name in interp
    if isinstance(f, And):
        return _holds(f.left, interp) and _holds(f.right, interp)
    if isinstance(f, Or):
        return _holds(f.left, interp) or _holds(f.right, interp)
    return not _holds(f.child, interp)


def solve_via_encoding(inst: LexInstance, target: str, *, enforce_log_bound: bool = True, var_cap=None) -> bool:
    """True iff some preferred model of the encoding contains the query variable."""
    target = target.upper()
    reg = builtin_registry(target)
    formula = encode(inst, target, enforce_log_bound=enforce_log_bound)
    return pref_model_sat(reg, formula, inst.query, var_cap) is not None
