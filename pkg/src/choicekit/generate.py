"""Seeded random formulas and lexicographic instances."""

from __future__ import annotations

import math
import random
from typing import Optional, Sequence

from .connectives import LogicRegistry, builtin_registry
from .kernel import And, Atom, Choice, Formula, Neg, Or, size_of, vars_of
from .reductions import LexInstance

__all__ = ["variable_names", "random_formula", "random_classical", "random_lex_instance"]


def variable_names(n: int) -> list:
    return [f"x{i}" for i in range(1, n + 1)]


def random_formula(
    rng: random.Random,
    reg: LogicRegistry,
    size: int,
    variables: Sequence[str],
    *,
    neg_prob: float = 0.2,
    choice_weight: float = 2.0,
) -> Formula:
    """A formula with exactly ``size`` atom occurrences over ``variables``.

    Binary nodes pick a choice connective with weight ``choice_weight`` each
    and the classical ones with weight 1 each; any node may be negated.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    ops = ["and", "or", *[s.name for s in reg]]
    weights = [1.0, 1.0, *[choice_weight] * len(reg)]

    def build(n):
        if n == 1:
            f = Atom(rng.choice(variables))
        else:
            k = rng.randint(1, n - 1)
            left, right = build(k), build(n - k)
            op = rng.choices(ops, weights)[0]
            if op == "and":
                f = And(left, right)
            elif op == "or":
                f = Or(left, right)
            else:
                f = Choice(op, left, right)
        if rng.random() < neg_prob:
            f = Neg(f)
        return f

    return build(size)


def random_classical(rng: random.Random, size: int, variables: Sequence[str], neg_prob: float = 0.3) -> Formula:
    return random_formula(rng, builtin_registry("PL"), size, variables, neg_prob=neg_prob)


def random_lex_instance(
    rng: random.Random,
    max_order: int = 3,
    max_vars: int = 7,
    *,
    log_bounded: bool = True,
    max_size: Optional[int] = None,
) -> LexInstance:
    """Random instance; with ``log_bounded`` the matrix is large enough that
    ``len(order) <= floor(log2(|matrix|))``."""
    n_order = rng.randint(1, max_order)
    n_vars = rng.randint(n_order, max_vars)
    variables = variable_names(n_vars)
    order = rng.sample(variables, n_order)
    min_size = 2**n_order if log_bounded else 1
    hi = max(max_size or 2 * min_size + 2, min_size)
    while True:
        size = rng.randint(max(min_size, n_order), max(hi, n_order))
        matrix = random_classical(rng, size, variables)
        # every order variable must occur in the matrix
        missing = [x for x in order if x not in vars_of(matrix)]
        for x in missing:
            matrix = And(matrix, Or(Atom(x), Neg(Atom(x))))
        inst = LexInstance(matrix, tuple(order))
        if not log_bounded or len(order) <= math.floor(math.log2(size_of(matrix))):
            return inst

