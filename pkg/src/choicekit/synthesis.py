"""Obtainable degrees and formula synthesis from degree tables."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from .connectives import LogicRegistry, UnknownConnectiveError, connective_degree, connective_optionality
from .kernel import (
    BOTTOM,
    INF,
    TOP,
    And,
    Atom,
    Choice,
    Degree,
    Formula,
    Interpretation,
    Neg,
    Or,
    check_degree,
    size_of,
)

__all__ = [
    "DegreeAssignment",
    "UnobtainableDegreeError",
    "Witness",
    "obtainable_pairs",
    "degree_witnesses",
    "reachable_degrees",
    "ground_to_degree",
    "characteristic_formula",
    "synthesize",
]


class UnobtainableDegreeError(ValueError):
    pass


# A witness is a formula together with an interpretation realizing a degree.
Witness = Tuple[Formula, Interpretation]


def obtainable_pairs(reg: LogicRegistry, iteration_bound: int) -> Dict[Tuple[int, Degree], Formula]:
    """Reachable ``(optionality, degree)`` pairs with a smallest ground witness.

    Starts from TRUE and FALSE and closes under negation, conjunction,
    disjunction and every connective of ``reg`` for ``iteration_bound``
    rounds.  Witnesses are ground (built from TRUE/FALSE only), so their
    degree is the same under every interpretation.
    """
    if iteration_bound < 1:
        raise ValueError("iteration_bound must be >= 1")
    pairs: Dict[Tuple[int, Degree], Formula] = {(1, 1): TOP, (1, INF): BOTTOM}

    def offer(found, key, formula):
        old = found.get(key) or pairs.get(key)
        if old is None or size_of(formula) < size_of(old):
            found[key] = formula

    for _ in range(iteration_bound):
        current = list(pairs.items())
        found = {}
        for (k, m), f in current:
            offer(found, (1, 1 if m is INF else INF), Neg(f))
            for (l, n), g in current:
                offer(found, (max(k, l), max(m, n)), And(f, g))
                offer(found, (max(k, l), min(m, n)), Or(f, g))
                for spec in reg:
                    key = (connective_optionality(spec, k, l), connective_degree(spec, k, l, m, n))
                    offer(found, key, Choice(spec.name, f, g))
        if not found:
            break
        pairs.update(found)
    return pairs


def degree_witnesses(reg: LogicRegistry, iteration_bound: int) -> Dict[Degree, Witness]:
    """One smallest witness ``(formula, interpretation)`` per reached degree."""
    out: Dict[Degree, Witness] = {}
    for (_, d), f in obtainable_pairs(reg, iteration_bound).items():
        if d not in out or size_of(f) < size_of(out[d][0]):
            out[d] = (f, frozenset())
    return out


def reachable_degrees(reg: LogicRegistry, iteration_bound: int) -> FrozenSet[Degree]:
    """Under-approximation of the obtainable degrees of ``reg``."""
    return frozenset(degree_witnesses(reg, iteration_bound))


def ground_to_degree(reg: LogicRegistry, g: Formula, j) -> Formula:
    """Replace atoms in ``j`` by TRUE and all others by FALSE.

    The result has degree ``deg(j, g)`` under every interpretation.
    """
    j = frozenset(j)

    def go(f):
        if f == TOP or f == BOTTOM:
            return f
        if isinstance(f, Atom):
            return TOP if f.name in j else BOTTOM
        if isinstance(f, Neg):
            return Neg(go(f.child))
        if isinstance(f, Choice):
            if f.op not in reg:
                raise UnknownConnectiveError(f"connective {f.op!r} is not part of logic {reg.name}")
            return Choice(f.op, go(f.left), go(f.right))
        return type(f)(go(f.left), go(f.right))

    return go(g)


def characteristic_formula(j, variables) -> Formula:
    """Classical formula whose only model over ``variables`` is ``j``."""
    j = frozenset(j)
    variables = frozenset(variables)
    if not j <= variables:
        raise ValueError(f"{sorted(j - variables)} not among the variables {sorted(variables)}")
    literals = [Atom(a) for a in sorted(j)] + [Neg(Atom(a)) for a in sorted(variables - j)]
    if not literals:
        return TOP
    return reduce(And, literals)


@dataclass(frozen=True)
class DegreeAssignment:
    """A total map from subsets of ``variables`` to degrees."""

    variables: Tuple[str, ...]
    table: Mapping[Interpretation, Degree]

    def __post_init__(self):
        variables = tuple(sorted(set(self.variables)))
        object.__setattr__(self, "variables", variables)
        table = {frozenset(k): check_degree(v) for k, v in self.table.items()}
        expected = set(_subsets(variables))
        if set(table) != expected:
            missing = sorted(",".join(sorted(s)) for s in expected - set(table))
            extra = sorted(",".join(sorted(s)) for s in set(table) - expected)
            raise ValueError(f"table must cover every subset exactly; missing {missing}, extra {extra}")
        object.__setattr__(self, "table", table)

    def __call__(self, interp) -> Degree:
        return self.table[frozenset(interp) & frozenset(self.variables)]

    @classmethod
    def from_json(cls, data) -> "DegreeAssignment":
        if isinstance(data, str):
            data = json.loads(data)
        table = {}
        for key, value in data["table"].items():
            subset = frozenset(a.strip() for a in key.split(",") if a.strip())
            table[subset] = INF if value == "inf" else value
        return cls(tuple(data["variables"]), table)

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "table": {
                ",".join(sorted(s)): ("inf" if d is INF else d)
                for s, d in sorted(self.table.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
            },
        }


def _subsets(variables):
    for r in range(len(variables) + 1):
        for combo in combinations(variables, r):
            yield frozenset(combo)


def synthesize(
    reg: LogicRegistry,
    assignment: DegreeAssignment,
    witnesses: Optional[Mapping[Degree, Witness]] = None,
    iteration_bound: int = 3,
) -> Formula:
    """Build a formula whose degree under ``I`` is ``assignment(I & V)``.

    The result is the disjunction, over every subset ``J`` of ``V``, of the
    characteristic formula of ``J`` conjoined with a ground formula of degree
    ``assignment(J)``.  When ``witnesses`` is omitted they are computed with
    :func:`degree_witnesses` at ``iteration_bound``.
    """
    if witnesses is None:
        witnesses = degree_witnesses(reg, iteration_bound)
    clauses = []
    for j in _subsets(assignment.variables):
        target = assignment.table[j]
        if target not in witnesses:
            raise UnobtainableDegreeError(
                f"degree {target} has no witness in {reg.name}"
                f" (reachable set computed with iteration bound {iteration_bound});"
                " raise the bound or supply a witness"
            )
        g, i = witnesses[target]
        clauses.append(And(characteristic_formula(j, assignment.variables), ground_to_degree(reg, g, i)))
    return reduce(Or, clauses)
