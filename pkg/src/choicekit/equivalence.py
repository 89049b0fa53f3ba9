"""Degree-, full and strong equivalence of choice-logic formulas.

Strong equivalence (same preferred models in every context) is decided
through the simpler notions when the registry is classified: degree
equivalence for optionality-ignoring logics, full equivalence for
optionality-differentiating ones.  Degree inequivalence refutes strong
equivalence in every logic, and :func:`inequivalence_context` turns such a
refutation into an explicit context.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Tuple, Union

from .connectives import CONFIRMED, REFUTED, BoundedVerdict, LogicRegistry, connective_degree, connective_optionality
from .kernel import (
    BOTTOM,
    INF,
    LEFT,
    RIGHT,
    TOP_ATOM,
    And,
    Atom,
    Choice,
    Degree,
    Formula,
    Interpretation,
    Neg,
    OccurrencePath,
    Or,
    fresh_names,
    subformula_at,
    substitute,
    vars_of,
)
from .models import all_interpretations, preferred_models
from .semantics import compile_formula
from .synthesis import DegreeAssignment, synthesize

__all__ = [
    "EQUIVALENT",
    "INEQUIVALENT",
    "UNKNOWN",
    "EquivVerdict",
    "InterpretationWitness",
    "OptionalityWitness",
    "ContextWitness",
    "ConstructionError",
    "degree_equivalent",
    "fully_equivalent",
    "strongly_equivalent",
    "inequivalence_context",
    "check_associative",
]

EQUIVALENT = "equivalent"
INEQUIVALENT = "inequivalent"
UNKNOWN = "unknown"


class ConstructionError(RuntimeError):
    """A distinguishing context failed its own verification."""


@dataclass(frozen=True)
class InterpretationWitness:
    interpretation: Interpretation
    degrees: Tuple[Degree, Degree]

    def recheck(self, reg, a, b) -> bool:
        da = compile_formula(reg, a).degree(self.interpretation)
        db = compile_formula(reg, b).degree(self.interpretation)
        return (da, db) == self.degrees and da != db


@dataclass(frozen=True)
class OptionalityWitness:
    optionalities: Tuple[int, int]

    def recheck(self, reg, a, b) -> bool:
        ka = compile_formula(reg, a).optionality
        kb = compile_formula(reg, b).optionality
        return (ka, kb) == self.optionalities and ka != kb


@dataclass(frozen=True)
class ContextWitness:
    """A context whose preferred models change when ``a`` at ``path`` becomes ``b``.

    ``model`` is preferred for exactly one of the two formulas.
    """

    context: Formula
    path: OccurrencePath
    model: Interpretation

    def recheck(self, reg, a, b, var_cap=None) -> bool:
        if subformula_at(self.context, self.path) != a:
            return False
        before, after = _preferred_pair(reg, self.context, self.path, b, var_cap)
        return before != after and (self.model in before) != (self.model in after)


def _preferred_pair(reg, ctx, path, b, var_cap):
    """Preferred models of ``ctx`` and of ``ctx`` with ``b`` at ``path``.

    Both are taken over the union of the two formulas' variables so that
    the sets are comparable.
    """
    swapped = substitute(ctx, path, b)
    scope = vars_of(ctx) | vars_of(swapped)
    before = set(preferred_models(reg, ctx, var_cap, variables=scope))
    after = set(preferred_models(reg, swapped, var_cap, variables=scope))
    return before, after


Witness = Union[InterpretationWitness, OptionalityWitness, ContextWitness]


@dataclass(frozen=True)
class EquivVerdict:
    status: str
    method: str
    witness: Optional[Witness] = None

    @property
    def equivalent(self) -> bool:
        return self.status == EQUIVALENT


def _degree_witness(reg, a, b, var_cap) -> Optional[InterpretationWitness]:
    ca, cb = compile_formula(reg, a), compile_formula(reg, b)
    for interp in all_interpretations(vars_of(a) | vars_of(b), var_cap):
        da, db = ca.degree(interp), cb.degree(interp)
        if da != db:
            return InterpretationWitness(interp, (da, db))
    return None


def degree_equivalent(reg: LogicRegistry, a: Formula, b: Formula, var_cap=None) -> EquivVerdict:
    w = _degree_witness(reg, a, b, var_cap)
    if w is None:
        return EquivVerdict(EQUIVALENT, "degree-check")
    return EquivVerdict(INEQUIVALENT, "degree-check", w)


def fully_equivalent(reg: LogicRegistry, a: Formula, b: Formula, var_cap=None) -> EquivVerdict:
    w = _degree_witness(reg, a, b, var_cap)
    if w is not None:
        return EquivVerdict(INEQUIVALENT, "full-check", w)
    ka = compile_formula(reg, a).optionality
    kb = compile_formula(reg, b).optionality
    if ka != kb:
        return EquivVerdict(INEQUIVALENT, "full-check", OptionalityWitness((ka, kb)))
    return EquivVerdict(EQUIVALENT, "full-check")


def inequivalence_context(
    reg: LogicRegistry, a: Formula, b: Formula, interp, var_cap=None
) -> Tuple[Formula, OccurrencePath]:
    """Context ``(A & G) | (f & H)`` separating ``a`` and ``b`` by preferred models.

    ``interp`` must give ``a`` and ``b`` different degrees.  ``G`` and ``H``
    are synthesized over fresh variables so that their least degree is the
    smaller of the two; ``f`` is fresh as well.
    """
    ctx, path, _ = _build_context(reg, a, b, interp, var_cap)
    return ctx, path


def _build_context(reg, a, b, interp, var_cap):
    scope = vars_of(a) | vars_of(b)
    interp = frozenset(interp) & scope
    m = compile_formula(reg, a).degree(interp)
    n = compile_formula(reg, b).degree(interp)
    if m == n:
        raise ValueError(f"interpretation {sorted(interp)} gives both formulas degree {m}")
    k, source = (m, a) if m < n else (n, b)
    f_name, g_name, h_name = fresh_names(scope | {TOP_ATOM}, 3, stem="ctx")
    witnesses = {k: (source, interp), INF: (BOTTOM, frozenset())}

    def gadget(var):
        table = DegreeAssignment((var,), {frozenset(): INF, frozenset({var}): k})
        return synthesize(reg, table, witnesses)

    ctx = Or(And(a, gadget(g_name)), And(Atom(f_name), gadget(h_name)))
    path = (LEFT, LEFT)
    model = interp | {g_name}
    before, after = _preferred_pair(reg, ctx, path, b, var_cap)
    if before == after or (model in before) == (model in after):
        raise ConstructionError(
            "constructed context does not separate the formulas; "
            f"preferred models {sorted(map(sorted, before))} vs {sorted(map(sorted, after))}"
        )
    return ctx, path, model


def _context_witness(reg, a, b, interp, var_cap) -> ContextWitness:
    ctx, path, model = _build_context(reg, a, b, interp, var_cap)
    return ContextWitness(ctx, path, model)


def _optionality_context(reg, a, b, var_cap) -> Optional[ContextWitness]:
    """Look for a one-connective context exposing an optionality difference.

    Tries ``(a & FALSE) o p`` and ``p o (a & FALSE)`` for every connective,
    then lifts a degree difference to a preferred-model difference.
    """
    (p,) = fresh_names(vars_of(a) | vars_of(b) | {TOP_ATOM}, 1, stem="opt")
    blocked = And(a, BOTTOM)
    for spec in reg:
        shapes = [
            (Choice(spec.name, blocked, Atom(p)), (LEFT, LEFT)),
            (Choice(spec.name, Atom(p), blocked), (RIGHT, LEFT)),
        ]
        for inner, inner_path in shapes:
            swapped = substitute(inner, inner_path, b)
            w = _degree_witness(reg, inner, swapped, var_cap)
            if w is None:
                continue
            ctx, outer_path, model = _build_context(reg, inner, swapped, w.interpretation, var_cap)
            return ContextWitness(ctx, outer_path + inner_path, model)
    return None


def strongly_equivalent(reg: LogicRegistry, a: Formula, b: Formula, var_cap=None) -> EquivVerdict:
    """Decide strong equivalence through the registry's classification.

    Inequivalent verdicts carry a :class:`ContextWitness` whenever one can be
    built, otherwise the optionality pair.  Registries that are neither
    optionality-ignoring nor -differentiating get ``unknown`` unless degree
    equivalence already fails.
    """
    deg_w = _degree_witness(reg, a, b, var_cap)
    if reg.opt_ignoring:
        method = "degree-route"
    elif reg.opt_differentiating:
        method = "full-route"
    else:
        method = "degree-refutation" if deg_w is not None else "unclassified"

    if deg_w is not None:
        return EquivVerdict(INEQUIVALENT, method, _context_witness(reg, a, b, deg_w.interpretation, var_cap))
    if method == "unclassified":
        return EquivVerdict(UNKNOWN, method)
    if method == "degree-route":
        return EquivVerdict(EQUIVALENT, method)
    ka = compile_formula(reg, a).optionality
    kb = compile_formula(reg, b).optionality
    if ka == kb:
        return EquivVerdict(EQUIVALENT, method)
    witness = _optionality_context(reg, a, b, var_cap) or OptionalityWitness((ka, kb))
    return EquivVerdict(INEQUIVALENT, method, witness)


# --- bounded associativity ------------------------------------------------


def _operand_pool(reg, op, n_vars):
    names = [chr(ord("a") + i) for i in range(n_vars)] if n_vars <= 26 else [f"x{i}" for i in range(n_vars)]
    literals = [Atom(v) for v in names] + [Neg(Atom(v)) for v in names]
    pool = literals + [Choice(op, x, y) for x in literals for y in literals]
    return names, pool


def check_associative(reg: LogicRegistry, op: str, n_vars: int, var_cap=None) -> BoundedVerdict:
    """Compare ``(X o Y) o Z`` with ``X o (Y o Z)`` over a finite operand pool.

    Operands are atoms, negated atoms and one-connective combinations of those
    over ``n_vars`` variables.  A degree difference is preferred as witness;
    an optionality difference is reported only if no degree difference exists.
    """
    spec = reg[op]
    names, pool = _operand_pool(reg, op, n_vars)
    interps = list(all_interpretations(names, var_cap))

    # operands with identical optionality and degrees behave identically
    # under the connective, so one representative per signature suffices
    reps = {}
    for f in pool:
        cf = compile_formula(reg, f)
        sig = (cf.optionality, tuple(cf.degree(i) for i in interps))
        reps.setdefault(sig, f)
    sigs = list(reps)

    def combine(x, y):
        (k, dx), (l, dy) = x, y
        return (
            connective_optionality(spec, k, l),
            tuple(connective_degree(spec, k, l, m, n) for m, n in zip(dx, dy)),
        )

    opt_witness = None
    for x, y, z in product(sigs, repeat=3):
        left = combine(combine(x, y), z)
        right = combine(x, combine(y, z))
        if left[1] != right[1]:
            idx = next(i for i, (p, q) in enumerate(zip(left[1], right[1])) if p != q)
            witness = _assoc_witness(reg, op, reps[x], reps[y], reps[z])
            witness.update(interpretation=interps[idx], degrees=(left[1][idx], right[1][idx]))
            _recheck_assoc(reg, witness)
            return BoundedVerdict(REFUTED, witness)
        if left[0] != right[0] and opt_witness is None:
            opt_witness = _assoc_witness(reg, op, reps[x], reps[y], reps[z])
            opt_witness.update(optionalities=(left[0], right[0]))
    if opt_witness is not None:
        _recheck_assoc(reg, opt_witness)
        return BoundedVerdict(REFUTED, opt_witness)
    return BoundedVerdict(CONFIRMED)


def _assoc_witness(reg, op, x, y, z):
    return {
        "X": x,
        "Y": y,
        "Z": z,
        "left_nested": Choice(op, Choice(op, x, y), z),
        "right_nested": Choice(op, x, Choice(op, y, z)),
    }


def _recheck_assoc(reg, w):
    lhs = compile_formula(reg, w["left_nested"])
    rhs = compile_formula(reg, w["right_nested"])
    if "interpretation" in w:
        ok = (lhs.degree(w["interpretation"]), rhs.degree(w["interpretation"])) == w["degrees"]
    else:
        ok = (lhs.optionality, rhs.optionality) == w["optionalities"]
    if not ok:
        raise ConstructionError(f"associativity witness failed to re-check: {w}")
