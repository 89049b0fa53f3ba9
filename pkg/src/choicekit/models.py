"""Model enumeration, preferred models and the degree-based decision problems.

Everything here is exhaustive search over subsets of the formula's variables,
which is sound because atoms outside a formula cannot change its degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .connectives import LogicRegistry
from .kernel import INF, TOP, Atom, Degree, Formula, Interpretation, occurrences, substitute, vars_of
from .semantics import CompiledFormula, compile_formula

__all__ = [
    "DEFAULT_VAR_CAP",
    "EnumerationLimitError",
    "DegreeProfile",
    "SearchResult",
    "all_interpretations",
    "interpretation_sort_key",
    "degree_profile",
    "model_check",
    "sat_at_most",
    "min_degree",
    "min_degree_binary_search",
    "preferred_models",
    "pref_model_check",
    "pref_model_sat",
    "pref_model_sat_by_search",
]

DEFAULT_VAR_CAP = 22


class EnumerationLimitError(RuntimeError):
    """The search space exceeds the configured variable cap."""


def interpretation_sort_key(interp: Interpretation):
    """Canonical order: by size, then by sorted member names."""
    return (len(interp), sorted(interp))


def all_interpretations(variables: Sequence[str], var_cap: Optional[int] = None) -> Iterator[Interpretation]:
    variables = sorted(variables)
    cap = DEFAULT_VAR_CAP if var_cap is None else var_cap
    if len(variables) > cap:
        raise EnumerationLimitError(
            f"{len(variables)} variables exceed the enumeration cap of {cap}"
        )
    for r in range(len(variables) + 1):
        for combo in combinations(variables, r):
            yield frozenset(combo)


def _compiled(reg, f) -> CompiledFormula:
    return f if isinstance(f, CompiledFormula) else compile_formula(reg, f)


@dataclass(frozen=True)
class DegreeProfile:
    """Degree of a formula under every subset of its variables."""

    variables: Tuple[str, ...]
    optionality: int
    entries: Dict[Interpretation, Degree]

    def min_degree(self) -> Degree:
        return min(self.entries.values(), default=INF)

    def preferred(self) -> List[Interpretation]:
        best = self.min_degree()
        if best is INF:
            return []
        return [i for i, d in self.entries.items() if d == best]


def _scope(cf, variables):
    own = vars_of(cf.formula)
    if variables is None:
        return own
    variables = frozenset(variables)
    if not own <= variables:
        raise ValueError(f"variables {sorted(own - variables)} of the formula are missing from the scope")
    return variables


def degree_profile(
    reg: LogicRegistry, f: Formula, var_cap: Optional[int] = None, *, variables=None
) -> DegreeProfile:
    """Degrees over all subsets of ``variables`` (default: those of ``f``)."""
    cf = _compiled(reg, f)
    variables = tuple(sorted(_scope(cf, variables)))
    entries = {i: cf.degree(i) for i in all_interpretations(variables, var_cap)}
    return DegreeProfile(variables, cf.optionality, entries)


def model_check(reg: LogicRegistry, interp, f: Formula, k: Degree) -> bool:
    return _compiled(reg, f).degree(interp) <= k


def sat_at_most(reg: LogicRegistry, f: Formula, k: Degree, var_cap: Optional[int] = None) -> Optional[Interpretation]:
    """Some interpretation with degree at most ``k``, or None."""
    cf = _compiled(reg, f)
    for interp in all_interpretations(vars_of(cf.formula), var_cap):
        if cf.degree(interp) <= k:
            return interp
    return None


def min_degree(reg: LogicRegistry, f: Formula, var_cap: Optional[int] = None) -> Degree:
    cf = _compiled(reg, f)
    best = INF
    for interp in all_interpretations(vars_of(cf.formula), var_cap):
        d = cf.degree(interp)
        if d < best:
            best = d
            if best == 1:
                break
    return best


@dataclass(frozen=True)
class SearchResult:
    degree: Degree
    oracle_calls: int


def min_degree_binary_search(reg: LogicRegistry, f: Formula, var_cap: Optional[int] = None) -> SearchResult:
    """Minimum degree via binary search over ``1, ..., opt(f), INF``.

    Each probe asks :func:`sat_at_most` whether degree ``<= k`` is reachable.
    The INF end of the range is never probed: if no finite degree up to
    ``opt(f)`` is reachable then none is, so the answer is INF.
    """
    cf = _compiled(reg, f)
    lo, hi = 1, cf.optionality + 1  # hi stands for INF
    calls = 0
    while lo < hi:
        mid = (lo + hi) // 2
        calls += 1
        if sat_at_most(reg, cf, mid, var_cap) is not None:
            hi = mid
        else:
            lo = mid + 1
    return SearchResult(INF if lo > cf.optionality else lo, calls)


def preferred_models(
    reg: LogicRegistry, f: Formula, var_cap: Optional[int] = None, *, variables=None
) -> List[Interpretation]:
    """All preferred models restricted to ``variables``, in canonical order.

    ``variables`` defaults to ``vars_of(f)``; a larger scope is needed to
    compare preferred models of formulas over different variables.
    """
    profile = degree_profile(reg, f, var_cap, variables=variables)
    return sorted(profile.preferred(), key=interpretation_sort_key)


def pref_model_check(reg: LogicRegistry, interp, f: Formula, var_cap: Optional[int] = None) -> bool:
    cf = _compiled(reg, f)
    own = cf.degree(interp)
    if own is INF:
        return False
    for other in all_interpretations(vars_of(cf.formula), var_cap):
        if cf.degree(other) < own:
            return False
    return True


def pref_model_sat(reg: LogicRegistry, f: Formula, atom: str, var_cap: Optional[int] = None) -> Optional[Interpretation]:
    """A preferred model containing ``atom``, or None.

    An atom outside the formula is free: any preferred model extended by it
    stays preferred.
    """
    models = preferred_models(reg, f, var_cap)
    if atom not in vars_of(f):
        return models[0] | {atom} if models else None
    for m in models:
        if atom in m:
            return m
    return None


def pref_model_sat_by_search(reg: LogicRegistry, f: Formula, atom: str, var_cap: Optional[int] = None) -> Tuple[bool, int]:
    """Decide preferred-model satisfiability with two binary searches.

    Replacing ``atom`` by TRUE gives a formula whose reachable degrees are
    exactly those reachable by interpretations containing ``atom``; the
    instance is positive iff both minimum degrees agree and are finite.
    Returns the answer and the total number of satisfiability probes.
    """
    grounded = f
    for path in list(occurrences(f, Atom(atom))):
        grounded = substitute(grounded, path, TOP)
    full = min_degree_binary_search(reg, f, var_cap)
    restricted = min_degree_binary_search(reg, grounded, var_cap)
    answer = full.degree is not INF and full.degree == restricted.degree
    return answer, full.oracle_calls + restricted.oracle_calls
