"""Core data model: degrees, formula trees, interpretations, occurrence paths."""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterator, Tuple, Union

__all__ = [
    "INF",
    "Infinity",
    "Degree",
    "Formula",
    "Atom",
    "Neg",
    "And",
    "Or",
    "Choice",
    "Interpretation",
    "OccurrencePath",
    "LEFT",
    "RIGHT",
    "DOWN",
    "InvalidPathError",
    "RESERVED_PREFIX",
    "TOP_ATOM",
    "TOP",
    "BOTTOM",
    "is_top",
    "is_bottom",
    "interpretation",
    "vars_of",
    "size_of",
    "subformula_at",
    "substitute",
    "occurrences",
    "fresh_names",
    "check_degree",
]


class Infinity:
    """The unsatisfied degree. Compares greater than every finite degree."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())

    def __hash__(self):
        return hash("choicekit.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        if other is self or isinstance(other, int):
            return False
        return NotImplemented

    def __le__(self, other):
        if other is self:
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if other is self or isinstance(other, int):
            return True
        return NotImplemented

    # saturating arithmetic
    def __add__(self, other):
        if other is self or isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__
    __mul__ = __add__
    __rmul__ = __add__


INF = Infinity()

Degree = Union[int, Infinity]


def check_degree(value) -> Degree:
    """Validate a degree value: a positive int or INF."""
    if value is INF:
        return INF
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"degree must be a positive int or INF, got {value!r}")
    if value < 1:
        raise ValueError(f"finite degrees are >= 1, got {value}")
    return value


# --- formulas -------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("atom names must be nonempty")


@dataclass(frozen=True)
class Neg:
    child: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Choice:
    """Binary choice connective, identified by its registry name."""

    op: str
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Neg, And, Or, Choice]

Interpretation = FrozenSet[str]


def interpretation(atoms=()) -> Interpretation:
    if isinstance(atoms, str):
        atoms = [a.strip() for a in atoms.split(",") if a.strip()]
    return frozenset(atoms)


# Fresh and reserved atoms start with two underscores; the parser rejects
# them in user input unless explicitly allowed.
RESERVED_PREFIX = "__"
TOP_ATOM = "__top"
TOP: Formula = Or(Atom(TOP_ATOM), Neg(Atom(TOP_ATOM)))
BOTTOM: Formula = And(Atom(TOP_ATOM), Neg(Atom(TOP_ATOM)))


def is_top(f: Formula) -> bool:
    return f == TOP


def is_bottom(f: Formula) -> bool:
    return f == BOTTOM


# --- structural utilities -------------------------------------------------

LEFT = "L"
RIGHT = "R"
DOWN = "D"

OccurrencePath = Tuple[str, ...]


class InvalidPathError(ValueError):
    pass


def vars_of(f: Formula) -> FrozenSet[str]:
    out = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            out.add(node.name)
        elif isinstance(node, Neg):
            stack.append(node.child)
        else:
            stack.append(node.left)
            stack.append(node.right)
    return frozenset(out)


def size_of(f: Formula) -> int:
    """Number of atom occurrences, e.g. |x & x & y| = 3."""
    n = 0
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            n += 1
        elif isinstance(node, Neg):
            stack.append(node.child)
        else:
            stack.append(node.left)
            stack.append(node.right)
    return n


def _step(node: Formula, step: str) -> Formula:
    if step == DOWN and isinstance(node, Neg):
        return node.child
    if step == LEFT and isinstance(node, (And, Or, Choice)):
        return node.left
    if step == RIGHT and isinstance(node, (And, Or, Choice)):
        return node.right
    raise InvalidPathError(f"step {step!r} does not apply to {type(node).__name__}")


def subformula_at(f: Formula, path: OccurrencePath) -> Formula:
    node = f
    for step in path:
        node = _step(node, step)
    return node


def substitute(f: Formula, path: OccurrencePath, replacement: Formula) -> Formula:
    """Return ``f`` with the occurrence at ``path`` replaced; ``f`` is untouched."""
    if not path:
        return replacement
    step, rest = path[0], tuple(path[1:])
    child = _step(f, step)
    new_child = substitute(child, rest, replacement)
    if isinstance(f, Neg):
        return Neg(new_child)
    if step == LEFT:
        return _rebuild(f, new_child, f.right)
    return _rebuild(f, f.left, new_child)


def _rebuild(f, left, right):
    if isinstance(f, Choice):
        return Choice(f.op, left, right)
    return type(f)(left, right)


def occurrences(f: Formula, target: Formula) -> Iterator[OccurrencePath]:
    """Paths of every occurrence of ``target`` in ``f``, in pre-order."""
    stack = [(f, ())]
    while stack:
        node, path = stack.pop()
        if node == target:
            yield path
        if isinstance(node, Neg):
            stack.append((node.child, path + (DOWN,)))
        elif not isinstance(node, Atom):
            stack.append((node.right, path + (RIGHT,)))
            stack.append((node.left, path + (LEFT,)))


def fresh_names(avoid, count: int, stem: str = "v"):
    """``count`` reserved-prefix atom names not in ``avoid``."""
    avoid = set(avoid)
    out = []
    i = 0
    while len(out) < count:
        name = f"{RESERVED_PREFIX}{stem}{i}"
        if name not in avoid:
            out.append(name)
            avoid.add(name)
        i += 1
    return out
