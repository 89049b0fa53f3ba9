"""Choice connective definitions and logic registries.

A choice logic is fixed by its set of binary choice connectives, each given
by an optionality function ``opt(k, l)`` and a degree function
``deg(k, l, m, n)`` over the operands' optionalities ``k, l`` and degrees
``m, n``.  Both outputs are bounded: ``opt(k, l) <= (k+1)(l+1)`` and
``deg <= opt`` unless ``deg`` is INF.  User connectives are checked against
these bounds every time they are applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Optional

from .kernel import INF, Degree

__all__ = [
    "ConnectiveSpec",
    "LogicRegistry",
    "BoundViolationError",
    "UnknownConnectiveError",
    "UnknownLogicError",
    "BoundedVerdict",
    "CONFIRMED",
    "REFUTED",
    "ORDERED_DISJUNCTION",
    "ORDERED_CONJUNCTION",
    "LEXICOGRAPHIC",
    "SIMPLE_CONJUNCTION",
    "BUILTIN_LOGICS",
    "builtin_registry",
    "connective_optionality",
    "connective_degree",
    "check_opt_ignoring",
]

RESERVED_TOKENS = frozenset({"~", "&", "|", "(", ")", "#"})


class BoundViolationError(ValueError):
    """A connective function produced a value outside the framework's bounds."""


class UnknownConnectiveError(KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown connective"


class UnknownLogicError(ValueError):
    pass


@dataclass(frozen=True)
class ConnectiveSpec:
    """A named binary choice connective.

    ``opt_fn`` and ``deg_fn`` must be pure.  The three ``declared_*`` flags
    are trusted declarations: associativity and optionality-ignoring can be
    probed with bounded checks, optionality-differentiating cannot.  A
    connective declared optionality-differentiating promises that for formulas
    A, B with different optionalities some context built from this connective
    and the classical ones tells A and B apart by degree.
    """

    name: str
    token: str
    opt_fn: Callable[[int, int], int] = field(compare=False)
    deg_fn: Callable[[int, int, Degree, Degree], Degree] = field(compare=False)
    declared_associative: bool = False
    declared_opt_ignoring: bool = False
    declared_opt_differentiating: bool = False
    symbol: str = ""
    trusted: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.name.isidentifier():
            raise ValueError(f"connective name must be an identifier: {self.name!r}")
        if not self.token or self.token in RESERVED_TOKENS or any(c.isspace() for c in self.token):
            raise ValueError(f"invalid connective token {self.token!r}")
        if self.token[0].isalnum() or self.token[0] == "_":
            raise ValueError(f"connective token must start with a symbol: {self.token!r}")


def connective_optionality(spec: ConnectiveSpec, k: int, l: int) -> int:
    value = spec.opt_fn(k, l)
    if not spec.trusted:
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise BoundViolationError(f"{spec.name}: optionality {value!r} is not a positive int")
        if value > (k + 1) * (l + 1):
            raise BoundViolationError(
                f"{spec.name}: opt({k}, {l}) = {value} exceeds (k+1)(l+1) = {(k + 1) * (l + 1)}"
            )
    return value


def connective_degree(spec: ConnectiveSpec, k: int, l: int, m: Degree, n: Degree) -> Degree:
    value = spec.deg_fn(k, l, m, n)
    if not spec.trusted and value is not INF:
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            raise BoundViolationError(f"{spec.name}: degree {value!r} is not a positive int or INF")
        cap = connective_optionality(spec, k, l)
        if value > cap:
            raise BoundViolationError(
                f"{spec.name}: deg({k}, {l}, {m}, {n}) = {value} exceeds opt = {cap}"
            )
    return value


# --- built-in connectives -------------------------------------------------


def _qcl_deg(k, l, m, n):
    if m is not INF:
        return m
    if n is not INF:
        return n + k
    return INF


def _ccl_deg(k, l, m, n):
    if m == 1 and n is not INF:
        return n
    if m is not INF:
        return m + l
    return INF


def _lcl_deg(k, l, m, n):
    if m is not INF and n is not INF:
        return (m - 1) * l + n
    if m is not INF:
        return k * l + m
    if n is not INF:
        return k * l + k + n
    return INF


def _sccl_deg(k, l, m, n):
    if m is INF:
        return INF
    return m if n is not INF else m + 1


ORDERED_DISJUNCTION = ConnectiveSpec(
    name="ordered_disjunction",
    token="|>",
    opt_fn=lambda k, l: k + l,
    deg_fn=_qcl_deg,
    declared_associative=True,
    declared_opt_differentiating=True,
    symbol="×",
    trusted=True,
)

ORDERED_CONJUNCTION = ConnectiveSpec(
    name="ordered_conjunction",
    token="&>",
    opt_fn=lambda k, l: k + l,
    deg_fn=_ccl_deg,
    declared_associative=True,
    declared_opt_differentiating=True,
    symbol="⊙",
    trusted=True,
)

LEXICOGRAPHIC = ConnectiveSpec(
    name="lexicographic",
    token="@>",
    opt_fn=lambda k, l: (k + 1) * (l + 1) - 1,
    deg_fn=_lcl_deg,
    declared_opt_differentiating=True,
    symbol="⋄",
    trusted=True,
)

SIMPLE_CONJUNCTION = ConnectiveSpec(
    name="simple_conjunction",
    token="*>",
    opt_fn=lambda k, l: k + 1,
    deg_fn=_sccl_deg,
    declared_opt_ignoring=True,
    symbol="⊛",
    trusted=True,
)


# --- registries -----------------------------------------------------------


class LogicRegistry:
    """Immutable map from connective names to specs, defining one logic."""

    __slots__ = ("_name", "_by_name", "_by_token")

    def __init__(self, name: str, connectives: Iterable[ConnectiveSpec] = ()):
        by_name = {}
        by_token = {}
        for spec in connectives:
            if spec.name in by_name:
                raise ValueError(f"duplicate connective name {spec.name!r}")
            if spec.token in by_token:
                raise ValueError(f"duplicate connective token {spec.token!r}")
            by_name[spec.name] = spec
            by_token[spec.token] = spec
        object.__setattr__(self, "_name", name)
        object.__setattr__(self, "_by_name", MappingProxyType(by_name))
        object.__setattr__(self, "_by_token", MappingProxyType(by_token))

    def __setattr__(self, key, value):
        raise AttributeError("LogicRegistry is immutable")

    @property
    def name(self) -> str:
        return self._name

    @property
    def connectives(self) -> Mapping[str, ConnectiveSpec]:
        return self._by_name

    @property
    def tokens(self) -> Mapping[str, ConnectiveSpec]:
        return self._by_token

    def __contains__(self, name):
        return name in self._by_name

    def __iter__(self):
        return iter(self._by_name.values())

    def __len__(self):
        return len(self._by_name)

    def __getitem__(self, name: str) -> ConnectiveSpec:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownConnectiveError(
                f"connective {name!r} is not part of logic {self._name}"
            ) from None

    def __repr__(self):
        return f"LogicRegistry({self._name!r}, {sorted(self._by_name)})"

    def __eq__(self, other):
        if not isinstance(other, LogicRegistry):
            return NotImplemented
        return self._name == other._name and dict(self._by_name) == dict(other._by_name)

    def __hash__(self):
        return hash((self._name, tuple(sorted(self._by_name))))

    def extend(self, name: str, *specs: ConnectiveSpec) -> "LogicRegistry":
        return LogicRegistry(name, [*self, *specs])

    @property
    def opt_ignoring(self) -> bool:
        """Every connective ignores operand optionality (vacuous for PL)."""
        return all(s.declared_opt_ignoring for s in self)

    @property
    def opt_differentiating(self) -> bool:
        # One differentiating connective suffices: its distinguishing context
        # is available in any logic containing it. PL is vacuously so, since
        # every PL formula has optionality 1.
        return not self._by_name or any(s.declared_opt_differentiating for s in self)


BUILTIN_LOGICS = ("PL", "QCL", "CCL", "LCL", "SCCL", "QCCL")

_BUILTIN_CONNECTIVES = {
    "PL": (),
    "QCL": (ORDERED_DISJUNCTION,),
    "CCL": (ORDERED_CONJUNCTION,),
    "LCL": (LEXICOGRAPHIC,),
    "SCCL": (SIMPLE_CONJUNCTION,),
    "QCCL": (ORDERED_DISJUNCTION, ORDERED_CONJUNCTION),
}

_REGISTRY_CACHE = {}


def builtin_registry(logic_name: str) -> LogicRegistry:
    key = logic_name.upper()
    if key not in _BUILTIN_CONNECTIVES:
        raise UnknownLogicError(
            f"unknown logic {logic_name!r}; expected one of {', '.join(BUILTIN_LOGICS)}"
        )
    if key not in _REGISTRY_CACHE:
        _REGISTRY_CACHE[key] = LogicRegistry(key, _BUILTIN_CONNECTIVES[key])
    return _REGISTRY_CACHE[key]


# --- bounded classification checks ---------------------------------------

CONFIRMED = "confirmed-up-to-bound"
REFUTED = "refuted"


@dataclass(frozen=True)
class BoundedVerdict:
    status: str
    witness: Optional[dict] = None

    @property
    def confirmed(self) -> bool:
        return self.status == CONFIRMED


def check_opt_ignoring(spec: ConnectiveSpec, k_max: int, d_max: int) -> BoundedVerdict:
    """Test whether the degree function is independent of the optionalities.

    Only realizable inputs are compared: a finite operand degree never
    exceeds that operand's optionality.
    """
    if k_max < 1 or d_max < 1:
        raise ValueError("bounds must be >= 1")
    degrees = [*range(1, d_max + 1), INF]
    opts = range(1, k_max + 1)
    for m, n in product(degrees, repeat=2):
        seen = None
        for k, l in product(opts, repeat=2):
            if (m is not INF and m > k) or (n is not INF and n > l):
                continue
            d = connective_degree(spec, k, l, m, n)
            if seen is None:
                seen = (k, l, d)
            elif d != seen[2]:
                return BoundedVerdict(
                    REFUTED,
                    {
                        "m": m,
                        "n": n,
                        "first": {"k": seen[0], "l": seen[1], "degree": seen[2]},
                        "second": {"k": k, "l": l, "degree": d},
                    },
                )
    return BoundedVerdict(CONFIRMED)
