"""Linear constrained Horn clauses over integers and pad flags."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from padded_logic.errors import ContractViolation
from chc.constraints import CTRUE, Constraint, constraint_names, rename_constraint, show_constraint

BOOL = "Bool"
INT = "Int"

INIT = "init"
STEP = "step"
GOAL = "goal"


@dataclass(frozen=True)
class FlaggedVar:
    """A padded integer split into a pad flag and a value."""

    flag: str
    value: str

    @classmethod
    def named(cls, prefix: str, index: int) -> "FlaggedVar":
        return cls(f"{prefix}{index}f", f"{prefix}{index}v")


def letter_vars(prefix: str, k: int) -> Tuple[FlaggedVar, ...]:
    return tuple(FlaggedVar.named(prefix, i) for i in range(k))


@dataclass(frozen=True)
class PredicateSig:
    name: str
    k: int
    n: int
    state: str = ""

    @property
    def sorts(self) -> Tuple[str, ...]:
        return (BOOL, INT) * self.k + (INT,) * self.n


@dataclass(frozen=True)
class PredApp:
    pred: str
    args: Tuple[str, ...]

    def rename(self, mapping: Dict[str, str]) -> "PredApp":
        return PredApp(self.pred, tuple(mapping.get(a, a) for a in self.args))

    def show(self) -> str:
        return f"{self.pred}({', '.join(self.args)})"


def pred_args(letter: Tuple[FlaggedVar, ...], params: Tuple[str, ...]) -> Tuple[str, ...]:
    flat: List[str] = []
    for v in letter:
        flat.extend((v.flag, v.value))
    return tuple(flat) + tuple(params)


@dataclass(frozen=True)
class Clause:
    """``head <= body /\\ constraint``; a missing head is false."""

    kind: str
    head: Optional[PredApp]
    body: Optional[PredApp]
    constraint: Constraint = CTRUE
    label: str = ""

    def show(self) -> str:
        head = self.head.show() if self.head else "false"
        parts = []
        if self.body:
            parts.append(self.body.show())
        if self.constraint != CTRUE or not parts:
            parts.append(show_constraint(self.constraint))
        return f"{head} <= {' && '.join(parts)}"


@dataclass(frozen=True)
class ChcSystem:
    predicates: Tuple[PredicateSig, ...]
    clauses: Tuple[Clause, ...]
    params: Tuple[str, ...] = ()
    tracks: Tuple[str, ...] = ()
    # (i, j): track j is tail of track i
    links: Tuple[Tuple[int, int], ...] = ()
    nil_tracks: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        declared = {p.name: p for p in self.predicates}
        for clause in self.clauses:
            for app in (clause.head, clause.body):
                if app is None:
                    continue
                sig = declared.get(app.pred)
                if sig is None:
                    raise ContractViolation(f"clause mentions undeclared predicate {app.pred}")
                if len(app.args) != len(sig.sorts):
                    raise ContractViolation(f"{app.pred} expects {len(sig.sorts)} arguments")

    @property
    def k(self) -> int:
        return len(self.tracks)

    def signature(self, pred: str) -> PredicateSig:
        for p in self.predicates:
            if p.name == pred:
                return p
        raise ContractViolation(f"undeclared predicate {pred}")

    def clauses_of(self, kind: str) -> Tuple[Clause, ...]:
        return tuple(c for c in self.clauses if c.kind == kind)

    def variables(self, clause: Clause) -> List[Tuple[str, str]]:
        """Sorted (name, sort) pairs of every variable in ``clause``."""
        sorts: Dict[str, str] = {}
        for app in (clause.head, clause.body):
            if app is not None:
                sorts.update(zip(app.args, self.signature(app.pred).sorts))
        ints, flags = constraint_names(clause.constraint)
        for name in ints:
            sorts.setdefault(name, INT)
        for name in flags:
            sorts.setdefault(name, BOOL)
        return sorted(sorts.items())

    def summary(self) -> Dict[str, int]:
        return {
            "predicates": len(self.predicates),
            "clauses": len(self.clauses),
            "goals": len(self.clauses_of(GOAL)),
        }


@dataclass(frozen=True)
class DerivationState:
    """Pending atom (None for top) and the accumulated constraint."""

    atom: Optional[PredApp]
    constraint: Constraint


@dataclass
class Derivation:
    """A refutation found by forward search, stored goal-first.

    ``letters[t]`` is the letter at position t; the last one is all-padded.
    ``env`` binds every step-renamed variable.
    """

    clauses: List[Clause]
    letters: List[Tuple[object, ...]]
    params: Dict[str, int]
    env: Dict[str, object] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.clauses)


def step_name(name: str, position: int) -> str:
    return f"{name}@{position}"


def rename_for_step(clause: Clause, k: int, position: int) -> Tuple[Optional[PredApp], Optional[PredApp], Constraint]:
    """Rename a clause so that u reads letter ``position`` and v the next one.

    Initial clauses bind v to letter 0; goal clauses read u at ``position``.
    """
    mapping: Dict[str, str] = {}
    for u in letter_vars("u", k):
        mapping[u.flag] = step_name(u.flag, position)
        mapping[u.value] = step_name(u.value, position)
    target = 0 if clause.kind == INIT else position + 1
    for i, v in enumerate(letter_vars("v", k)):
        u = FlaggedVar.named("u", i)
        mapping[v.flag] = step_name(u.flag, target)
        mapping[v.value] = step_name(u.value, target)
    head = clause.head.rename(mapping) if clause.head else None
    body = clause.body.rename(mapping) if clause.body else None
    return head, body, rename_constraint(clause.constraint, mapping)
