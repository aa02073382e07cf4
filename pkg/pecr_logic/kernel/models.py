"""
Kernel objects: irreducible extended programs, their store, matches and fresh labels
"""
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, List, Optional, Set, Tuple

from django.utils.translation import gettext as _

from pecr_logic.common.services import CapacityError, RuleApplicationError
from pecr_logic.programs.models import AtomicProgram, Label, LabelTable, ProgramList

SCHEMA_RULES = ('iot', 'sr1', 'sr2')


class Provenance(Enum):
    AXIOM = 'axiom'
    THEOREM = 'theorem'
    SCHEMA = 'schema'


@dataclass(frozen=True)
class Iep:
    label: str
    premise: ProgramList
    conclusion: AtomicProgram
    provenance: Provenance = Provenance.AXIOM

    def __str__(self):
        return '{}\n-----\n{}'.format(self.premise, self.conclusion)

    @property
    def program(self) -> ProgramList:
        return self.premise + self.conclusion


class Substitution(dict):
    """
    Map from stored IEP labels to proof labels; constants map to themselves
    """

    def apply(self, label: Label) -> Label:
        if label.is_constant:
            return label
        try:
            return self[label]
        except KeyError:
            raise RuleApplicationError(_("Label {} is not bound by the premise").format(label))

    def __str__(self):
        return '{' + ', '.join('{}->{}'.format(k, v) for k, v in self.items()) + '}'


@dataclass(frozen=True)
class MatchResult:
    clist: Tuple[int, ...]
    subst: Substitution = field(default_factory=Substitution, compare=False, hash=False)


class FreshLabelAllocator:
    """
    Issues the smallest variable id not used by the current proof program
    """

    def __init__(self, labels: LabelTable, used: Iterable[Label] = ()):
        self.labels = labels
        self.reserved: Set[int] = set()
        self.reserve(used)

    def reserve(self, labels: Iterable[Label]):
        for label in labels:
            if label.is_variable:
                self.reserved.add(label.id)

    def reserve_program(self, p: Iterable[AtomicProgram]):
        for item in p:
            self.reserve(item.labels)

    @property
    def next_id(self) -> int:
        label_id = 1
        while label_id in self.reserved:
            label_id += 1
        return label_id

    def allocate(self) -> Label:
        label_id = self.next_id
        if label_id > self.labels.nvar:
            raise CapacityError(_("No fresh variable left below nvar={}").format(self.labels.nvar))
        self.reserved.add(label_id)
        return self.labels.variable(label_id)

    def copy(self) -> 'FreshLabelAllocator':
        other = FreshLabelAllocator(self.labels)
        other.reserved = set(self.reserved)
        return other


class IepStore:
    """
    Append-only store of axioms and checked theorems, in insertion order
    """

    def __init__(self, ieps: Iterable[Iep] = ()):
        self._ieps: 'OrderedDict[str, Iep]' = OrderedDict()
        for iep in ieps:
            self.add(iep)

    def add(self, iep: Iep):
        if iep.label in self._ieps or iep.label in SCHEMA_RULES:
            raise RuleApplicationError(_("Rule label '{}' already stored").format(iep.label))
        self._ieps[iep.label] = iep

    def get(self, label: str) -> Optional[Iep]:
        return self._ieps.get(label)

    def __contains__(self, label: str):
        return label in self._ieps

    def __iter__(self) -> Iterator[Iep]:
        return iter(self._ieps.values())

    def __len__(self):
        return len(self._ieps)

    @property
    def labels(self) -> List[str]:
        return list(self._ieps.keys())

    def theorems(self) -> List[Iep]:
        return [iep for iep in self if iep.provenance is Provenance.THEOREM]

    def copy(self) -> 'IepStore':
        return IepStore(self)
