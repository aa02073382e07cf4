"""
Program data model: labels, atomic programs, program lists and application signatures
"""
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

from django.conf import settings
from django.utils.translation import gettext as _

from pecr_logic.common.services import CapacityError, PecrParseError, ProgramStructureError

VARIABLE_PATTERN = re.compile(r'^([a-z])([1-9][0-9]*)?$')

FATM = 'fatm'
DSJ = 'dsj'
CNJ = 'cnj'
SUBTYPES = (FATM, DSJ, CNJ)

EQUALITY = 'equality'
EQUIVALENCE = 'equivalence'

# Judgement programs never admit the substitution rules
SUBSTITUTION_INELIGIBLE = ('ext', 'aext', 'flse', 'aflse', 'ioeq')


class LabelKind(Enum):
    NULL = 0
    VARIABLE = 1
    CONSTANT = 2


@dataclass(frozen=True)
class Label:
    id: int
    kind: LabelKind
    text: str

    def __str__(self):
        return self.text

    @property
    def is_constant(self) -> bool:
        return self.kind is LabelKind.CONSTANT

    @property
    def is_variable(self) -> bool:
        return self.kind is LabelKind.VARIABLE


NULL_LABEL = Label(0, LabelKind.NULL, '0*')


class LabelTable:
    """
    Bijection between label texts and integer ids for one application.
    Variables are a..z, a1..z1, ...; the m-th constant has id nvar+m.
    """

    def __init__(self, constants: Tuple[str, ...] = (), nvar: Optional[int] = None):
        self.nvar = nvar or settings.PECR_NVAR
        self.constants = tuple(constants)
        self._constant_ids = {name: self.nvar + m for m, name in enumerate(self.constants, start=1)}

    def variable_id(self, text: str) -> Optional[int]:
        match = VARIABLE_PATTERN.match(text)
        if not match:
            return None
        letter, suffix = match.groups()
        return ord(letter) - 96 + 26 * int(suffix or 0)

    def variable_text(self, label_id: int) -> str:
        cycle, position = divmod(label_id - 1, 26)
        return chr(97 + position) + (str(cycle) if cycle else '')

    def intern(self, text: str) -> Label:
        """
        Return the label for a text token
        :param text: constant name or variable text
        """
        if text in self._constant_ids:
            return Label(self._constant_ids[text], LabelKind.CONSTANT, text)
        label_id = self.variable_id(text)
        if label_id is None:
            raise PecrParseError(_("Invalid label '{}'").format(text))
        if label_id > self.nvar:
            raise CapacityError(_("Variable '{}' exceeds nvar={}").format(text, self.nvar))
        return Label(label_id, LabelKind.VARIABLE, text)

    def label(self, label_id: int) -> Label:
        """
        Return the label for an integer id
        """
        if label_id == 0:
            return NULL_LABEL
        if label_id <= self.nvar:
            return Label(label_id, LabelKind.VARIABLE, self.variable_text(label_id))
        m = label_id - self.nvar
        if m > len(self.constants):
            raise ProgramStructureError(_("Label id {} outside the label table").format(label_id))
        return Label(label_id, LabelKind.CONSTANT, self.constants[m - 1])

    def variable(self, label_id: int) -> Label:
        if not 1 <= label_id <= self.nvar:
            raise CapacityError(_("No variable id {} below nvar={}").format(label_id, self.nvar))
        return self.label(label_id)

    def constant(self, name: str) -> Label:
        return Label(self._constant_ids[name], LabelKind.CONSTANT, name)


@dataclass(frozen=True)
class AtomicProgram:
    """
    Statement [pn x y]
    """
    pn: str
    x: Tuple[Label, ...] = ()
    y: Tuple[Label, ...] = ()

    def __str__(self):
        return '{} [{}] [{}]'.format(self.pn, ' '.join(map(str, self.x)), ' '.join(map(str, self.y)))

    @property
    def labels(self) -> Tuple[Label, ...]:
        return self.x + self.y

    def rename(self, mapping: Dict[Label, Label]) -> 'AtomicProgram':
        """
        Rewrite labels through mapping, leaving unmapped labels in place
        """
        return AtomicProgram(
            self.pn,
            tuple(mapping.get(label, label) for label in self.x),
            tuple(mapping.get(label, label) for label in self.y))


@dataclass(frozen=True)
class ProgramList:
    items: Tuple[AtomicProgram, ...] = ()

    def __len__(self):
        return len(self.items)

    def __iter__(self) -> Iterator[AtomicProgram]:
        return iter(self.items)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return ProgramList(self.items[index])
        return self.items[index]

    def __add__(self, other):
        if isinstance(other, AtomicProgram):
            return ProgramList(self.items + (other,))
        return ProgramList(self.items + tuple(other))

    def __str__(self):
        return '\n'.join(str(item) for item in self.items)

    @classmethod
    def of(cls, *items: AtomicProgram) -> 'ProgramList':
        return cls(tuple(items))

    def validate(self, sig: 'AppSignature') -> 'ValidationReport':
        """
        Check the I/O dependency conditions against an application
        """
        from pecr_logic.programs.services import ProgramValidator
        return ProgramValidator(sig).validate_program_list(self)

    def profile(self) -> 'BindingProfile':
        """
        Compute the binding profile (inp, outp, lio, pil, free, pol)
        """
        from pecr_logic.programs.services import binding_profile
        return binding_profile(self)


@dataclass(frozen=True)
class MachineParams:
    msym: int
    mstr: int
    mnat: int
    nprem: int
    npmax: int
    nx: int
    ny: int

    def __post_init__(self):
        values = (self.msym, self.mstr, self.mnat, self.nprem, self.npmax, self.nx, self.ny)
        if any(v < 1 for v in values):
            raise ProgramStructureError(_("Machine parameters must be positive"))
        if self.nprem > self.npmax:
            raise ProgramStructureError(_("nprem must not exceed npmax"))

    @property
    def mlst(self) -> Tuple[int, int, int, int]:
        return self.nprem, self.npmax, self.nx, self.ny

    @classmethod
    def default(cls) -> 'MachineParams':
        msym, mstr, mnat = settings.PECR_MACH
        nprem, npmax, nx, ny = settings.PECR_MLST
        return cls(msym, mstr, mnat, nprem, npmax, nx, ny)

    def replace(self, **kwargs) -> 'MachineParams':
        values = dict(msym=self.msym, mstr=self.mstr, mnat=self.mnat, nprem=self.nprem,
                      npmax=self.npmax, nx=self.nx, ny=self.ny)
        values.update(kwargs)
        return MachineParams(**values)


@dataclass(frozen=True)
class ProgramDescriptor:
    """
    One entry of pname
    """
    name: str
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]
    subtype: str = FATM
    substitutable: bool = False
    # Header statement and operands of application disjunctions/conjunctions
    statement: Optional[AtomicProgram] = None
    operands: Tuple[ProgramList, ...] = ()

    def slot_type(self, slot: int) -> str:
        return (self.inputs + self.outputs)[slot]


@dataclass(frozen=True)
class TypeEntry:
    name: str
    typecheck: Optional[str] = None
    equality: Optional[str] = None
    equality_kind: Optional[str] = None


@dataclass(frozen=True)
class ConstantDescriptor:
    name: str
    value: str
    type_name: str


@dataclass
class AppSignature:
    """
    Application S[pname ax mach]
    """
    name: str
    mach: MachineParams
    tname: Tuple[str, ...] = ()
    constants: Tuple[ConstantDescriptor, ...] = ()
    programs: List[ProgramDescriptor] = field(default_factory=list)
    types: Dict[str, TypeEntry] = field(default_factory=dict)
    axiom_labels: List[str] = field(default_factory=list)
    false_programs: Dict[str, ProgramList] = field(default_factory=dict)
    nvar: Optional[int] = None

    def __post_init__(self):
        self.labels = LabelTable(tuple(c.name for c in self.constants), self.nvar)
        self._index = {}
        for descriptor in self.programs:
            self._index[descriptor.name] = descriptor

    @property
    def pname(self) -> List[str]:
        return [descriptor.name for descriptor in self.programs]

    def has_program(self, name: str) -> bool:
        return name in self._index

    def program(self, name: str) -> ProgramDescriptor:
        try:
            return self._index[name]
        except KeyError:
            raise ProgramStructureError(_("Unknown program name '{}'").format(name))

    def program_id(self, name: str) -> int:
        self.program(name)
        return self.pname.index(name) + 1

    def program_by_id(self, pn_id: int) -> ProgramDescriptor:
        if not 1 <= pn_id <= len(self.programs):
            raise ProgramStructureError(_("Unknown program id {}").format(pn_id))
        return self.programs[pn_id - 1]

    def add_program(self, descriptor: ProgramDescriptor):
        if descriptor.name in self._index:
            raise ProgramStructureError(_("Duplicate program name '{}'").format(descriptor.name))
        if descriptor.name in SUBSTITUTION_INELIGIBLE and descriptor.substitutable:
            descriptor = ProgramDescriptor(
                descriptor.name, descriptor.inputs, descriptor.outputs, descriptor.subtype, False,
                descriptor.statement, descriptor.operands)
        self.programs.append(descriptor)
        self._index[descriptor.name] = descriptor

    def replace_program(self, descriptor: ProgramDescriptor):
        position = self.pname.index(descriptor.name)
        self.programs[position] = descriptor
        self._index[descriptor.name] = descriptor

    def constant_descriptor(self, name: str) -> ConstantDescriptor:
        for constant in self.constants:
            if constant.name == name:
                return constant
        raise ProgramStructureError(_("Unknown constant '{}'").format(name))

    def typecheck_for(self, type_name: str) -> Optional[str]:
        entry = self.types.get(type_name)
        return entry.typecheck if entry else None

    def equality_for(self, type_name: str) -> Optional[TypeEntry]:
        entry = self.types.get(type_name)
        return entry if entry and entry.equality else None

    def check(self):
        """
        Check registry consistency
        """
        for descriptor in self.programs:
            for type_name in descriptor.inputs + descriptor.outputs:
                if type_name not in self.tname:
                    raise ProgramStructureError(
                        _("Program '{}' uses undeclared type '{}'").format(descriptor.name, type_name))
        for entry in self.types.values():
            for name in (entry.typecheck, entry.equality):
                if name and not self.has_program(name):
                    raise ProgramStructureError(
                        _("Type '{}' refers to unknown program '{}'").format(entry.name, name))
        for constant in self.constants:
            if constant.type_name not in self.tname:
                raise ProgramStructureError(
                    _("Constant '{}' has undeclared type '{}'").format(constant.name, constant.type_name))


@dataclass(frozen=True)
class BindingProfile:
    inp: Tuple[Label, ...] = ()
    outp: Tuple[Label, ...] = ()
    lio: Tuple[Label, ...] = ()
    pil: Tuple[Label, ...] = ()
    free: Tuple[Label, ...] = ()
    pol: Tuple[Label, ...] = ()


@dataclass(frozen=True)
class Violation:
    item: int
    condition: str
    message: str

    def __str__(self):
        where = _('item {}').format(self.item) if self.item else _('program')
        return '{}: {} ({})'.format(where, self.message, self.condition)


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, item: int, condition: str, message: str):
        self.violations.append(Violation(item, condition, message))

    def extend(self, other: 'ValidationReport'):
        self.violations.extend(other.violations)

    def conditions(self) -> List[str]:
        return [violation.condition for violation in self.violations]

    def __str__(self):
        return 'ok' if self.ok else '; '.join(str(v) for v in self.violations)
