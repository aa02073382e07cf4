"""
Proof documents, theorem statements, verdicts and reduction traces
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from pecr_logic.common.services import ProofRejected
from pecr_logic.kernel.models import Iep, IepStore
from pecr_logic.programs.models import AppSignature, AtomicProgram, ProgramList


@dataclass
class ApplicationPack:
    """
    A parsed application: signature and axiom store
    """
    sig: AppSignature
    store: IepStore
    text: str = ''

    @property
    def name(self) -> str:
        return self.sig.name

    def fresh_store(self) -> IepStore:
        return self.store.copy()


@dataclass(frozen=True)
class TheoremSpec:
    label: str
    premise: ProgramList
    conclusion: AtomicProgram


@dataclass(frozen=True)
class Justification:
    rule: str
    clist: Tuple[int, ...] = ()

    def __str__(self):
        return '{} [{}]'.format(self.rule, ' '.join(map(str, self.clist)))


@dataclass(frozen=True)
class ProofLine:
    index: int
    statement: AtomicProgram
    justification: Optional[Justification] = None

    @property
    def is_premise(self) -> bool:
        return self.justification is None


@dataclass
class ProofDocument:
    """
    Vertical proof listing: premise lines first, then justified lines
    """
    label: str
    lines: List[ProofLine] = field(default_factory=list)

    def __len__(self):
        return len(self.lines)

    @property
    def premise_count(self) -> int:
        count = 0
        for line in self.lines:
            if not line.is_premise:
                break
            count += 1
        return count

    @property
    def program(self) -> ProgramList:
        return ProgramList(tuple(line.statement for line in self.lines))

    @property
    def premise(self) -> ProgramList:
        return self.program[:self.premise_count]

    @property
    def conclusion(self) -> Optional[AtomicProgram]:
        return self.lines[-1].statement if self.lines else None

    def line(self, index: int) -> ProofLine:
        return self.lines[index - 1]

    def clist(self, index: int) -> Tuple[int, ...]:
        justification = self.line(index).justification
        return justification.clist if justification else ()

    def check(self, pack: ApplicationPack, theorem: Optional[TheoremSpec] = None,
              store: Optional[IepStore] = None, commit: bool = False) -> 'CheckVerdict':
        """
        Check the proof against an application
        :param pack: application holding the signature and axioms
        :param theorem: theorem statement the proof must establish
        :param store: rule store to use, defaults to the pack store
        :param commit: add the theorem to the store when accepted
        """
        from pecr_logic.proofs.services import ProofChecker
        checker = ProofChecker(pack.sig, store if store is not None else pack.store)
        return checker.check_proof(self, theorem, commit=commit)

    def reduce(self) -> 'ReductionTrace':
        from pecr_logic.proofs.services import reduce_connection_lists
        return reduce_connection_lists(self)


@dataclass(frozen=True)
class LineReport:
    index: int
    rule: str
    ok: bool
    message: str = ''


@dataclass
class CheckVerdict:
    label: str
    accepted: bool = True
    lines: List[LineReport] = field(default_factory=list)
    failed_line: int = 0
    reason: str = ''
    iep: Optional[Iep] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def status(self) -> int:
        return 0 if self.accepted else ProofRejected.status

    def reject(self, line: int, reason: str):
        self.accepted = False
        self.failed_line = line
        self.reason = reason

    def __str__(self):
        if self.accepted:
            return '{}: accepted'.format(self.label)
        return '{}: rejected at line {}: {}'.format(self.label, self.failed_line, self.reason)


@dataclass
class ReductionTrace:
    """
    Successive connection lists produced while tracing the conclusion back to the premise
    """
    steps: List[List[int]] = field(default_factory=list)
    premise_count: int = 0
    line_count: int = 0
    absorbed: List[int] = field(default_factory=list)

    @property
    def final(self) -> List[int]:
        return self.steps[-1] if self.steps else []

    @property
    def redundant_lines(self) -> List[int]:
        """
        Derived lines, other than the conclusion, never absorbed into the trace
        """
        return [i for i in range(self.premise_count + 1, self.line_count) if i not in self.absorbed]

    @property
    def unused_premises(self) -> List[int]:
        return [i for i in range(1, self.premise_count + 1) if i not in self.final]

    @property
    def has_redundancy(self) -> bool:
        return bool(self.redundant_lines or self.unused_premises)

    def as_dict(self) -> Dict[str, object]:
        return {
            'steps': self.steps,
            'final': self.final,
            'redundant_lines': self.redundant_lines,
            'unused_premises': self.unused_premises,
        }
