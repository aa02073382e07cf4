"""
Runtime values, value assignments and execution outcomes of the shipped applications
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from django.utils.translation import gettext as _

from pecr_logic.common.services import ApplicationError
from pecr_logic.programs.models import AppSignature, ProgramList
from pecr_logic.proofs.models import ApplicationPack, ProofDocument, TheoremSpec


class ValueAssignment(dict):
    """
    Map from labels to runtime values
    """

    def __str__(self):
        return '\n'.join('{} = {}'.format(label, render_value(value)) for label, value in self.items())

    @classmethod
    def parse(cls, text: str, sig: AppSignature, program: ProgramList) -> 'ValueAssignment':
        """
        Read `label = value` lines, typing each label by its first slot in program
        """
        from pecr_logic.applications.services import ValueAssignmentParser
        return ValueAssignmentParser(sig).parse(text, program)


def render_value(value) -> str:
    from pecr_logic.dynsys.models import BoxRegion
    if isinstance(value, BoxRegion):
        return '[{} {}]'.format(render_value(value.a), render_value(value.b))
    if isinstance(value, ProgramList):
        return '{' + '; '.join(str(item) for item in value) + '}'
    if hasattr(value, 'tolist'):
        value = value.tolist()
    if isinstance(value, list):
        return '[' + ' '.join(render_value(v) for v in value) + ']'
    return str(value)


class ExecutionStatus(Enum):
    COMPUTABLE = 'computable'
    EXECUTION_ERROR = 'execution-error'
    BUDGET_EXHAUSTED = 'budget-exhausted'


@dataclass
class ExecutionOutcome:
    status: ExecutionStatus
    outputs: ValueAssignment = field(default_factory=ValueAssignment)
    failed_item: int = 0
    cause: str = ''
    steps: int = 0

    @property
    def computable(self) -> bool:
        return self.status is ExecutionStatus.COMPUTABLE

    def __str__(self):
        if self.computable:
            return 'computable ({} steps)'.format(self.steps)
        return '{} at item {}: {}'.format(self.status.value, self.failed_item, self.cause)


@dataclass
class ProbeStatistics:
    label: str
    trials: int = 0
    premise_ok: int = 0
    both_ok: int = 0
    violations: int = 0
    # First value assignments breaking the conclusion
    counterexamples: List[ValueAssignment] = field(default_factory=list)

    def __str__(self):
        return 'trials={} premise_ok={} both_ok={} violations={}'.format(
            self.trials, self.premise_ok, self.both_ok, self.violations)


class Application:
    """
    Facade over the shipped application packs and their corpora
    """

    @classmethod
    def builtin(cls, name: str) -> ApplicationPack:
        from pecr_logic.applications.services import ApplicationLoader
        return ApplicationLoader().pack(name)

    @classmethod
    def register_builtin_apps(cls) -> Dict[str, ApplicationPack]:
        from pecr_logic.applications.services import register_builtin_apps
        return register_builtin_apps()

    @classmethod
    def corpus(cls, name: str) -> Tuple[ApplicationPack, List[TheoremSpec], List[ProofDocument]]:
        """
        Shipped application with its theorem statements and proofs
        """
        from pecr_logic.applications.services import ApplicationLoader
        return ApplicationLoader().corpus(name)

    @classmethod
    def execute(cls, pack: ApplicationPack, program: ProgramList, va: ValueAssignment,
                budget: Optional[int] = None) -> ExecutionOutcome:
        from pecr_logic.applications.services import execute_program
        return execute_program(program, va, pack.sig, budget)

    @classmethod
    def probe(cls, pack: ApplicationPack, label: str, trials: int = 100, seed: int = 0) -> ProbeStatistics:
        """
        Soundness probe of an axiom or a checked corpus theorem of pack
        """
        from pecr_logic.applications.services import ApplicationLoader, soundness_probe
        iep = pack.store.get(label)
        if iep is None:
            iep = ApplicationLoader().checked_store(pack.name, pack).get(label)
        if iep is None:
            raise ApplicationError(_("Unknown rule {}").format(label))
        return soundness_probe(iep, pack.sig, trials, seed)
