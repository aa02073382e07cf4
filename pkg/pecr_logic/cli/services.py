"""
Bounded forward chaining prover and helpers shared by the management commands
"""
import random
import time
from pathlib import Path
from typing import Dict, List, Optional, Set, Tuple

from django.utils.translation import gettext as _

from pecr_logic.applications.services import BUILTIN_APPS, ApplicationLoader
from pecr_logic.cli.models import ProverConfig
from pecr_logic.common.services import (
    ApplicationError, BudgetExhausted, CapacityError, PecrParseError, PecrService, PecrServiceError, ProofRejected,
)
from pecr_logic.kernel.models import FreshLabelAllocator, IepStore
from pecr_logic.kernel.services import Kernel
from pecr_logic.matrices.services import MatrixCodec
from pecr_logic.programs.models import AtomicProgram, ProgramList
from pecr_logic.programs.serializers import MachineParamsSerializer
from pecr_logic.proofs.models import ApplicationPack, Justification, ProofDocument, ProofLine, TheoremSpec
from pecr_logic.proofs.services import ProofChecker, check_proofs


def load_pack(application: str, mach: str = '', mlst: str = '') -> ApplicationPack:
    """
    Shipped application by name, or an application file path
    :param mach: --mach flag value overriding msym,mstr,mnat
    :param mlst: --mlst flag value overriding nprem,npmax,nx,ny
    """
    loader = ApplicationLoader()
    if application in BUILTIN_APPS:
        pack = loader.pack(application)
    else:
        try:
            pack = loader.load(Path(application).read_text())
        except OSError:
            raise ApplicationError(_("Unable to read {}").format(application))
    if mach or mlst:
        serializer = MachineParamsSerializer.from_flags(mach, mlst, pack.sig.mach)
        if not serializer.is_valid():
            raise PecrParseError(_("Invalid machine parameters: {}").format(serializer.errors))
        pack.sig.mach = serializer.save()
    return pack


def map_params(options: dict) -> dict:
    """
    Map factory keyword arguments given on the command line
    """
    return {name: options[name] for name in ('N', 'c') if options.get(name) is not None}


def read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError:
        raise ApplicationError(_("Unable to read {}").format(path))


def preload_store(pack: ApplicationPack, theorems: List[TheoremSpec], documents: List[ProofDocument],
                  before: Optional[str] = None) -> IepStore:
    """
    Axioms plus the checked theorems preceding `before` in file order
    """
    if before is not None:
        labels = [document.label for document in documents]
        if before in labels:
            documents = documents[:labels.index(before)]
    store = pack.fresh_store()
    for verdict in check_proofs(pack, theorems, documents, store):
        if not verdict.accepted:
            raise ProofRejected(str(verdict), line=verdict.failed_line)
    return store


class Prover(PecrService):
    """
    Semi-naive forward chaining over stored rules and the iot/sr1/sr2 schemas.
    Statements are deduplicated on program name and inputs; fresh outputs take the smallest unused id.
    """
    logger_name = 'prover'

    def __init__(self, pack: ApplicationPack, store: IepStore, config: Optional[ProverConfig] = None):
        self.pack = pack
        self.sig = pack.sig
        self.store = store
        self.config = config or ProverConfig.default()
        self.kernel = Kernel(self.sig, store)

    def _refuse_false_goal(self, goal: AtomicProgram):
        codec = MatrixCodec(self.sig)
        for label, program in self.sig.false_programs.items():
            if len(program) == 1 and codec.ioeq_check(ProgramList.of(goal), program):
                raise ProofRejected(_("{} is an instance of the false program {}").format(goal, label))

    def prove(self, theorem: TheoremSpec) -> ProofDocument:
        """
        Search a proof of theorem, prune it to the lines the conclusion depends on and check it
        """
        self._refuse_false_goal(theorem.conclusion)
        rules = [iep for iep in self.store if iep.label != theorem.label]
        if self.config.seed:
            random.Random(self.config.seed).shuffle(rules)
        search = _Search(self, theorem)
        deadline = time.monotonic() + self.config.time
        frontier = 0
        for depth in range(1, self.config.depth + 1):
            start = len(search.facts)
            for iep in rules:
                for match in self.kernel.match_premise(search.program, iep, frontier=frontier,
                                                      limit=self.config.facts):
                    statement = self.kernel.instantiate(iep, match.subst, ())
                    search.add(statement.pn, statement.x, len(iep.conclusion.y), iep.label, match.clist)
                    if search.goal_index:
                        return self._finish(search)
                if time.monotonic() > deadline:
                    raise BudgetExhausted(_("Time budget of {}s exhausted").format(self.config.time))
            search.schemas(frontier)
            if search.goal_index:
                return self._finish(search)
            self.logger.info('%s: round %d, %d statements', theorem.label, depth, len(search.facts))
            if len(search.facts) == start:
                break
            frontier = start
        raise BudgetExhausted(_("No proof of {} within {} rounds and {} statements").format(
            theorem.label, self.config.depth, self.config.facts))

    def _finish(self, search: '_Search') -> ProofDocument:
        document = search.pruned()
        verdict = ProofChecker(self.sig, self.store.copy()).check_proof(document, search.theorem)
        if not verdict.accepted:
            raise ProofRejected(_("Emitted proof does not check: {}").format(verdict), line=verdict.failed_line)
        self.logger.info('%s: proof of %d lines', search.theorem.label, len(document))
        return document


class _Search:
    """
    Growing proof program of one prover run
    """

    def __init__(self, prover: Prover, theorem: TheoremSpec):
        self.prover = prover
        self.kernel = prover.kernel
        self.theorem = theorem
        self.facts: List[AtomicProgram] = list(theorem.premise)
        self.justifications: List[Optional[Justification]] = [None] * len(theorem.premise)
        self.index: Dict[Tuple[str, tuple], int] = {}
        for i, fact in enumerate(self.facts, start=1):
            self.index.setdefault((fact.pn, fact.x), i)
        self.allocator = FreshLabelAllocator(prover.sig.labels)
        self.allocator.reserve_program(self.facts)
        self.allocator.reserve(theorem.conclusion.labels)
        self.goal = (theorem.conclusion.pn, theorem.conclusion.x)
        self.goal_index = 0
        self._candidates: Dict[Tuple[int, int], list] = {}
        equalities = {entry.equality for entry in prover.sig.types.values() if entry.equality}
        self.equalities: Set[str] = equalities

    @property
    def program(self) -> ProgramList:
        return ProgramList(tuple(self.facts))

    def add(self, pn: str, x: tuple, arity: int, rule: str, clist: tuple) -> bool:
        if (pn, x) in self.index:
            return False
        if len(self.facts) >= self.prover.config.facts:
            raise BudgetExhausted(_("Fact limit of {} reached").format(self.prover.config.facts))
        try:
            outputs = tuple(self.allocator.allocate() for _slot in range(arity))
        except CapacityError as e:
            raise BudgetExhausted(e.message)
        statement = AtomicProgram(pn, x, outputs)
        self.facts.append(statement)
        self.justifications.append(Justification(rule, tuple(clist)))
        self.index[(pn, x)] = len(self.facts)
        if (pn, x) == self.goal and arity == len(self.theorem.conclusion.y):
            self.goal_index = len(self.facts)
        return True

    def schemas(self, frontier: int):
        """
        iot for new statements, sr1 and sr2 for pairs involving one
        """
        count = len(self.facts)
        for i in range(frontier + 1, count + 1):
            for instance in self.kernel.iot_instances(self.facts[i - 1]):
                self.add(instance.pn, instance.x, 0, 'iot', (i,))
                if self.goal_index:
                    return
        equality_lines = [e for e in range(1, count + 1) if self.facts[e - 1].pn in self.equalities]
        for o in range(1, count + 1):
            original = self.facts[o - 1]
            if not self.kernel.sig.program(original.pn).substitutable:
                continue
            for e in equality_lines:
                for x, _kind in self._substitutions(o, e):
                    if max(o, e) > frontier:
                        self.add(original.pn, x, len(original.y), 'sr1', (o, e))
                    s = self.index.get((original.pn, x))
                    if s and s != o and s <= count and max(o, e, s) > frontier:
                        self._sr2(o, e, s)
                    if self.goal_index:
                        return

    def _substitutions(self, o: int, e: int) -> list:
        if (o, e) not in self._candidates:
            try:
                candidates = self.kernel.substitution_candidates(self.facts[o - 1], self.facts[e - 1])
            except PecrServiceError:
                candidates = []
            self._candidates[(o, e)] = candidates
        return self._candidates[(o, e)]

    def _sr2(self, o: int, e: int, s: int):
        try:
            instances = self.kernel.sr2_instances(self.facts[o - 1], self.facts[e - 1], self.facts[s - 1])
        except PecrServiceError:
            return
        for instance in instances:
            self.add(instance.pn, instance.x, 0, 'sr2', (o, e, s))

    def pruned(self) -> ProofDocument:
        """
        Premise plus the lines the goal depends on, renumbered
        """
        m = len(self.theorem.premise)
        needed = {self.goal_index}
        for i in range(self.goal_index, m, -1):
            if i in needed:
                needed.update(self.justifications[i - 1].clist)
        kept = list(range(1, m + 1)) + sorted(i for i in needed if i > m)
        renumber = {old: new for new, old in enumerate(kept, start=1)}
        document = ProofDocument(self.theorem.label)
        for old in kept:
            justification = self.justifications[old - 1]
            if justification:
                justification = Justification(justification.rule, tuple(renumber[c] for c in justification.clist))
            document.lines.append(ProofLine(renumber[old], self.facts[old - 1], justification))
        return document
