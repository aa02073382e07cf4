"""
Shipped application packs, the zero-order program evaluator and soundness probes
"""
import itertools
import json
import re
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from django.conf import settings
from django.utils.translation import gettext as _

from pecr_logic.applications.models import (
    ExecutionOutcome, ExecutionStatus, ProbeStatistics, ValueAssignment,
)
from pecr_logic.common.services import (
    ApplicationError, BudgetExhausted, DynamicsError, ExecutionError, PecrParseError, PecrService,
    PecrServiceError, ProofRejected,
)
from pecr_logic.dynsys.models import BoxRegion, MapSpec, as_state
from pecr_logic.dynsys.services import DiscreteDynamics, identity_map
from pecr_logic.kernel.models import Iep, IepStore
from pecr_logic.kernel.services import Kernel
from pecr_logic.matrices.services import MatrixCodec
from pecr_logic.programs.models import CNJ, DSJ, AppSignature, AtomicProgram, Label, ProgramDescriptor, ProgramList
from pecr_logic.programs.services import ProgramValidator, binding_profile, sublist_check
from pecr_logic.proofs.models import ApplicationPack, ProofDocument, TheoremSpec
from pecr_logic.proofs.services import StatementParser, check_proofs, parse_application, parse_proofs, parse_theorems

BUILTIN_APPS = ('pecr', 'nat')

# Judgement programs without a decision procedure
NON_EXECUTABLE = ('ext', 'aext', 'flse', 'aflse')


class ApplicationLoader(PecrService):
    """
    Reads application packs and their corpora from the data directory
    """

    def __init__(self, data_dir: Optional[Path] = None):
        self.data_dir = Path(data_dir or settings.PECR_DATA_DIR)

    def read(self, name: str, filename: str) -> str:
        path = self.data_dir / name / filename
        try:
            return path.read_text()
        except OSError:
            raise ApplicationError(_("Unable to read {}").format(path))

    def load(self, text: str) -> ApplicationPack:
        """
        Parse application text, memoized on the text
        """
        return self.cached(lambda: parse_application(text), text)

    def pack(self, name: str) -> ApplicationPack:
        if name not in BUILTIN_APPS:
            raise ApplicationError(_("Unknown application '{}'").format(name))
        return self.load(self.read(name, '{}.app'.format(name)))

    def corpus(self, name: str, pack: Optional[ApplicationPack] = None
               ) -> Tuple[ApplicationPack, List[TheoremSpec], List[ProofDocument]]:
        pack = pack or self.pack(name)
        theorems = parse_theorems(self.read(name, 'theorems.thm'), pack.sig)
        documents = parse_proofs(self.read(name, 'proofs.proof'), pack.sig)
        return pack, theorems, documents

    def checked_store(self, name: str, pack: Optional[ApplicationPack] = None) -> IepStore:
        """
        Axioms of an application extended by every corpus theorem, each checked before storing
        :param pack: already loaded pack whose signature the corpus is parsed against
        """
        pack, theorems, documents = self.corpus(name, pack)
        store = pack.fresh_store()
        for verdict in check_proofs(pack, theorems, documents, store):
            if not verdict.accepted:
                raise ProofRejected(str(verdict), line=verdict.failed_line)
        return store


def register_builtin_apps() -> Dict[str, ApplicationPack]:
    loader = ApplicationLoader()
    return {name: loader.pack(name) for name in BUILTIN_APPS}


def label_types(sig: AppSignature, program: ProgramList) -> Dict[Label, str]:
    """
    Type of each label from the first slot it fills
    """
    types = {}
    for item in program:
        descriptor = sig.program(item.pn)
        for slot, label in enumerate(item.labels):
            if slot < len(descriptor.inputs + descriptor.outputs):
                types.setdefault(label, descriptor.slot_type(slot))
    return types


class ValueAssignmentParser(PecrService):
    """
    Reads `label = value` lines; arrays as bracket lists, boxes as [a b], programs as {stmt; stmt}
    """
    line_pattern = re.compile(r'^(?P<label>\S+)\s*=\s*(?P<value>.+)$')

    def __init__(self, sig: AppSignature, object_sig: Optional[AppSignature] = None):
        self.sig = sig
        self.object_sig = object_sig

    def parse(self, text: str, program: ProgramList) -> ValueAssignment:
        types = label_types(self.sig, program)
        va = ValueAssignment()
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split('#', 1)[0].strip()
            if not line:
                continue
            match = self.line_pattern.match(line)
            if not match:
                raise PecrParseError(_("line {}: expected 'label = value'").format(number))
            label = self.sig.labels.intern(match.group('label'))
            if label not in types:
                raise PecrParseError(_("line {}: {} does not occur in the program").format(number, label))
            va[label] = self.value(types[label], match.group('value').strip())
        return va

    def _nested(self, raw: str):
        raw = raw.replace('mnat', str(self.sig.mach.mnat))
        try:
            return json.loads(re.sub(r'(?<=[0-9\]])\s+(?=[0-9\[])', ',', raw))
        except ValueError:
            raise PecrParseError(_("Malformed value '{}'").format(raw))

    def value(self, type_name: str, raw: str):
        if type_name == 'nat':
            value = self._nested(raw)
            if not isinstance(value, int):
                raise PecrParseError(_("'{}' is not a natural number").format(raw))
            return value
        if type_name == 'arr':
            return as_state(self._nested(raw))
        if type_name == 'box':
            value = self._nested(raw)
            if not isinstance(value, list) or len(value) != 2:
                raise PecrParseError(_("A box is written [a b], got '{}'").format(raw))
            return BoxRegion(value[0], value[1])
        if type_name in ('prgm', 'atm'):
            if not (raw.startswith('{') and raw.endswith('}')):
                raise PecrParseError(_("A program is written {{stmt; stmt}}, got '{}'").format(raw))
            statements = StatementParser((self.object_sig or ApplicationLoader().pack('nat').sig).labels)
            body = raw[1:-1].strip()
            return ProgramList(tuple(statements.parse(s) for s in body.split(';') if s.strip()))
        raise PecrParseError(_("No value syntax for type '{}'").format(type_name))


class Evaluator(PecrService):
    """
    Runs zero-order program lists on value assignments of their free inputs
    """

    def __init__(self, sig: AppSignature, budget: Optional[int] = None, f: Optional[MapSpec] = None,
                 object_sig: Optional[AppSignature] = None):
        """
        :param sig: application of the programs
        :param budget: deadline in atomic program executions
        :param f: map run by f, itf and bndf; identity by default
        :param object_sig: application of program values handled by pecr statements; nat by default
        """
        self.sig = sig
        self.budget = budget or settings.PECR_EXECUTION_BUDGET
        self.dynamics = DiscreteDynamics(f or identity_map(), sig.mach.mnat)
        self._object_sig = object_sig
        self._constructed: Dict[str, ProgramDescriptor] = {}
        self._steps = 0
        self.handlers = {
            # nat
            'typen': self._holds, 'typea': self._holds, 'typebx': self._holds,
            'eqn': lambda a, b: self._require(a == b, 'eqn', a, b),
            'lt': lambda a, b: self._require(a < b, 'lt', a, b),
            'eqa': lambda a, b: self._require(a.shape == b.shape and np.array_equal(a, b), 'eqa', a, b),
            'lta': lambda a, b: self._require(a.shape == b.shape and bool((a < b).all()), 'lta', a, b),
            'lea': lambda a, b: self._require(a.shape == b.shape and bool((a <= b).all()), 'lea', a, b),
            'eqbx': lambda p, q: self._require(p == q, 'eqbx', p, q),
            'eltbx': lambda u, p: self._require(p.contains(u), 'eltbx', u, p),
            'subbx': lambda q, p: self._require(q.inside(p), 'subbx', q, p),
            'lbx': lambda p: (p.a,),
            'ubx': lambda p: (p.b,),
            'box': self._box,
            'f': lambda u: (self.dynamics.step(u),),
            'itf': self._itf,
            'bndf': lambda p: (self.dynamics.bound_range(p),),
            # pecr
            'typep': self._holds, 'typeap': self._holds,
            'sub': lambda p, q: self._require(sublist_check(p.items, q.items).sublst, 'sub', p, q),
            'equiv': lambda p, q: self._require(sublist_check(p.items, q.items).equivlst, 'equiv', p, q),
            'ioeq': self._ioeq,
            'conc': lambda p, q: (p + q,),
            'disj': self._disj,
            'conj': self._conj,
        }

    @property
    def object_sig(self) -> AppSignature:
        if self._object_sig is None:
            self._object_sig = ApplicationLoader().pack('nat').sig
        return self._object_sig

    def constant_value(self, label: Label):
        descriptor = self.sig.constant_descriptor(label.text)
        if descriptor.value == 'mnat':
            return self.sig.mach.mnat
        if descriptor.value == '[]':
            return ProgramList()
        try:
            return int(descriptor.value)
        except ValueError:
            raise ExecutionError(_("Constant {} has no runtime value").format(label))

    def require_executable(self, program: ProgramList):
        for item in program:
            self.sig.program(item.pn)
            if item.pn in NON_EXECUTABLE:
                raise ExecutionError(_("{} has no decision procedure").format(item.pn))

    def execute(self, program: ProgramList, va: ValueAssignment) -> ExecutionOutcome:
        """
        Run every item in order; the first violation stops the run
        """
        self.require_executable(program)
        profile = binding_profile(program)
        missing = [label for label in profile.free if label not in va]
        extra = [label for label in va if label not in profile.free]
        if missing or extra:
            raise ExecutionError(_("Value assignment misses [{}] and has extra [{}]").format(
                ' '.join(map(str, missing)), ' '.join(map(str, extra))))
        env = dict(va)
        self._steps = 0
        for m, item in enumerate(program, start=1):
            try:
                self._charge(1)
                self._execute_item(item, env)
            except BudgetExhausted as e:
                return ExecutionOutcome(ExecutionStatus.BUDGET_EXHAUSTED, failed_item=m, cause=e.message,
                                        steps=self._steps)
            except ExecutionError as e:
                self.logger.debug('item %d %s: %s', m, item, e.message)
                return ExecutionOutcome(ExecutionStatus.EXECUTION_ERROR, failed_item=m, cause=e.message,
                                        steps=self._steps)
        outputs = ValueAssignment((label, env[label]) for label in profile.pol)
        return ExecutionOutcome(ExecutionStatus.COMPUTABLE, outputs, steps=self._steps)

    def _charge(self, steps: int):
        self._steps += steps
        if self._steps > self.budget:
            raise BudgetExhausted(_("Execution budget of {} exhausted").format(self.budget))

    def _value(self, label: Label, env: dict):
        if label.is_constant:
            return self.constant_value(label)
        try:
            return env[label]
        except KeyError:
            raise ExecutionError(_("Input {} has no value").format(label))

    def _execute_item(self, item: AtomicProgram, env: dict):
        descriptor = self.sig.program(item.pn)
        inputs = [self._value(label, env) for label in item.x]
        for type_name, value in zip(descriptor.inputs, inputs):
            self.check_type(type_name, value)
        try:
            if descriptor.subtype == DSJ and descriptor.operands:
                outputs = self._disjunction(descriptor, inputs)
            elif descriptor.subtype == CNJ and descriptor.operands:
                outputs = self._run_operand(descriptor, descriptor.operands[0], inputs)
            else:
                handler = self.handlers.get(item.pn)
                if handler is None:
                    raise ExecutionError(_("No runtime semantics for {}").format(item.pn))
                outputs = handler(*inputs)
        except DynamicsError as e:
            raise ExecutionError(e.message)
        if len(outputs) != len(item.y):
            raise ExecutionError(_("{} produced {} outputs").format(item.pn, len(outputs)))
        for label, type_name, value in zip(item.y, descriptor.outputs, outputs):
            self.check_type(type_name, value)
            env[label] = value

    def _run_operand(self, descriptor: ProgramDescriptor, operand: ProgramList, inputs: Sequence) -> tuple:
        header = descriptor.statement
        env = dict(zip(header.x, inputs))
        for item in operand:
            self._charge(1)
            self._execute_item(item, env)
        return tuple(env[label] for label in header.y)

    def _disjunction(self, descriptor: ProgramDescriptor, inputs: Sequence) -> tuple:
        causes = []
        for operand in descriptor.operands:
            try:
                return self._run_operand(descriptor, operand, inputs)
            except ExecutionError as e:
                causes.append(e.message)
        raise ExecutionError(_("no operand of {} is computable: {}").format(descriptor.name, '; '.join(causes)))

    # Types

    def check_type(self, type_name: str, value):
        mnat = self.sig.mach.mnat
        if type_name == 'nat':
            ok = isinstance(value, (int, np.integer)) and not isinstance(value, bool) and 0 <= value <= mnat
        elif type_name == 'arr':
            ok = isinstance(value, np.ndarray) and np.issubdtype(value.dtype, np.integer) \
                and bool((value >= 0).all() and (value <= mnat).all())
        elif type_name == 'box':
            ok = isinstance(value, BoxRegion) and value.is_valid and value.within_machine(mnat)
        elif type_name == 'prgm':
            ok = isinstance(value, ProgramList) and self._program_ok(value)
        elif type_name == 'atm':
            ok = isinstance(value, ProgramList) and len(value) == 1 and self._program_ok(value)
        else:
            raise ExecutionError(_("No runtime type '{}'").format(type_name))
        if not ok:
            raise ExecutionError(_("value {} is not of type {}").format(value, type_name))

    def _program_ok(self, program: ProgramList) -> bool:
        try:
            report = ProgramValidator(self.object_sig).validate_program_list(program)
        except PecrServiceError:
            return False
        return all(violation.condition == 'known-program' and program[violation.item - 1].pn in self._constructed
                   for violation in report.violations)

    # Semantics

    @staticmethod
    def _holds(*_values) -> tuple:
        return ()

    @staticmethod
    def _require(condition: bool, name: str, *values) -> tuple:
        if not condition:
            raise ExecutionError(_("{} fails on {}").format(name, ' '.join(str(v) for v in values)))
        return ()

    def _box(self, a: np.ndarray, b: np.ndarray) -> tuple:
        self._require(a.shape == b.shape and bool((a <= b).all()), 'box', a, b)
        return (BoxRegion(a, b),)

    def _itf(self, u: np.ndarray, n: int) -> tuple:
        self._charge(int(n))
        return (self.dynamics.iterate(u, int(n)).final,)

    def _ioeq(self, p: ProgramList, q: ProgramList) -> tuple:
        try:
            result = MatrixCodec(self.object_sig).ioeq_check(p, q)
        except PecrServiceError as e:
            raise ExecutionError(e.message)
        return self._require(bool(result), 'ioeq', p, q)

    def _constructed_name(self, prefix: str) -> str:
        name = '{}{}'.format(prefix, len(self._constructed) + 1)
        while self.object_sig.has_program(name) or name in self._constructed:
            name += "'"
        return name

    def _disj(self, a: ProgramList, b: ProgramList) -> tuple:
        name = self._constructed_name('dsj')
        try:
            descriptor = Kernel(self.object_sig).build_disjunction(a, b, name)
        except PecrServiceError as e:
            raise ExecutionError(e.message)
        self._constructed[name] = descriptor
        return (ProgramList.of(descriptor.statement),)

    def _conj(self, a: ProgramList, b: ProgramList) -> tuple:
        name = self._constructed_name('cnj')
        try:
            descriptor = Kernel(self.object_sig).build_conjunction(a[0], b[0], name)
        except PecrServiceError as e:
            raise ExecutionError(e.message)
        self._constructed[name] = descriptor
        return (ProgramList.of(descriptor.statement),)


def execute_program(program: ProgramList, va: ValueAssignment, sig: AppSignature,
                    budget: Optional[int] = None) -> ExecutionOutcome:
    return Evaluator(sig, budget=budget).execute(program, va)


class SoundnessProbe(PecrService):
    """
    Empirical check that a stored rule never turns a computable premise into a failing extension
    """

    def __init__(self, sig: AppSignature, evaluator: Optional[Evaluator] = None, scalar_bound: int = 10,
                 reuse: float = 0.5):
        """
        :param scalar_bound: largest random array element or natural number
        :param reuse: probability of reusing an earlier value of the same type, so that
            equalities and containments in premises hold often enough
        """
        self.sig = sig
        self.evaluator = evaluator or Evaluator(sig)
        self.scalar_bound = scalar_bound
        self.reuse = reuse

    def random_assignments(self, labels: Sequence[Label], types: Dict[Label, str], trials: int,
                           seed: int) -> Iterator[ValueAssignment]:
        rng = np.random.default_rng(seed)
        bound = self.scalar_bound
        for _trial in range(trials):
            shape = (int(rng.integers(1, 4)),)
            pool: Dict[str, list] = {}
            va = ValueAssignment()
            for label in labels:
                type_name = types[label]
                earlier = pool.setdefault(type_name, [])
                if earlier and rng.random() < self.reuse:
                    va[label] = earlier[int(rng.integers(len(earlier)))]
                    continue
                if type_name == 'nat':
                    value = int(rng.integers(0, bound + 1))
                elif type_name == 'arr':
                    value = rng.integers(0, bound + 1, size=shape)
                elif type_name == 'box':
                    a = rng.integers(0, bound + 1, size=shape)
                    value = BoxRegion(a, a + rng.integers(0, bound // 2 + 1, size=shape))
                else:
                    raise ExecutionError(_("No random values of type '{}'").format(type_name))
                earlier.append(value)
                va[label] = value
            yield va

    def exhaustive_assignments(self, labels: Sequence[Label], bound: int) -> Iterator[ValueAssignment]:
        for values in itertools.product(range(bound + 1), repeat=len(labels)):
            yield ValueAssignment(zip(labels, values))

    def probe(self, iep: Iep, trials: int = 100, seed: int = 0,
              exhaustive_bound: Optional[int] = None) -> ProbeStatistics:
        """
        :param exhaustive_bound: also enumerate every natural number assignment up to this bound
        """
        self.evaluator.require_executable(iep.program)
        labels = binding_profile(iep.premise).free
        types = label_types(self.sig, iep.premise)
        statistics = ProbeStatistics(iep.label)
        assignments = self.random_assignments(labels, types, trials, seed)
        if exhaustive_bound is not None and all(types[label] == 'nat' for label in labels):
            assignments = itertools.chain(assignments, self.exhaustive_assignments(labels, exhaustive_bound))
        for va in assignments:
            statistics.trials += 1
            if not self.evaluator.execute(iep.premise, va).computable:
                continue
            statistics.premise_ok += 1
            if self.evaluator.execute(iep.program, va).computable:
                statistics.both_ok += 1
            else:
                statistics.violations += 1
                if len(statistics.counterexamples) < 5:
                    statistics.counterexamples.append(va)
        self.logger.info('%s: %s', iep.label, statistics)
        return statistics


def soundness_probe(iep: Iep, sig: AppSignature, trials: int = 100, seed: int = 0,
                    exhaustive_bound: Optional[int] = None) -> ProbeStatistics:
    return SoundnessProbe(sig).probe(iep, trials, seed, exhaustive_bound)
