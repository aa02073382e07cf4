"""
Application, theorem and proof files: parsing, printing, checking, reduction and export
"""
import dataclasses
import re
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from django.utils.translation import gettext as _

from pecr_logic.common.services import (
    ApplicationError, PecrParseError, PecrService, PecrServiceError, ProgramStructureError,
)
from pecr_logic.kernel.models import IepStore, Provenance
from pecr_logic.kernel.services import Kernel
from pecr_logic.matrices.services import MatrixCodec
from pecr_logic.programs.models import (
    CNJ, DSJ, EQUALITY, EQUIVALENCE, SUBTYPES, AppSignature, AtomicProgram, ConstantDescriptor, LabelTable,
    MachineParams, ProgramDescriptor, ProgramList, TypeEntry,
)
from pecr_logic.programs.services import ProgramValidator, minus_lists, unique_list
from pecr_logic.proofs.models import (
    ApplicationPack, CheckVerdict, Justification, LineReport, ProofDocument, ProofLine, ReductionTrace,
    TheoremSpec,
)

SEPARATOR = '-----'
FALSE_CONCLUSION = 'false'
OPERAND_SEPARATOR = '|'
END = 'END'

STATEMENT_PATTERN = re.compile(r'^(?P<pn>[^\s\[\]]+)\s*\[(?P<x>[^\]]*)\]\s*\[(?P<y>[^\]]*)\]$')
PROOF_LINE_PATTERN = re.compile(
    r'^(?P<index>\d+)\s+(?P<pn>[^\s\[\]]+)\s*\[(?P<x>[^\]]*)\]\s*\[(?P<y>[^\]]*)\]'
    r'(?:\s+(?P<rule>[^\s\[\]]+)\s*\[(?P<clist>[^\]]*)\])?$')
PROGRAM_PATTERN = re.compile(
    r'^PROGRAM\s+(?P<name>\S+)\s*\((?P<inputs>[^;)]*);(?P<outputs>[^)]*)\)\s+'
    r'(?P<subtype>\w+)\s+(?P<subst>subst|nosubst)$')
CONSTANT_PATTERN = re.compile(r'^CONSTANT\s+(?P<name>\S+)\s*=\s*(?P<value>.+?)\s*:\s*(?P<type>\S+)$')
THEOREM_HEADER = re.compile(r'^theorem\s+(?P<label>\S+)$')


def _clean_lines(text: str) -> List[Tuple[int, str]]:
    """
    Non blank lines without comments, with their 1-based line number
    """
    output = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if line:
            output.append((number, line))
    return output


class StatementParser:
    """
    Reads `pn [x ...] [y ...]` statements against a label table
    """

    def __init__(self, labels: LabelTable):
        self.labels = labels

    def labels_of(self, text: str) -> tuple:
        return tuple(self.labels.intern(token) for token in text.split())

    def parse(self, text: str) -> AtomicProgram:
        match = STATEMENT_PATTERN.match(text.strip())
        if not match:
            raise PecrParseError(_("Malformed statement '{}'").format(text.strip()))
        return AtomicProgram(match.group('pn'), self.labels_of(match.group('x')), self.labels_of(match.group('y')))


class ApplicationParser(PecrService):
    """
    Reads an application file into a signature and an axiom store
    """

    def __init__(self, check_irreducible: bool = False):
        self.check_irreducible = check_irreducible

    def parse(self, text: str) -> ApplicationPack:
        header = {'name': None, 'mach': None, 'mlst': None, 'tname': (), 'constants': [], 'programs': [],
                  'types': {}}
        sig: Optional[AppSignature] = None
        kernel: Optional[Kernel] = None
        store = IepStore()
        block: Optional[List[str]] = None
        block_header: List[str] = []
        block_start = 0
        for number, line in _clean_lines(text):
            if block is not None:
                if line == END:
                    self._close_block(sig, kernel, store, block_header, block, block_start)
                    block = None
                else:
                    block.append(line)
                continue
            keyword = line.split()[0]
            if keyword in ('DISJUNCTION', 'CONJUNCTION', 'AXIOM', 'FALSE'):
                if sig is None:
                    sig = self._signature(header)
                    kernel = Kernel(sig, store)
                block_header = line.split(None, 2)
                if len(block_header) < 2:
                    raise ApplicationError(_("line {}: {} block without a name").format(number, keyword))
                block, block_start = [], number
                continue
            if sig is not None:
                raise ApplicationError(_("line {}: declarations must precede the first block").format(number))
            self._header_line(header, number, line)
        if block is not None:
            raise ApplicationError(_("line {}: block not closed by {}").format(block_start, END))
        if sig is None:
            sig = self._signature(header)
        try:
            sig.check()
        except ProgramStructureError as e:
            raise ApplicationError(e.message)
        self.logger.info('application %s: %d programs, %d axioms', sig.name, len(sig.programs), len(store))
        return ApplicationPack(sig, store, text)

    def _header_line(self, header: dict, number: int, line: str):
        keyword, _sep, rest = line.partition(' ')
        rest = rest.strip()
        try:
            if keyword == 'NAME':
                header['name'] = rest
            elif keyword == 'MACH':
                header['mach'] = tuple(int(v) for v in rest.split())
            elif keyword == 'MLST':
                header['mlst'] = tuple(int(v) for v in rest.split())
            elif keyword == 'TYPES':
                header['tname'] = tuple(rest.split())
            elif keyword == 'CONSTANT':
                match = CONSTANT_PATTERN.match(line)
                if not match:
                    raise ValueError(line)
                header['constants'].append(
                    ConstantDescriptor(match.group('name'), match.group('value'), match.group('type')))
            elif keyword == 'PROGRAM':
                match = PROGRAM_PATTERN.match(line)
                if not match or match.group('subtype') not in SUBTYPES:
                    raise ValueError(line)
                header['programs'].append(ProgramDescriptor(
                    match.group('name'),
                    tuple(match.group('inputs').split()),
                    tuple(match.group('outputs').split()),
                    match.group('subtype'),
                    match.group('subst') == 'subst'))
            elif keyword == 'EQUALITY':
                type_name, equality, kind = rest.split()
                if kind not in (EQUALITY, EQUIVALENCE):
                    raise ValueError(kind)
                entry = header['types'].get(type_name, TypeEntry(type_name))
                header['types'][type_name] = dataclasses.replace(entry, equality=equality, equality_kind=kind)
            elif keyword == 'TYPECHECK':
                type_name, typecheck = rest.split()
                entry = header['types'].get(type_name, TypeEntry(type_name))
                header['types'][type_name] = dataclasses.replace(entry, typecheck=typecheck)
            else:
                raise ApplicationError(_("line {}: unknown keyword '{}'").format(number, keyword))
        except ValueError:
            raise ApplicationError(_("line {}: malformed declaration '{}'").format(number, line))

    def _signature(self, header: dict) -> AppSignature:
        if not header['name']:
            raise ApplicationError(_("Application has no NAME"))
        mach = MachineParams.default()
        try:
            if header['mach']:
                msym, mstr, mnat = header['mach']
                mach = mach.replace(msym=msym, mstr=mstr, mnat=mnat)
            if header['mlst']:
                nprem, npmax, nx, ny = header['mlst']
                mach = mach.replace(nprem=nprem, npmax=npmax, nx=nx, ny=ny)
        except (ValueError, ProgramStructureError) as e:
            raise ApplicationError(_("Invalid machine parameters: {}").format(e))
        sig = AppSignature(header['name'], mach, header['tname'], tuple(header['constants']),
                           types=dict(header['types']))
        for descriptor in header['programs']:
            try:
                sig.add_program(descriptor)
            except ProgramStructureError as e:
                raise ApplicationError(e.message)
        return sig

    def _split(self, statements: StatementParser, lines: List[str]) -> Tuple[ProgramList, Optional[str]]:
        if SEPARATOR not in lines:
            raise ApplicationError(_("Axiom without '{}' separator").format(SEPARATOR))
        position = lines.index(SEPARATOR)
        premise = ProgramList(tuple(statements.parse(line) for line in lines[:position]))
        conclusion = lines[position + 1:]
        if len(conclusion) != 1:
            raise ApplicationError(_("Axiom must have exactly one conclusion line"))
        return premise, conclusion[0]

    def _close_block(self, sig: AppSignature, kernel: Kernel, store: IepStore,
                     block_header: List[str], lines: List[str], start: int):
        keyword, name = block_header[0], block_header[1]
        statements = StatementParser(sig.labels)
        try:
            if keyword == 'AXIOM':
                premise, conclusion = self._split(statements, lines)
                if conclusion == FALSE_CONCLUSION:
                    self._register_false(sig, name, premise)
                else:
                    self._register_axiom(sig, kernel, store, name, premise, statements.parse(conclusion))
            elif keyword == 'FALSE':
                self._register_false(sig, name, ProgramList(tuple(statements.parse(line) for line in lines)))
            else:
                header = statements.parse(block_header[2]) if len(block_header) > 2 else None
                if keyword == 'DISJUNCTION':
                    if OPERAND_SEPARATOR not in lines:
                        raise ApplicationError(_("Disjunction {} needs two operands").format(name))
                    position = lines.index(OPERAND_SEPARATOR)
                    a = ProgramList(tuple(statements.parse(line) for line in lines[:position]))
                    b = ProgramList(tuple(statements.parse(line) for line in lines[position + 1:]))
                    descriptor = kernel.build_disjunction(a, b, name, header)
                else:
                    if len(lines) != 2:
                        raise ApplicationError(_("Conjunction {} needs two atomic programs").format(name))
                    descriptor = kernel.build_conjunction(
                        statements.parse(lines[0]), statements.parse(lines[1]), name, header)
                self._register_constructed(sig, descriptor)
        except PecrServiceError as e:
            raise ApplicationError(_("block {} at line {}: {}").format(name, start, e.message))

    def _register_axiom(self, sig: AppSignature, kernel: Kernel, store: IepStore, label: str,
                        premise: ProgramList, conclusion: AtomicProgram):
        if label in store or label in sig.axiom_labels:
            raise ApplicationError(_("Duplicate axiom label '{}'").format(label))
        iep = kernel.make_iep(label, premise, conclusion, Provenance.AXIOM)
        if self.check_irreducible:
            kernel.reducing_sublists(iep)
        store.add(iep)
        sig.axiom_labels.append(label)

    def _register_false(self, sig: AppSignature, label: str, program: ProgramList):
        if label in sig.axiom_labels:
            raise ApplicationError(_("Duplicate axiom label '{}'").format(label))
        report = ProgramValidator(sig).validate_program_list(program)
        if not report.ok:
            raise ApplicationError(str(report))
        sig.false_programs[label] = program
        sig.axiom_labels.append(label)

    def _register_constructed(self, sig: AppSignature, descriptor: ProgramDescriptor):
        if not sig.has_program(descriptor.name):
            sig.add_program(descriptor)
            return
        declared = sig.program(descriptor.name)
        if declared.subtype != descriptor.subtype:
            raise ApplicationError(_("{} is declared {} but built as {}").format(
                descriptor.name, declared.subtype, descriptor.subtype))
        if (declared.inputs, declared.outputs) != (descriptor.inputs, descriptor.outputs):
            raise ApplicationError(_("{} is declared ({};{}) but its operands give ({};{})").format(
                descriptor.name, ' '.join(declared.inputs), ' '.join(declared.outputs),
                ' '.join(descriptor.inputs), ' '.join(descriptor.outputs)))
        sig.replace_program(dataclasses.replace(descriptor, substitutable=declared.substitutable))


def parse_application(text: str, check_irreducible: bool = False) -> ApplicationPack:
    return ApplicationParser(check_irreducible).parse(text)


def print_application(pack: ApplicationPack) -> str:
    """
    Serialize an application back to the application file format
    """
    sig = pack.sig
    lines = ['NAME {}'.format(sig.name),
             'MACH {} {} {}'.format(sig.mach.msym, sig.mach.mstr, sig.mach.mnat),
             'MLST {} {} {} {}'.format(*sig.mach.mlst),
             'TYPES {}'.format(' '.join(sig.tname))]
    for constant in sig.constants:
        lines.append('CONSTANT {} = {} : {}'.format(constant.name, constant.value, constant.type_name))
    for descriptor in sig.programs:
        lines.append('PROGRAM {} ({};{}) {} {}'.format(
            descriptor.name, ' '.join(descriptor.inputs), ' '.join(descriptor.outputs), descriptor.subtype,
            'subst' if descriptor.substitutable else 'nosubst'))
    for entry in sig.types.values():
        if entry.equality:
            lines.append('EQUALITY {} {} {}'.format(entry.name, entry.equality, entry.equality_kind))
        if entry.typecheck:
            lines.append('TYPECHECK {} {}'.format(entry.name, entry.typecheck))
    for descriptor in sig.programs:
        if descriptor.subtype == DSJ and descriptor.operands:
            lines.append('')
            lines.append('DISJUNCTION {} {}'.format(descriptor.name, descriptor.statement))
            lines.extend(str(item) for item in descriptor.operands[0])
            lines.append(OPERAND_SEPARATOR)
            lines.extend(str(item) for item in descriptor.operands[1])
            lines.append(END)
        elif descriptor.subtype == CNJ and descriptor.operands:
            lines.append('')
            lines.append('CONJUNCTION {} {}'.format(descriptor.name, descriptor.statement))
            lines.extend(str(item) for item in descriptor.operands[0])
            lines.append(END)
    for label in sig.axiom_labels:
        lines.append('')
        if label in sig.false_programs:
            lines.append('FALSE {}'.format(label))
            lines.extend(str(item) for item in sig.false_programs[label])
        else:
            iep = pack.store.get(label)
            lines.append('AXIOM {}'.format(label))
            lines.extend(str(item) for item in iep.premise)
            lines.append(SEPARATOR)
            lines.append(str(iep.conclusion))
        lines.append(END)
    return '\n'.join(lines) + '\n'


def _split_documents(text: str) -> List[Tuple[str, List[Tuple[int, str]]]]:
    documents = []
    for number, line in _clean_lines(text):
        header = THEOREM_HEADER.match(line)
        if header:
            documents.append((header.group('label'), []))
        elif not documents:
            documents.append(('proof', [(number, line)]))
        else:
            documents[-1][1].append((number, line))
    return documents


def parse_theorems(text: str, sig: AppSignature) -> List[TheoremSpec]:
    """
    Read theorem statements: premise lines, separator, conclusion
    """
    statements = StatementParser(sig.labels)
    theorems = []
    for label, lines in _split_documents(text):
        body = [line for _number, line in lines]
        if body.count(SEPARATOR) != 1 or body[-2:-1] != [SEPARATOR]:
            raise PecrParseError(_("theorem {}: expected premise lines, '{}' and one conclusion").format(
                label, SEPARATOR))
        for _number, line in lines:
            if line != SEPARATOR:
                _known_program(sig, statements.parse(line), label)
        theorems.append(TheoremSpec(
            label,
            ProgramList(tuple(statements.parse(line) for line in body[:-2])),
            statements.parse(body[-1])))
    return theorems


def _known_program(sig: AppSignature, statement: AtomicProgram, where: str) -> AtomicProgram:
    if not sig.has_program(statement.pn):
        raise PecrParseError(_("{}: unknown program name '{}'").format(where, statement.pn))
    return statement


def parse_proofs(text: str, sig: AppSignature) -> List[ProofDocument]:
    """
    Read numbered proof listings, one per theorem header
    """
    statements = StatementParser(sig.labels)
    documents = []
    for label, lines in _split_documents(text):
        document = ProofDocument(label)
        for number, line in lines:
            match = PROOF_LINE_PATTERN.match(line)
            if not match:
                raise PecrParseError(_("{} line {}: malformed proof line '{}'").format(label, number, line))
            index = int(match.group('index'))
            if index != len(document.lines) + 1:
                raise PecrParseError(_("{} line {}: expected statement {} but found {}").format(
                    label, number, len(document.lines) + 1, index))
            statement = _known_program(sig, AtomicProgram(
                match.group('pn'), statements.labels_of(match.group('x')), statements.labels_of(match.group('y'))),
                '{} line {}'.format(label, number))
            justification = None
            if match.group('rule'):
                try:
                    clist = tuple(int(token) for token in match.group('clist').split())
                except ValueError:
                    raise PecrParseError(_("{} line {}: malformed connection list").format(label, number))
                if any(entry < 1 or entry >= index for entry in clist):
                    raise PecrParseError(_("{} line {}: clist references line ≥ current").format(label, number))
                justification = Justification(match.group('rule'), clist)
            elif document.lines and not document.lines[-1].is_premise:
                raise PecrParseError(_("{} line {}: premise statement after a derived one").format(label, number))
            document.lines.append(ProofLine(index, statement, justification))
        if not document.lines:
            raise PecrParseError(_("{}: empty proof").format(label))
        documents.append(document)
    return documents


def parse_proof(text: str, sig: AppSignature) -> ProofDocument:
    documents = parse_proofs(text, sig)
    if len(documents) != 1:
        raise PecrParseError(_("Expected one proof, found {}").format(len(documents)))
    return documents[0]


def parse_program(text: str, sig: AppSignature) -> ProgramList:
    """
    One `pn [x ...] [y ...]` statement per line
    """
    statements = StatementParser(sig.labels)
    items = [_known_program(sig, statements.parse(line), 'line {}'.format(number))
             for number, line in _clean_lines(text)]
    if not items:
        raise PecrParseError(_("Empty program"))
    return ProgramList(tuple(items))


def print_theorem(theorem: TheoremSpec) -> str:
    lines = ['theorem {}'.format(theorem.label)]
    lines.extend(str(item) for item in theorem.premise)
    lines.append(SEPARATOR)
    lines.append(str(theorem.conclusion))
    return '\n'.join(lines) + '\n'


def print_proof(document: ProofDocument) -> str:
    lines = ['theorem {}'.format(document.label)]
    for line in document.lines:
        text = '{} {}'.format(line.index, line.statement)
        if line.justification:
            text = '{:<28} {}'.format(text, line.justification)
        lines.append(text)
    return '\n'.join(lines) + '\n'


class ProofChecker(PecrService):
    """
    Line by line verification of proof documents
    """
    logger_name = 'kernel'

    def __init__(self, sig: AppSignature, store: IepStore, check_irreducible: bool = False):
        self.sig = sig
        self.store = store
        self.kernel = Kernel(sig, store)
        self.codec = MatrixCodec(sig)
        self.check_irreducible = check_irreducible

    def check_proof(self, document: ProofDocument, theorem: Optional[TheoremSpec] = None,
                    commit: bool = False) -> CheckVerdict:
        """
        Verify every derived line and the final statement
        :param document: parsed proof
        :param theorem: statement the proof must establish; the proof's own premise and last line otherwise
        :param commit: store the theorem as a rule when accepted
        """
        verdict = CheckVerdict(document.label)
        program = document.program
        try:
            report = self.kernel.validator.validate_program_list(program)
        except PecrServiceError as e:
            verdict.reject(0, e.message)
            return self._done(verdict)
        if not report.ok:
            violation = report.violations[0]
            verdict.reject(violation.item, str(violation))
            return self._done(verdict)
        m = document.premise_count
        if m == len(document):
            verdict.reject(m, _("proof has no derived statement"))
            return self._done(verdict)
        for line in document.lines[m:]:
            message = self._check_line(document, line)
            verdict.lines.append(LineReport(line.index, line.justification.rule, message is None, message or ''))
            if message is not None:
                verdict.reject(line.index, message)
                return self._done(verdict)
        if theorem is None:
            theorem = TheoremSpec(document.label, document.premise, document.conclusion)
        failure = self._check_statement(document, theorem)
        if failure is not None:
            verdict.reject(*failure)
            return self._done(verdict)
        try:
            verdict.iep = self.kernel.make_iep(theorem.label, theorem.premise, theorem.conclusion,
                                               Provenance.THEOREM)
        except PecrServiceError as e:
            verdict.reject(len(document), e.message)
            return self._done(verdict)
        trace = reduce_connection_lists(document)
        if trace.has_redundancy:
            verdict.warnings.append(_("redundant lines {} and unused premises {}").format(
                trace.redundant_lines, trace.unused_premises))
        if self.check_irreducible:
            for sublist in self.kernel.reducing_sublists(verdict.iep):
                verdict.warnings.append(_("conclusion follows from premise lines {}").format(list(sublist)))
        if commit:
            self.store.add(verdict.iep)
            self.logger.info('%s stored', theorem.label)
        return self._done(verdict)

    def _done(self, verdict: CheckVerdict) -> CheckVerdict:
        if verdict.accepted:
            self.logger.info('%s', verdict)
            for warning in verdict.warnings:
                self.logger.warning('%s: %s', verdict.label, warning)
        else:
            self.logger.info('%s', verdict)
        return verdict

    def _check_statement(self, document: ProofDocument, theorem: TheoremSpec) -> Optional[Tuple[int, str]]:
        if document.premise != theorem.premise:
            return 1, _("premise differs from the statement of {}").format(theorem.label)
        last, conclusion = document.conclusion, theorem.conclusion
        if last.pn != conclusion.pn or last.x != conclusion.x or len(last.y) != len(conclusion.y):
            return len(document), _("final conclusion {} differs from {}").format(last, conclusion)
        return None

    def _check_line(self, document: ProofDocument, line: ProofLine) -> Optional[str]:
        """
        :return: None when the line follows from its justification, otherwise the reason
        """
        rule, clist = line.justification.rule, line.justification.clist
        cited = [document.line(i).statement for i in clist]
        statement = line.statement
        try:
            if rule == 'iot':
                if len(cited) != 1:
                    return _("iot cites {} lines instead of 1").format(len(cited))
                if statement not in self.kernel.iot_instances(cited[0]):
                    return _("{} is not a type check of {}").format(statement, cited[0])
                return None
            if rule == 'sr1':
                if len(cited) != 2:
                    return _("sr1 cites {} lines instead of 2").format(len(cited))
                original, equality = cited
                candidates = [x for x, _kind in self.kernel.substitution_candidates(original, equality)]
                if statement.pn != original.pn or statement.x not in candidates \
                        or len(statement.y) != len(original.y):
                    return _("{} is not a substitution of {} under {}").format(statement, original, equality)
                return None
            if rule == 'sr2':
                if len(cited) != 3:
                    return _("sr2 cites {} lines instead of 3").format(len(cited))
                if statement not in self.kernel.sr2_instances(*cited):
                    return _("{} does not equate the outputs of {} and {}").format(statement, cited[0], cited[2])
                return None
        except PecrServiceError as e:
            return e.message
        iep = self.store.get(rule)
        if iep is None:
            return _("unknown rule label '{}'").format(rule)
        if len(clist) != len(iep.premise):
            return _("{} has a premise of {} lines but the clist cites {}").format(
                rule, len(iep.premise), len(clist))
        result = self.codec.ioeq_check(ProgramList(tuple(cited)), iep.premise)
        if not result:
            return _("cited lines are not I/O equivalent to the premise of {}: {}").format(rule, result.reason)
        expected = []
        for label in iep.conclusion.x:
            bound = label if label.is_constant else result.witness.get(label)
            if bound is None:
                return _("{}: conclusion input {} is not bound by the premise").format(rule, label)
            expected.append(bound)
        if statement.pn != iep.conclusion.pn or statement.x != tuple(expected) \
                or len(statement.y) != len(iep.conclusion.y):
            return _("{} does not follow from {}: expected {} [{}]").format(
                statement, rule, iep.conclusion.pn, ' '.join(map(str, expected)))
        return None


def check_proofs(pack: ApplicationPack, theorems: Iterable[TheoremSpec], documents: Iterable[ProofDocument],
                 store: Optional[IepStore] = None) -> List[CheckVerdict]:
    """
    Check proofs in file order, storing each accepted theorem before the next one
    :param store: store extended in place, a copy of the pack store by default
    """
    store = store if store is not None else pack.fresh_store()
    statements = {theorem.label: theorem for theorem in theorems}
    checker = ProofChecker(pack.sig, store)
    verdicts = []
    for document in documents:
        verdict = checker.check_proof(document, statements.get(document.label), commit=True)
        verdicts.append(verdict)
        if not verdict.accepted:
            break
    return verdicts


def reduce_connection_lists(document: ProofDocument) -> ReductionTrace:
    """
    Trace the connection list of the conclusion back to the premise
    """
    n, m = len(document), document.premise_count
    trace = ReductionTrace(premise_count=m, line_count=n)
    b = sorted(unique_list(document.clist(n)))
    trace.steps.append(b)
    for i in range(n - 1, m, -1):
        if i in b:
            b = sorted(unique_list(minus_lists(b, [i]) + list(document.clist(i))))
            trace.steps.append(b)
            trace.absorbed.append(i)
    return trace


def load_rule_ids(text: str) -> Dict[str, int]:
    """
    Read a `label id` fixture
    """
    rule_ids = {}
    for number, line in _clean_lines(text):
        parts = line.split()
        if len(parts) != 2 or not parts[1].isdigit():
            raise PecrParseError(_("line {}: expected 'label id'").format(number))
        rule_ids[parts[0]] = int(parts[1])
    return rule_ids


def export_proof_matrix(document: ProofDocument, sig: AppSignature, rule_ids: Dict[str, int],
                        nx: Optional[int] = None, ny: Optional[int] = None,
                        width: Optional[int] = None) -> np.ndarray:
    """
    Integer rows [i pn x y atl clist]; widths fit the document unless given
    """
    program = document.program
    codec = MatrixCodec(sig, nx, ny)
    encoded = codec.encode_program(program)
    if width is None:
        width = max([len(document.clist(i)) for i in range(1, len(document) + 1)] or [0])
    rows = np.zeros((len(document), 2 + encoded.rows.shape[1] + width), dtype=np.int64)
    for i, line in enumerate(document.lines):
        rows[i, 0] = line.index
        rows[i, 1:1 + encoded.rows.shape[1]] = encoded.rows[i]
        if line.justification:
            rule = line.justification.rule
            if rule not in rule_ids:
                raise ApplicationError(_("No rule id for '{}'").format(rule))
            clist = line.justification.clist
            if len(clist) > width:
                raise ApplicationError(_("line {}: clist wider than {}").format(line.index, width))
            column = 1 + encoded.rows.shape[1]
            rows[i, column] = rule_ids[rule]
            rows[i, column + 1:column + 1 + len(clist)] = clist
    return rows

