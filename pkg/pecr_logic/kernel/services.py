"""
The trusted inference core
"""
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from django.conf import settings
from django.utils.translation import gettext as _

from pecr_logic.common.services import CapacityError, PecrService, RuleApplicationError
from pecr_logic.kernel.models import FreshLabelAllocator, Iep, IepStore, MatchResult, Substitution
from pecr_logic.programs.models import (
    CNJ, DSJ, AppSignature, AtomicProgram, Label, ProgramDescriptor, ProgramList, ValidationReport,
)
from pecr_logic.programs.services import ProgramValidator, binding_profile, sublist_check, unique_list


class Kernel(PecrService):
    """
    Rule matching and application over proof programs of one application
    """
    logger_name = 'kernel'

    def __init__(self, sig: AppSignature, store: Optional[IepStore] = None):
        self.sig = sig
        self.store = store if store is not None else IepStore()
        self.validator = ProgramValidator(sig)

    # Extensions

    def check_extension_structure(self, p: ProgramList, c: AtomicProgram) -> ValidationReport:
        """
        conc[p c] is a program list and the inputs of c come from the I/O labels of p or cst
        """
        report = self.validator.validate_program_list(p + c)
        lio = binding_profile(p).lio
        for label in c.x:
            if not label.is_constant and label not in lio:
                report.add(len(p) + 1, 'extension-inputs',
                           _("input {} not in premise I/O ∪ cst").format(label))
        return report

    def make_iep(self, label: str, premise: ProgramList, conclusion: AtomicProgram, provenance) -> Iep:
        if len(premise) > self.sig.mach.nprem:
            raise CapacityError(_("Premise of {} exceeds nprem={}").format(label, self.sig.mach.nprem))
        report = self.check_extension_structure(premise, conclusion)
        if not report.ok:
            raise RuleApplicationError(_("{}: {}").format(label, report))
        return Iep(label, premise, conclusion, provenance)

    # Matching

    def match_premise(self, proof: ProgramList, iep: Iep, frontier: int = 0,
                      limit: Optional[int] = None) -> List[MatchResult]:
        """
        Every clist whose extracted sublist of proof is ioeq to the premise of iep
        :param proof: current proof program
        :param iep: stored rule
        :param frontier: only return clists citing at least one line above this index
        :param limit: stop after this many matches
        """
        by_name: Dict[str, List[int]] = {}
        for index, item in enumerate(proof, start=1):
            by_name.setdefault(item.pn, []).append(index)
        premise = iep.premise
        results: List[MatchResult] = []
        clist: List[int] = []

        def bind(pattern: AtomicProgram, statement: AtomicProgram, subst: Substitution) -> Optional[Substitution]:
            if len(pattern.x) != len(statement.x) or len(pattern.y) != len(statement.y):
                return None
            extended = Substitution(subst)
            for p_label, s_label in zip(pattern.labels, statement.labels):
                if p_label.is_constant:
                    if p_label != s_label:
                        return None
                    continue
                bound = extended.get(p_label)
                if bound is None:
                    extended[p_label] = s_label
                elif bound != s_label:
                    return None
            return extended

        def search(depth: int, subst: Substitution):
            if limit is not None and len(results) >= limit:
                return
            if depth == len(premise):
                if not clist or max(clist) > frontier:
                    results.append(MatchResult(tuple(clist), subst))
                return
            for index in by_name.get(premise[depth].pn, ()):
                extended = bind(premise[depth], proof[index - 1], subst)
                if extended is not None:
                    clist.append(index)
                    search(depth + 1, extended)
                    clist.pop()

        search(0, Substitution())
        self.logger.debug('%s: %d matches', iep.label, len(results))
        return results

    def instantiate(self, iep: Iep, subst: Substitution, outputs: Sequence[Label]) -> AtomicProgram:
        conclusion = iep.conclusion
        return AtomicProgram(conclusion.pn, tuple(subst.apply(label) for label in conclusion.x), tuple(outputs))

    def apply_iep(self, proof: ProgramList, iep: Iep, match: MatchResult,
                  alloc: FreshLabelAllocator) -> AtomicProgram:
        """
        Conclusion of iep with inputs rewritten by the match and fresh outputs
        """
        if len(proof) + 1 > self.sig.mach.npmax:
            raise CapacityError(_("Proof would exceed npmax={}").format(self.sig.mach.npmax))
        outputs = [alloc.allocate() for _label in iep.conclusion.y]
        statement = self.instantiate(iep, match.subst, outputs)
        self.logger.debug('%s %s -> %s', iep.label, list(match.clist), statement)
        return statement

    # Schemas

    def iot_instances(self, stmt: AtomicProgram) -> List[AtomicProgram]:
        """
        Type checking statement for each I/O element of stmt
        """
        descriptor = self.sig.program(stmt.pn)
        instances = []
        for slot, label in enumerate(stmt.labels):
            type_name = descriptor.slot_type(slot)
            typecheck = self.sig.typecheck_for(type_name)
            if typecheck is None:
                self.logger.warning('iot: no type checker for type %s of %s in %s', type_name, label, stmt)
                continue
            instances.append(AtomicProgram(typecheck, (label,), ()))
        return unique_list(instances)

    def _equality_entry(self, equality: AtomicProgram, type_name: str):
        entry = self.sig.equality_for(type_name)
        if entry is None or entry.equality != equality.pn:
            return None
        if len(equality.x) != 2 or equality.y:
            return None
        return entry

    def substitution_candidates(self, original: AtomicProgram,
                                equality: AtomicProgram) -> List[Tuple[Tuple[Label, ...], str]]:
        """
        Input lists obtained by rewriting one slot of original under equality.
        Both orientations of the equality are accepted.
        :return: list of (new inputs, equality kind)
        """
        descriptor = self.sig.program(original.pn)
        if not descriptor.substitutable:
            raise RuleApplicationError(_("{} does not admit substitution").format(original.pn))
        u, v = (equality.x + (None, None))[:2]
        candidates = []
        for slot, label in enumerate(original.x):
            entry = self._equality_entry(equality, descriptor.inputs[slot])
            if entry is None:
                continue
            for old, new in ((u, v), (v, u)):
                if label == old:
                    rewritten = original.x[:slot] + (new,) + original.x[slot + 1:]
                    if (rewritten, entry.equality_kind) not in candidates:
                        candidates.append((rewritten, entry.equality_kind))
        if not candidates:
            raise RuleApplicationError(_("{} cannot rewrite {}").format(equality, original))
        return candidates

    def substitution_instance(self, original: AtomicProgram, equality: AtomicProgram,
                              substituted: Optional[AtomicProgram] = None,
                              alloc: Optional[FreshLabelAllocator] = None,
                              choice: int = 0) -> AtomicProgram:
        """
        sr1 when substituted is absent: rewritten statement with fresh outputs.
        sr2 otherwise: eqY [y'[j] y[j]] for output j=choice.
        """
        candidates = self.substitution_candidates(original, equality)
        if substituted is None:
            rewritten, _kind = candidates[choice]
            outputs = tuple(alloc.allocate() for _label in original.y) if alloc else original.y
            return AtomicProgram(original.pn, rewritten, outputs)
        instances = self.sr2_instances(original, equality, substituted)
        if not instances:
            raise RuleApplicationError(_("No output equality for {} and {}").format(original, substituted))
        return instances[choice]

    def sr2_instances(self, original: AtomicProgram, equality: AtomicProgram,
                      substituted: AtomicProgram) -> List[AtomicProgram]:
        if substituted.pn != original.pn or len(substituted.y) != len(original.y):
            raise RuleApplicationError(_("{} is not a substitution of {}").format(substituted, original))
        kinds = [kind for rewritten, kind in self.substitution_candidates(original, equality)
                 if rewritten == substituted.x]
        if not kinds:
            raise RuleApplicationError(_("{} is not a substitution of {}").format(substituted, original))
        descriptor = self.sig.program(original.pn)
        if len(original.y) != len(descriptor.outputs):
            raise RuleApplicationError(_("{} does not list the {} outputs of {}").format(
                original, len(descriptor.outputs), original.pn))
        instances = []
        for j, type_name in enumerate(descriptor.outputs):
            entry = self.sig.equality_for(type_name)
            if entry is None:
                continue
            if entry.equality_kind not in kinds:
                self.logger.debug('sr2: %s would mix equality kinds', entry.equality)
                continue
            instances.append(AtomicProgram(entry.equality, (substituted.y[j], original.y[j]), ()))
        return instances

    # Disjunctions and conjunctions

    def _slot_types(self, program: ProgramList, labels: Sequence[Label]) -> Tuple[str, ...]:
        types = []
        for label in labels:
            for item in program:
                if label in item.labels:
                    types.append(self.sig.program(item.pn).slot_type(item.labels.index(label)))
                    break
        return tuple(types)

    def _header(self, name: str, statement: Optional[AtomicProgram], free, pol) -> AtomicProgram:
        if statement is None:
            return AtomicProgram(name, tuple(free), tuple(pol))
        if not sublist_check(statement.x, free).equivlst or not sublist_check(statement.y, pol).equivlst:
            raise RuleApplicationError(_("{} does not list free={} pol={}").format(
                statement, ' '.join(map(str, free)), ' '.join(map(str, pol))))
        return statement

    def build_disjunction(self, a: ProgramList, b: ProgramList, name: str,
                          statement: Optional[AtomicProgram] = None) -> ProgramDescriptor:
        """
        AP of subtype dsj whose I/O lists come from the first operand
        :param statement: optional header fixing the slot order
        """
        pa, pb = binding_profile(a), binding_profile(b)
        if not sublist_check(pa.free, pb.free).equivlst or not sublist_check(pa.pol, pb.pol).equivlst:
            raise RuleApplicationError(_("Operands of {} have different free or primary output lists").format(name))
        header = self._header(name, statement, pa.free, pa.pol)
        return ProgramDescriptor(
            name, self._slot_types(a, header.x), self._slot_types(a, header.y), DSJ, True, header, (a, b))

    def build_conjunction(self, a: AtomicProgram, b: AtomicProgram, name: str,
                          statement: Optional[AtomicProgram] = None) -> ProgramDescriptor:
        """
        AP of subtype cnj running conc[a b]
        """
        s = ProgramList.of(a, b)
        report = self.validator.validate_program_list(s)
        if not report.ok:
            raise RuleApplicationError(_("Conjunction {}: {}").format(name, report))
        profile = binding_profile(s)
        header = self._header(name, statement, profile.free, profile.pol)
        return ProgramDescriptor(
            name, self._slot_types(s, header.x), self._slot_types(s, header.y), CNJ, True, header, (s,))

    # Irreducibility

    def reducing_sublists(self, iep: Iep) -> List[Tuple[int, ...]]:
        """
        Strict premise sublists from which one stored rule or iot yields the conclusion
        :return: list of 1-based index tuples; empty when none found or search skipped
        """
        n = len(iep.premise)
        if n > settings.PECR_IRREDUCIBILITY_BOUND:
            self.logger.warning('%s: premise of %d lines, irreducibility not searched', iep.label, n)
            return []
        found = []
        target = (iep.conclusion.pn, iep.conclusion.x)
        for size in range(n):
            for indices in combinations(range(1, n + 1), size):
                sub = ProgramList(tuple(iep.premise[i - 1] for i in indices))
                if any((s.pn, s.x) == target for i in sub for s in self.iot_instances(i)):
                    found.append(indices)
                    continue
                for rule in self.store:
                    if rule.label == iep.label or rule.conclusion.pn != iep.conclusion.pn:
                        continue
                    if any(self.instantiate(rule, m.subst, ()).x == iep.conclusion.x
                           for m in self.match_premise(sub, rule)):
                        found.append(indices)
                        break
        if found:
            self.logger.warning('%s: conclusion reachable from strict sublists %s', iep.label, found)
        return found
