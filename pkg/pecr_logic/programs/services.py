"""
List algebra, structural validation and binding analysis of programs
"""
from collections import namedtuple
from typing import Iterable, Optional, Sequence

from django.utils.translation import gettext as _

from pecr_logic.common.services import CapacityError, PecrService
from pecr_logic.programs.models import (
    AppSignature, AtomicProgram, BindingProfile, LabelKind, ProgramList, ValidationReport,
)

SublistFlags = namedtuple('SublistFlags', ['sublst', 'equivlst', 'eqlst'])


def _as_list(u) -> list:
    # A scalar is treated as a singleton
    if isinstance(u, (list, tuple)):
        return list(u)
    return [u]


def concat_lists(u, v, capacity: Optional[int] = None) -> list:
    """
    conclst: remove the outermost brackets of u and v and join them
    :param capacity: maximal length of the result, if any
    """
    output = _as_list(u) + _as_list(v)
    if capacity is not None and len(output) > capacity:
        raise CapacityError(_("List of length {} exceeds capacity {}").format(len(output), capacity))
    return output


def chain(*lists, capacity: Optional[int] = None) -> list:
    """
    Pairwise fold of concat_lists over its arguments
    """
    output = []
    for u in lists:
        output = concat_lists(output, u, capacity=capacity)
    return output


def cap_lists(u: Sequence, v: Sequence) -> list:
    """
    Elements of u also in v, in u's order, without duplicates
    """
    output = []
    for element in u:
        if element in v and element not in output:
            output.append(element)
    return output


def minus_lists(u: Sequence, v: Sequence) -> list:
    """
    Elements of u not in v, keeping order and multiplicity
    """
    return [element for element in u if element not in v]


def unique_list(u: Iterable) -> list:
    output = []
    for element in u:
        if element not in output:
            output.append(element)
    return output


def sublist_check(u: Sequence, v: Sequence) -> SublistFlags:
    sub = all(element in v for element in u)
    sup = all(element in u for element in v)
    return SublistFlags(sub, sub and sup, list(u) == list(v))


def binding_profile(p: ProgramList) -> BindingProfile:
    """
    Unit-rank input and output lists of a program and the lists derived from them
    """
    inp = chain(*[list(item.x) for item in p])
    outp = chain(*[list(item.y) for item in p])
    pil = unique_list(minus_lists(inp, outp))
    return BindingProfile(
        inp=tuple(inp),
        outp=tuple(outp),
        lio=tuple(unique_list(concat_lists(inp, outp))),
        pil=tuple(pil),
        free=tuple(label for label in pil if label.kind is not LabelKind.CONSTANT),
        pol=tuple(minus_lists(outp, inp)),
    )


class ProgramValidator(PecrService):
    """
    Structural conditions of atomic programs and program lists
    """

    def __init__(self, sig: AppSignature):
        self.sig = sig

    def validate_atomic(self, ap: AtomicProgram, item: int = 0) -> ValidationReport:
        """
        Check the I/O list conditions of one statement
        :param ap: statement to check
        :param item: 1-based position used in the report
        """
        descriptor = self.sig.program(ap.pn)
        mach = self.sig.mach
        if len(ap.x) > mach.nx or len(ap.y) > mach.ny:
            raise CapacityError(_("{}: arity exceeds nx={} ny={}").format(ap, mach.nx, mach.ny))
        report = ValidationReport()
        if len(ap.x) != len(descriptor.inputs) or len(ap.y) != len(descriptor.outputs):
            report.add(item, 'arity', _("{} expects {} inputs and {} outputs").format(
                ap.pn, len(descriptor.inputs), len(descriptor.outputs)))
        for label in ap.x:
            if label.kind is LabelKind.NULL:
                report.add(item, 'io-domain', _("input {} is neither variable nor constant").format(label))
        for label in ap.y:
            if label.kind is not LabelKind.VARIABLE:
                report.add(item, 'io-domain', _("output {} is not a variable").format(label))
        for slot, label in enumerate(ap.x + ap.y):
            if label.is_constant and slot < len(descriptor.inputs + descriptor.outputs):
                constant = self.sig.constant_descriptor(label.text)
                if constant.type_name != descriptor.slot_type(slot):
                    report.add(item, 'arity', _("constant {} of type {} in slot of type {}").format(
                        label, constant.type_name, descriptor.slot_type(slot)))
        if cap_lists(ap.x, ap.y):
            report.add(item, 'io-disjoint', _("cap[x y] nonempty"))
        if list(ap.y) != unique_list(ap.y):
            report.add(item, 'output-unique', _("y not unique"))
        return report

    def validate_program_list(self, p: ProgramList) -> ValidationReport:
        """
        Check the I/O dependency conditions of a program list
        """
        if len(p) > self.sig.mach.npmax:
            raise CapacityError(_("Program of length {} exceeds npmax={}").format(len(p), self.sig.mach.npmax))
        report = ValidationReport()
        seen_outputs = []
        for m, item in enumerate(p, start=1):
            if not self.sig.has_program(item.pn):
                report.add(m, 'known-program', _("unknown program name {}").format(item.pn))
                continue
            report.extend(self.validate_atomic(item, m))
            for label in item.y:
                if label in seen_outputs:
                    report.add(m, 'outputs-distinct', _("duplicate output label {}").format(label))
                seen_outputs.append(label)
        later_outputs = []
        for m in range(len(p), 0, -1):
            item = p[m - 1]
            later_outputs.extend(item.y)
            for label in item.x:
                if label in later_outputs:
                    report.add(m, 'input-before-output', _("input {} equals later output").format(label))
        if not report.ok:
            self.logger.debug('program rejected: %s', report)
        return report
