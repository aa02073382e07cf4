"""
Matrix codec: encoding, decomposition into binding matrices, logic gates and I/O equivalence
"""
from typing import Dict, List, Optional, Sequence

import numpy as np
from django.utils.translation import gettext as _

from pecr_logic.common.services import CapacityError, MatrixShapeError, PecrService, ProgramStructureError
from pecr_logic.matrices.models import BindingMatrix, DmioDecomposition, IoeqResult, ProgramMatrix
from pecr_logic.programs.models import AppSignature, AtomicProgram, Label, LabelTable, ProgramList
from pecr_logic.programs.services import binding_profile

AND = 'and'
OR = 'or'


def gate(u: np.ndarray, v: np.ndarray, mode: str = AND) -> np.ndarray:
    """
    Elementwise AND/OR of two binary matrices
    :param mode: 'and' or 'or'
    """
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape != v.shape:
        raise MatrixShapeError(_("Gate operands have shapes {} and {}").format(u.shape, v.shape))
    if ((u != 0) & (u != 1)).any() or ((v != 0) & (v != 1)).any():
        raise MatrixShapeError(_("Gate operands must be binary"))
    if mode == AND:
        return np.bitwise_and(u, v)
    if mode == OR:
        return np.bitwise_or(u, v)
    raise MatrixShapeError(_("Unknown gate mode '{}'").format(mode))


def decompose_io_matrix(mio: np.ndarray, labels: LabelTable,
                        lio: Optional[Sequence[Label]] = None) -> DmioDecomposition:
    """
    One matrix per distinct I/O label, u[k] = lio[k] * b[k]
    :param mio: integer I/O matrix
    :param labels: label table used to classify ids
    :param lio: label order; defaults to first occurrence in row-major order
    """
    mio = np.asarray(mio, dtype=np.int64)
    if lio is None:
        ids = []
        for value in mio.flatten():
            if value and value not in ids:
                ids.append(int(value))
        lio = [labels.label(label_id) for label_id in ids]
    decomposition = DmioDecomposition(shape=mio.shape)
    for label in lio:
        template = (mio == label.id).astype(np.int64)
        decomposition.matrices.append(BindingMatrix(
            label=label,
            matrix=template * label.id,
            template=template,
            binding=bool(template.sum() >= 2 or label.is_constant),
        ))
    return decomposition


class MatrixCodec(PecrService):
    """
    Integer encoding of programs of one application
    """

    def __init__(self, sig: AppSignature, nx: Optional[int] = None, ny: Optional[int] = None):
        """
        :param sig: application of the programs
        :param nx: input width, fitted to each program when omitted
        :param ny: output width, fitted to each program when omitted
        """
        self.sig = sig
        self.nx = nx
        self.ny = ny

    def widths(self, *programs: ProgramList):
        nx = self.nx if self.nx is not None else max([len(i.x) for p in programs for i in p] or [0])
        ny = self.ny if self.ny is not None else max([len(i.y) for p in programs for i in p] or [0])
        return nx, ny

    def encode_program(self, p: ProgramList, nx: Optional[int] = None,
                       ny: Optional[int] = None) -> ProgramMatrix:
        if nx is None or ny is None:
            fit_x, fit_y = self.widths(p)
            nx = fit_x if nx is None else nx
            ny = fit_y if ny is None else ny
        rows = np.zeros((len(p), 1 + nx + ny), dtype=np.int64)
        for i, item in enumerate(p):
            if len(item.x) > nx or len(item.y) > ny:
                raise CapacityError(_("{} does not fit nx={} ny={}").format(item, nx, ny))
            rows[i, 0] = self.sig.program_id(item.pn)
            rows[i, 1:1 + len(item.x)] = [label.id for label in item.x]
            rows[i, 1 + nx:1 + nx + len(item.y)] = [label.id for label in item.y]
        return ProgramMatrix(rows, nx, ny)

    def decode_program(self, m: ProgramMatrix) -> ProgramList:
        items = []
        for i, row in enumerate(m.rows, start=1):
            descriptor = self.sig.program_by_id(int(row[0]))
            xs = [int(v) for v in row[1:1 + m.nx]]
            ys = [int(v) for v in row[1 + m.nx:1 + m.nx + m.ny]]
            items.append(AtomicProgram(
                descriptor.name,
                self._slots(i, descriptor.name, xs, len(descriptor.inputs), _('input')),
                self._slots(i, descriptor.name, ys, len(descriptor.outputs), _('output'))))
        return ProgramList(tuple(items))

    def _slots(self, row: int, name: str, values: List[int], arity: int, kind: str) -> tuple:
        if any(values[arity:]):
            if arity == 0:
                message = _("row {}: {} where {} declares none").format(row, kind, name)
            else:
                message = _("row {}: {} beyond the declared arity of {}").format(row, kind, name)
            raise ProgramStructureError(message)
        if len(values) < arity or not all(values[:arity]):
            raise ProgramStructureError(_("row {}: missing {} of {}").format(row, kind, name))
        return tuple(self.sig.labels.label(v) for v in values[:arity])

    def decompose_program(self, p: ProgramList) -> DmioDecomposition:
        """
        Decompose the I/O matrix of a program using its lio order
        """
        matrix = self.encode_program(p)
        return decompose_io_matrix(matrix.io.rows, self.sig.labels, binding_profile(p).lio)

    def ioeq_check(self, q: ProgramList, p: ProgramList) -> IoeqResult:
        """
        ioeq[q p]: q preserves every binding pattern of the reference program p
        :return: result with the witness map from p labels to q labels
        """
        if len(q) != len(p):
            return IoeqResult(False, reason=_("lengths differ"))
        for i, (a, b) in enumerate(zip(q, p), start=1):
            if a.pn != b.pn:
                return IoeqResult(False, reason=_("program names differ at item {}").format(i))
            if len(a.x) != len(b.x) or len(a.y) != len(b.y):
                return IoeqResult(False, reason=_("arities differ at item {}").format(i))
        nx, ny = self.widths(q, p)
        mq = self.encode_program(q, nx, ny).io.rows
        mp = self.encode_program(p, nx, ny).io.rows
        return self.ioeq_matrices(mq, mp)

    def ioeq_matrices(self, mq: np.ndarray, mp: np.ndarray) -> IoeqResult:
        """
        Template domination test on two I/O matrices of the same shape
        """
        if mq.shape != mp.shape:
            return IoeqResult(False, reason=_("shapes differ"))
        labels = self.sig.labels
        witness: Dict[Label, Label] = {}
        q_templates = {}
        for b in decompose_io_matrix(mp, labels):
            cells = np.argwhere(b.template == 1)
            q_id = int(min(mq[r, c] for r, c in cells))
            if q_id not in q_templates:
                q_templates[q_id] = (mq == q_id).astype(np.int64)
            a = q_templates[q_id]
            if b.binding and not np.array_equal(gate(a, b.template, AND), b.template):
                return IoeqResult(False, reason=_("binding pattern of {} not preserved").format(b.label))
            if b.label.is_constant and q_id != b.label.id:
                return IoeqResult(False, reason=_("constant {} not preserved").format(b.label))
            witness[b.label] = labels.label(q_id)
        self.logger.debug('ioeq witness %s', {str(k): str(v) for k, v in witness.items()})
        return IoeqResult(True, witness)
