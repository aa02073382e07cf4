"""
Integer matrix representations of programs
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from pecr_logic.programs.models import Label


def matrix_to_text(rows: np.ndarray) -> str:
    """
    One row per line, space separated decimal integers
    """
    return '\n'.join(' '.join(str(int(v)) for v in row) for row in rows)


def matrix_from_text(text: str) -> np.ndarray:
    rows = [[int(token) for token in line.split()] for line in text.splitlines()
            if line.strip() and not line.lstrip().startswith('#')]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return np.array(rows, dtype=np.int64)


@dataclass(eq=False)
class ProgramMatrix:
    """
    Row i = [pn id, x padded to nx, y padded to ny]
    """
    rows: np.ndarray
    nx: int
    ny: int

    @property
    def io(self) -> 'IoMatrix':
        return IoMatrix(self.rows[:, 1:], self.nx, self.ny)

    @property
    def pn_ids(self) -> List[int]:
        return [int(v) for v in self.rows[:, 0]]

    def __len__(self):
        return self.rows.shape[0]

    def to_text(self) -> str:
        return matrix_to_text(self.rows)

    def tolist(self) -> List[List[int]]:
        return self.rows.tolist()


@dataclass(eq=False)
class IoMatrix:
    rows: np.ndarray
    nx: int
    ny: int

    def to_text(self) -> str:
        return matrix_to_text(self.rows)

    def tolist(self) -> List[List[int]]:
        return self.rows.tolist()


@dataclass(eq=False)
class BindingMatrix:
    """
    u[k] = lio[k] * b[k] for one I/O label
    """
    label: Label
    matrix: np.ndarray
    template: np.ndarray
    binding: bool

    @property
    def cells(self) -> int:
        return int(self.template.sum())


@dataclass(eq=False)
class DmioDecomposition:
    shape: tuple
    matrices: List[BindingMatrix] = field(default_factory=list)

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    @property
    def lio(self) -> List[Label]:
        return [m.label for m in self.matrices]

    def reconstruct(self) -> np.ndarray:
        total = np.zeros(self.shape, dtype=np.int64)
        for m in self.matrices:
            total = total + m.matrix
        return total

    def for_label(self, label: Label) -> Optional[BindingMatrix]:
        for m in self.matrices:
            if m.label == label:
                return m
        return None


@dataclass
class IoeqResult:
    ok: bool
    witness: Dict[Label, Label] = field(default_factory=dict)
    reason: str = ''

    def __bool__(self):
        return self.ok
