"""
Fully discrete dynamical systems: boxes of integer arrays, maps, orbits and certificates
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from django.utils.translation import gettext as _

from pecr_logic.common.services import DynamicsError


def as_state(value) -> np.ndarray:
    """
    Integer array of at least one dimension
    """
    return np.atleast_1d(np.asarray(value, dtype=np.int64))


@dataclass(eq=False)
class BoxRegion:
    """
    Box [a b] of integer arrays with a <= b elementwise
    """
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.a = as_state(self.a)
        self.b = as_state(self.b)
        if self.a.shape != self.b.shape:
            raise DynamicsError(_("Box bounds have shapes {} and {}").format(self.a.shape, self.b.shape))

    def __eq__(self, other):
        return isinstance(other, BoxRegion) and np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b)

    def __str__(self):
        return '[{} {}]'.format(self.a.tolist(), self.b.tolist())

    @classmethod
    def interval(cls, lower: int, upper: int) -> 'BoxRegion':
        return cls(np.array([lower]), np.array([upper]))

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.a.shape

    @property
    def is_valid(self) -> bool:
        return bool((self.a <= self.b).all())

    def within_machine(self, mnat: int) -> bool:
        return bool((self.a >= 0).all() and (self.b <= mnat).all())

    def contains(self, u: np.ndarray) -> bool:
        """
        eltbx [u p]
        """
        u = as_state(u)
        return u.shape == self.shape and bool((self.a <= u).all() and (u <= self.b).all())

    def inside(self, other: 'BoxRegion') -> bool:
        """
        subbx [self other]
        """
        return self.shape == other.shape and bool((other.a <= self.a).all() and (self.b <= other.b).all())

    def state_count(self, mnat: Optional[int] = None) -> int:
        from pecr_logic.dynsys.services import state_count
        return state_count(self, mnat)


@dataclass(frozen=True)
class MapSpec:
    """
    Named elementwise map on integer arrays with an optional range bounder
    """
    name: str
    function: Callable[[np.ndarray], np.ndarray]
    bounder: Optional[Callable[[BoxRegion], BoxRegion]] = None
    params: Dict[str, int] = field(default_factory=dict)
    # Vectorised maps accept a stack of states and map each one
    vectorised: bool = True

    def __call__(self, u: np.ndarray) -> np.ndarray:
        return np.asarray(self.function(u), dtype=np.int64)

    def __str__(self):
        params = ' '.join('{}={}'.format(k, v) for k, v in self.params.items())
        return '{} {}'.format(self.name, params).strip()


@dataclass
class IterationTrace:
    final: np.ndarray
    steps: int = 0
    snapshots: List[Tuple[int, np.ndarray]] = field(default_factory=list)

    def lines(self) -> List[str]:
        return ['{} {}'.format(t, ' '.join(map(str, value.tolist()))) for t, value in self.snapshots]


@dataclass
class CycleReport:
    tcyc: int
    pcyc: int
    witness: np.ndarray

    @property
    def is_fixed_point(self) -> bool:
        return self.pcyc == 1

    def __str__(self):
        return 'tcyc={} pcyc={}'.format(self.tcyc, self.pcyc)


@dataclass
class AxcCertificate:
    """
    Outcome of the axc premise check bndf [p] [q], subbx [q p]
    """
    map_name: str
    p: BoxRegion
    q: BoxRegion
    certified: bool
    reason: str = ''

    def __str__(self):
        if self.certified:
            return _('certified: {} maps {} into {}').format(self.map_name, self.p, self.q)
        return _('refused: {}').format(self.reason)
