"""
Iteration, range bounding, axc certification and cycle detection
"""
import logging
from functools import reduce
from typing import Callable, Dict, Optional

import numpy as np
from django.conf import settings
from django.utils.translation import gettext as _

from pecr_logic.common.services import DynamicsError, ExecutionError, PecrService
from pecr_logic.dynsys.models import AxcCertificate, BoxRegion, CycleReport, IterationTrace, MapSpec, as_state

logger = logging.getLogger('services')

MAP_REGISTRY: Dict[str, Callable[..., MapSpec]] = {}


def register_map(name: str):
    """
    Register a MapSpec factory under a name
    """
    def decorator(factory):
        MAP_REGISTRY[name] = factory
        return factory
    return decorator


def get_map(name: str, **params) -> MapSpec:
    try:
        factory = MAP_REGISTRY[name]
    except KeyError:
        raise DynamicsError(_("Unknown map '{}'").format(name))
    try:
        return factory(**params)
    except TypeError:
        raise DynamicsError(_("Invalid parameters {} for map '{}'").format(params, name))


@register_map('identity')
def identity_map() -> MapSpec:
    return MapSpec('identity', lambda u: u, lambda p: BoxRegion(p.a.copy(), p.b.copy()))


@register_map('constant')
def constant_map(c: int = 0) -> MapSpec:
    return MapSpec(
        'constant',
        lambda u: np.full_like(u, c),
        lambda p: BoxRegion(np.full_like(p.a, c), np.full_like(p.b, c)),
        {'c': c})


@register_map('involution')
def involution_map(N: int) -> MapSpec:
    return MapSpec('involution', lambda u: N - u, lambda p: BoxRegion(N - p.b, N - p.a), {'N': N})


@register_map('shift')
def shift_map(c: int = 1) -> MapSpec:
    return MapSpec('shift', lambda u: u + c, lambda p: BoxRegion(p.a + c, p.b + c), {'c': c})


@register_map('tent')
def tent_map(N: int) -> MapSpec:
    """
    T(u) = min(2u, 2(N - u)) on [0, N]
    """
    def tent(u):
        return np.minimum(2 * u, 2 * (N - u))

    def bound(p: BoxRegion) -> BoxRegion:
        # Concave: minimum at an end point, maximum at an end point or at the peak
        ends = np.stack([tent(p.a), tent(p.b)])
        peaks = [np.where((p.a <= k) & (k <= p.b), tent(np.full_like(p.a, k)), ends.min(axis=0))
                 for k in (N // 2, (N + 1) // 2)]
        return BoxRegion(ends.min(axis=0), np.max(np.stack([ends.max(axis=0)] + peaks), axis=0))

    return MapSpec('tent', tent, bound, {'N': N})


def state_count(p: BoxRegion, mnat: Optional[int] = None) -> int:
    """
    Number of states in a box, saturated at mnat when given
    """
    count = reduce(lambda acc, width: acc * int(width), (p.b - p.a + 1).flatten(), 1)
    if mnat is not None and count > mnat:
        logger.warning('state count of %s saturated at mnat=%d', p, mnat)
        return mnat
    return count


def box_states(p: BoxRegion) -> np.ndarray:
    """
    Stack of every state of p, shape (count, *p.shape)
    """
    ranges = [np.arange(lo, hi + 1) for lo, hi in zip(p.a.flat, p.b.flat)]
    grids = np.meshgrid(*ranges, indexing='ij')
    return np.stack([g.ravel() for g in grids], axis=-1).reshape((-1,) + p.shape)


class DiscreteDynamics(PecrService):
    """
    Orbits u[t+1] = f[u[t]] on integer arrays bounded by mnat
    """

    def __init__(self, f: MapSpec, mnat: Optional[int] = None):
        self.f = f
        self.mnat = mnat if mnat is not None else settings.PECR_MACH[2]

    def step(self, u: np.ndarray) -> np.ndarray:
        v = as_state(self.f(u))
        if v.shape != u.shape:
            raise ExecutionError(_("{} changed the dimension {} to {}").format(self.f.name, u.shape, v.shape))
        if (v < 0).any() or (v > self.mnat).any():
            raise ExecutionError(_("{}: state {} escapes [0 {}]").format(self.f.name, v.tolist(), self.mnat))
        return v

    def iterate(self, u: np.ndarray, n: int, snapshot_every: Optional[int] = None) -> IterationTrace:
        """
        n-fold application of the map
        :param u: initial state
        :param n: number of steps, 0 returns u
        :param snapshot_every: keep the state every k steps, and the final one
        """
        if n < 0:
            raise DynamicsError(_("Negative iteration count {}").format(n))
        u = as_state(u)
        trace = IterationTrace(u)
        if snapshot_every:
            trace.snapshots.append((0, u))
        for t in range(1, n + 1):
            u = self.step(u)
            if snapshot_every and (t % snapshot_every == 0 or t == n):
                trace.snapshots.append((t, u))
        trace.final, trace.steps = u, n
        return trace

    def _check_box(self, p: BoxRegion):
        if not p.is_valid or not p.within_machine(self.mnat):
            raise DynamicsError(_("{} is not a box within [0 {}]").format(p, self.mnat))

    def bound_range(self, p: BoxRegion) -> BoxRegion:
        """
        Box containing f(u) for every u in p
        """
        self._check_box(p)
        if state_count(p) <= settings.PECR_EXACT_BOUND_LIMIT:
            states = box_states(p)
            if self.f.vectorised:
                images = self.f(states)
            else:
                images = np.stack([self.f(state) for state in states])
            q = BoxRegion(images.min(axis=0), images.max(axis=0))
            self.logger.debug('%s: exact range of %s over %d states is %s', self.f, p, len(states), q)
            return q
        if self.f.bounder is None:
            raise DynamicsError(_("Map {} declares no range bounder").format(self.f.name))
        return self.f.bounder(p)

    def certify_axc(self, p: BoxRegion) -> AxcCertificate:
        q = self.bound_range(p)
        if q.inside(p):
            self.logger.info('%s: axc certified on %s', self.f, p)
            return AxcCertificate(self.f.name, p, q, True)
        return AxcCertificate(self.f.name, p, q, False, _("range {} is not inside {}").format(q, p))

    def detect_cycle(self, u0: np.ndarray, limit: int) -> Optional[CycleReport]:
        """
        Entry time and minimal period of the orbit of u0
        :param limit: number of steps searched
        :return: None when no repetition shows up within limit steps
        """
        memory = settings.PECR_CYCLE_MEMORY
        seen: Dict[bytes, int] = {}
        u = as_state(u0)
        for t in range(limit + 1):
            key = u.tobytes()
            if key in seen:
                return CycleReport(seen[key], t - seen[key], u)
            if len(seen) >= memory:
                self.logger.info('%s: %d states hashed, continuing with Brent', self.f, memory)
                return self._brent(as_state(u0), limit)
            seen[key] = t
            if t == limit:
                break
            u = self.step(u)
        return None

    def _brent(self, u0: np.ndarray, limit: int) -> Optional[CycleReport]:
        if limit < 1:
            return None
        power = period = 1
        tortoise, hare = u0, self.step(u0)
        steps = 1
        while not np.array_equal(tortoise, hare):
            if steps >= limit:
                return None
            if power == period:
                tortoise, power, period = hare, power * 2, 0
            hare = self.step(hare)
            period += 1
            steps += 1
        tortoise = hare = u0
        for _step in range(period):
            hare = self.step(hare)
        entry = 0
        while not np.array_equal(tortoise, hare):
            tortoise, hare = self.step(tortoise), self.step(hare)
            entry += 1
        return CycleReport(entry, period, tortoise)
