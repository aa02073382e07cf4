import random

import numpy as np
from django.test import SimpleTestCase, override_settings

from pecr_logic.common.services import DynamicsError, ExecutionError
from pecr_logic.dynsys.models import BoxRegion
from pecr_logic.dynsys.serializers import AxcCertificateSerializer, BoxRegionSerializer, CycleReportSerializer
from pecr_logic.dynsys.services import (
    DiscreteDynamics, box_states, constant_map, get_map, involution_map, shift_map, state_count, tent_map,
)


def brute_force_cycle(f, u0: int, limit: int = 1000):
    """
    Entry time and period from the full orbit list
    """
    orbit = [u0]
    for _t in range(limit):
        u = int(f(np.array([orbit[-1]]))[0])
        if u in orbit:
            entry = orbit.index(u)
            return entry, len(orbit) - entry
        orbit.append(u)
    return None


class BoxTest(SimpleTestCase):
    """
    Test boxes of integer arrays
    """

    def test_100_membership(self):
        p = BoxRegion([0, 0], [3, 3])
        self.assertTrue(p.contains(np.array([1, 2])))
        self.assertFalse(p.contains(np.array([1, 4])))
        self.assertFalse(p.contains(np.array([1])))
        self.assertTrue(BoxRegion([1, 1], [2, 3]).inside(p))
        self.assertFalse(p.inside(BoxRegion([1, 1], [2, 3])))

    def test_101_shape_mismatch(self):
        with self.assertRaises(DynamicsError):
            BoxRegion([0], [1, 2])

    def test_102_state_count(self):
        """
        Product of the side widths, saturated at mnat
        """
        self.assertEqual(state_count(BoxRegion([0, 0], [3, 3])), 16)
        self.assertEqual(BoxRegion.interval(0, 8).state_count(), 9)
        self.assertEqual(state_count(BoxRegion([0, 0, 0], [99, 99, 99]), mnat=1000), 1000)
        self.assertEqual(len(box_states(BoxRegion([0, 0], [3, 3]))), 16)

    def test_103_serializer(self):
        serializer = BoxRegionSerializer(data={'a': [0, 1], 'b': [2, 3]})
        self.assertTrue(serializer.is_valid())
        self.assertEqual(serializer.validated_data['box'], BoxRegion([0, 1], [2, 3]))
        self.assertFalse(BoxRegionSerializer(data={'a': [3], 'b': [2]}).is_valid())
        self.assertEqual(BoxRegionSerializer(BoxRegion([0], [8])).data, {'a': [0], 'b': [8]})


class MapTest(SimpleTestCase):
    """
    Test registered maps and their range bounders
    """

    def test_100_registry(self):
        self.assertEqual(get_map('tent', N=8).params, {'N': 8})
        self.assertEqual(str(get_map('constant', c=3)), 'constant c=3')
        with self.assertRaises(DynamicsError):
            get_map('logistic')
        with self.assertRaises(DynamicsError):
            get_map('tent', M=3)

    def test_101_tent_values(self):
        f = tent_map(8)
        self.assertEqual(f(np.arange(9)).tolist(), [0, 2, 4, 6, 8, 6, 4, 2, 0])

    def test_102_bounders_contain_images(self):
        """
        Every image of a random box lies in the bounder's box
        """
        rng = random.Random(99)
        for f in (tent_map(64), involution_map(64), constant_map(7), shift_map(3)):
            for _trial in range(50):
                lower = [rng.randint(0, 60) for _i in range(2)]
                p = BoxRegion(lower, [lo + rng.randint(0, 4) for lo in lower])
                q = f.bounder(p)
                for u in box_states(p):
                    self.assertTrue(q.contains(f(u)), msg='{} {} {}'.format(f, p, u))

    @override_settings(PECR_EXACT_BOUND_LIMIT=0)
    def test_103_tent_bounder_exact_on_full_range(self):
        q = DiscreteDynamics(tent_map(8), 100).bound_range(BoxRegion.interval(0, 8))
        self.assertEqual(q, BoxRegion.interval(0, 8))


class DynamicsTest(SimpleTestCase):
    """
    Test iteration, axc certification and cycle detection
    """

    def test_100_tent_certified(self):
        """
        The tent map sends [0 N] into itself
        """
        for N in (8, 64, 1024):
            dynamics = DiscreteDynamics(tent_map(N), mnat=N)
            certificate = dynamics.certify_axc(BoxRegion.interval(0, N))
            self.assertTrue(certificate.certified, msg=str(certificate))
            self.assertTrue(certificate.q.inside(certificate.p))
            data = AxcCertificateSerializer(certificate).data
            self.assertTrue(data['certified'])
            self.assertEqual(data['p'], {'a': [0], 'b': [N]})

    def test_101_tent_long_orbits(self):
        """
        10^4 steps from random states stay in [0 N]
        """
        rng = random.Random(7)
        for N in (8, 64, 1024):
            dynamics = DiscreteDynamics(tent_map(N), mnat=N)
            for _trial in range(100):
                trace = dynamics.iterate(np.array([rng.randint(0, N)]), 10 ** 4)
                self.assertEqual(trace.steps, 10 ** 4)
                self.assertTrue(0 <= trace.final[0] <= N)

    def test_102_snapshots(self):
        trace = DiscreteDynamics(tent_map(8), 8).iterate(np.array([3]), 4, snapshot_every=2)
        self.assertEqual(trace.lines(), ['0 3', '2 4', '4 0'])
        self.assertEqual(DiscreteDynamics(tent_map(8), 8).iterate(np.array([3]), 0).final.tolist(), [3])
        with self.assertRaises(DynamicsError):
            DiscreteDynamics(tent_map(8), 8).iterate(np.array([3]), -1)

    def test_103_shift_refused(self):
        """
        shift leaves [0 N]: certification is refused and the orbit escapes
        """
        dynamics = DiscreteDynamics(shift_map(1), mnat=8)
        certificate = dynamics.certify_axc(BoxRegion.interval(0, 8))
        self.assertFalse(certificate.certified)
        self.assertEqual(certificate.q, BoxRegion.interval(1, 9))
        self.assertTrue(str(certificate).startswith('refused'))
        with self.assertRaises(ExecutionError):
            dynamics.iterate(np.array([5]), 10)

    def test_104_cycle_matches_orbit(self):
        """
        Hashing agrees with the full orbit list for every tent state with N=8
        """
        f = tent_map(8)
        dynamics = DiscreteDynamics(f, mnat=8)
        for u0 in range(9):
            report = dynamics.detect_cycle(np.array([u0]), state_count(BoxRegion.interval(0, 8)))
            self.assertEqual((report.tcyc, report.pcyc), brute_force_cycle(f, u0))

    @override_settings(PECR_CYCLE_MEMORY=2)
    def test_105_brent(self):
        """
        Brent's search gives the same entry time and period
        """
        for N in (8, 64):
            f = tent_map(N)
            dynamics = DiscreteDynamics(f, mnat=N)
            for u0 in range(0, N + 1, max(1, N // 16)):
                report = dynamics.detect_cycle(np.array([u0]), 10 * N)
                self.assertEqual((report.tcyc, report.pcyc), brute_force_cycle(f, u0))

    def test_106_periods(self):
        """
        Involution has period 2 off its centre, a constant map a fixed point
        """
        involution = DiscreteDynamics(involution_map(8), mnat=8)
        report = involution.detect_cycle(np.array([3]), 9)
        self.assertEqual((report.tcyc, report.pcyc), (0, 2))
        self.assertTrue(involution.detect_cycle(np.array([4]), 9).is_fixed_point)
        report = DiscreteDynamics(constant_map(5), mnat=8).detect_cycle(np.array([3]), 9)
        self.assertEqual((report.tcyc, report.pcyc), (1, 1))
        self.assertEqual(report.witness.tolist(), [5])
        data = CycleReportSerializer(report).data
        self.assertEqual(data['witness'], [5])
        self.assertTrue(data['is_fixed_point'])

    def test_107_cycle_consistency(self):
        """
        u[tcyc] = u[tcyc + pcyc] on two dimensional tent orbits
        """
        dynamics = DiscreteDynamics(tent_map(64), mnat=64)
        p = BoxRegion([0, 0], [64, 64])
        rng = random.Random(3)
        for _trial in range(20):
            u0 = np.array([rng.randint(0, 64), rng.randint(0, 64)])
            report = dynamics.detect_cycle(u0, state_count(p))
            self.assertIsNotNone(report)
            start = dynamics.iterate(u0, report.tcyc).final
            self.assertEqual(start.tolist(), report.witness.tolist())
            self.assertEqual(dynamics.iterate(u0, report.tcyc + report.pcyc).final.tolist(), start.tolist())

    def test_108_no_cycle_within_limit(self):
        self.assertIsNone(DiscreteDynamics(tent_map(1024), mnat=1024).detect_cycle(np.array([1]), 2))

    def test_110_no_step_past_limit(self):
        """
        5, 6, 7, 8 under shift stay in [0 8], the next state would not
        """
        dynamics = DiscreteDynamics(shift_map(1), mnat=8)
        self.assertIsNone(dynamics.detect_cycle(np.array([5]), 3))
        with override_settings(PECR_CYCLE_MEMORY=2):
            self.assertIsNone(dynamics.detect_cycle(np.array([5]), 3))
        with self.assertRaises(ExecutionError):
            dynamics.detect_cycle(np.array([5]), 4)

    def test_109_bound_range_contains_images(self):
        dynamics = DiscreteDynamics(tent_map(64), mnat=64)
        p = BoxRegion([10, 20], [30, 40])
        q = dynamics.bound_range(p)
        for u in box_states(p):
            self.assertTrue(q.contains(dynamics.step(u)))
        with self.assertRaises(DynamicsError):
            dynamics.bound_range(BoxRegion([0], [65]))
