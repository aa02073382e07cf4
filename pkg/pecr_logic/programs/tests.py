import random

from pecr_logic.common.services import CapacityError, PecrParseError, ProgramStructureError
from pecr_logic.common.tests import CommonTest
from pecr_logic.programs.models import LabelKind, LabelTable, MachineParams, ProgramList
from pecr_logic.programs.serializers import (
    BindingProfileSerializer, MachineParamsSerializer, ValidationReportSerializer,
)
from pecr_logic.programs.services import (
    ProgramValidator, cap_lists, chain, concat_lists, minus_lists, sublist_check, unique_list,
)


class LabelTest(CommonTest):
    """
    Test label ids
    """

    def test_100_variable_ids(self):
        """
        a..z are 1..26, then a1 continues at 27
        """
        labels = LabelTable(nvar=260)
        self.assertEqual(labels.intern('a').id, 1)
        self.assertEqual(labels.intern('z').id, 26)
        self.assertEqual(labels.intern('a1').id, 27)
        self.assertEqual(labels.intern('z9').id, 260)
        self.assertEqual(labels.label(28).text, 'b1')

    def test_101_constant_ids(self):
        """
        The m-th constant of nat has id nvar+m
        """
        labels = self.nat.sig.labels
        self.assertEqual(labels.intern('0').id, 261)
        self.assertEqual(labels.intern('mnat').id, 263)
        self.assertEqual(labels.label(262).kind, LabelKind.CONSTANT)

    def test_102_invalid_labels(self):
        """
        Test malformed and out of range labels
        """
        labels = LabelTable(nvar=260)
        with self.assertRaises(PecrParseError):
            labels.intern('Foo')
        with self.assertRaises(CapacityError):
            labels.intern('a10')
        with self.assertRaises(ProgramStructureError):
            labels.label(300)


class ListAlgebraTest(CommonTest):
    """
    Test list operations on seeded random lists
    """

    def setUp(self) -> None:
        self.rng = random.Random(1234)

    def random_list(self):
        return [self.rng.randint(1, 6) for _i in range(self.rng.randint(0, 6))]

    def test_100_concat(self):
        """
        Scalars concatenate as singletons and capacity is enforced
        """
        self.assertEqual(concat_lists(1, [2, 3]), [1, 2, 3])
        self.assertEqual(chain([1], 2, [3, 4]), [1, 2, 3, 4])
        with self.assertRaises(CapacityError):
            concat_lists([1, 2], [3], capacity=2)

    def test_101_minus_cap_unique_laws(self):
        """
        minus and cap partition u, minus only sees the common part, unique is idempotent
        """
        for _case in range(2000):
            u, v = self.random_list(), self.random_list()
            self.assertEqual(minus_lists(u, []), u)
            self.assertEqual(minus_lists(u, u), [])
            self.assertEqual(cap_lists(u, u), unique_list(u))
            self.assertEqual(unique_list(unique_list(u)), unique_list(u))
            self.assertEqual(set(minus_lists(u, v)) | set(cap_lists(u, v)), set(u))
            self.assertFalse(set(minus_lists(u, v)) & set(v))
            self.assertEqual(minus_lists(u, v), minus_lists(u, cap_lists(u, v)))

    def test_102_sublist_flags(self):
        """
        equivlst is mutual sublst, eqlst implies equivlst
        """
        self.assertEqual(tuple(sublist_check([1, 2], [2, 1, 3])), (True, False, False))
        self.assertEqual(tuple(sublist_check([1, 2, 2], [2, 1])), (True, True, False))
        for _case in range(2000):
            u, v = self.random_list(), self.random_list()
            flags = sublist_check(u, v)
            self.assertEqual(flags.equivlst, flags.sublst and sublist_check(v, u).sublst)
            if flags.eqlst:
                self.assertTrue(flags.equivlst)


class ValidatorTest(CommonTest):
    """
    Test the I/O dependency conditions
    """

    def program(self, *lines):
        return ProgramList(tuple(self.statement(line) for line in lines))

    def conditions(self, *lines):
        return ProgramValidator(self.nat.sig).validate_program_list(self.program(*lines)).conditions()

    def test_100_valid(self):
        """
        Test a valid program
        """
        self.assertEqual(self.conditions('lbx [p] [a]', 'lea [a v] []'), [])

    def test_101_arity(self):
        self.assertIn('arity', self.conditions('lt [a] []'))

    def test_102_io_domain(self):
        self.assertIn('io-domain', self.conditions('lbx [p] [0]'))

    def test_103_io_disjoint(self):
        self.assertIn('io-disjoint', self.conditions('lbx [p] [p]'))

    def test_104_output_unique(self):
        self.assertIn('output-unique', self.conditions('lubx [q] [a a]'))

    def test_105_outputs_distinct(self):
        self.assertEqual(self.conditions('lbx [p] [a]', 'ubx [p] [a]'), ['outputs-distinct'])
        report = ProgramValidator(self.nat.sig).validate_program_list(self.program('lbx [p] [a]', 'ubx [p] [a]'))
        data = ValidationReportSerializer(report).data
        self.assertFalse(data['ok'])
        self.assertEqual(data['violations'][0]['item'], 2)
        self.assertEqual(data['violations'][0]['condition'], 'outputs-distinct')

    def test_106_input_before_output(self):
        """
        An input may not equal the output of a later item
        """
        self.assertEqual(self.conditions('lea [a v] []', 'lbx [p] [a]'), ['input-before-output'])

    def test_107_known_program(self):
        self.assertEqual(self.conditions('foo [a] []'), ['known-program'])

    def test_108_capacity(self):
        """
        Programs longer than npmax raise
        """
        sig = self.loader.pack('nat').sig
        validator = ProgramValidator(sig)
        program = self.program(*['typen [a] []'] * (sig.mach.npmax + 1))
        with self.assertRaises(CapacityError):
            validator.validate_program_list(program)

    def test_109_binding_profile(self):
        """
        Test inp, outp, lio, pil, free and pol of a program with a constant
        """
        profile = self.program('lbx [p] [a]', 'lea [a v] []', 'le [0 n] []', 'box [a v] [q]').profile()
        data = BindingProfileSerializer(profile).data
        self.assertEqual(data['inp'], ['p', 'a', 'v', '0', 'n', 'a', 'v'])
        self.assertEqual(data['outp'], ['a', 'q'])
        self.assertEqual(data['lio'], ['p', 'a', 'v', '0', 'n', 'q'])
        self.assertEqual(data['pil'], ['p', 'v', '0', 'n'])
        self.assertEqual(data['free'], ['p', 'v', 'n'])
        self.assertEqual(data['pol'], ['q'])


class MachineParamsTest(CommonTest):
    """
    Test machine parameter validation
    """

    def test_100_flags(self):
        """
        Test --mach and --mlst overrides
        """
        serializer = MachineParamsSerializer.from_flags('128,4096,1000', '4,8,3,2')
        self.assertTrue(serializer.is_valid())
        params = serializer.save()
        self.assertEqual(params.mnat, 1000)
        self.assertEqual(params.mlst, (4, 8, 3, 2))

    def test_101_nprem_above_npmax(self):
        serializer = MachineParamsSerializer.from_flags('', '9,4,3,1')
        self.assertFalse(serializer.is_valid())

    def test_102_non_positive(self):
        serializer = MachineParamsSerializer.from_flags('0,4096,10', '')
        self.assertFalse(serializer.is_valid())
        with self.assertRaises(ProgramStructureError):
            MachineParams(1, 1, 1, 1, 1, 0, 1)

    def test_103_defaults(self):
        """
        Defaults come from settings
        """
        self.assertEqual(MachineParams.default().mlst, (9, 64, 3, 1))
