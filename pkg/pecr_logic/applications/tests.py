import numpy as np

from pecr_logic.applications.models import Application, ExecutionStatus, ValueAssignment, render_value
from pecr_logic.applications.services import Evaluator, SoundnessProbe, ValueAssignmentParser
from pecr_logic.common.services import ApplicationError, ExecutionError, PecrParseError
from pecr_logic.common.tests import CommonTest
from pecr_logic.dynsys.models import BoxRegion
from pecr_logic.dynsys.services import tent_map
from pecr_logic.kernel.models import Iep, Provenance
from pecr_logic.programs.models import ProgramList
from pecr_logic.proofs.services import parse_program


class EvaluatorTest(CommonTest):
    """
    Test zero-order execution of the shipped sample programs
    """

    def run_sample(self, pack, name: str, **kwargs):
        program = parse_program(self.loader.read(pack.name, '{}.prog'.format(name)), pack.sig)
        va = ValueAssignmentParser(pack.sig).parse(self.loader.read(pack.name, '{}.va'.format(name)), program)
        return Evaluator(pack.sig, **kwargs).execute(program, va)

    def nat_va(self, **values) -> ValueAssignment:
        return ValueAssignment((self.nat.sig.labels.intern(k), v) for k, v in values.items())

    def test_100_lt(self):
        """
        lt [a b], le [b c] with a=2, b=c=5
        """
        outcome = self.run_sample(self.nat, 'lt')
        self.assertTrue(outcome.computable)
        self.assertEqual(len(outcome.outputs), 0)
        # le runs lt [5 5] before eqn [5 5]
        self.assertEqual(outcome.steps, 4)

    def test_101_box(self):
        """
        box [a b] [p] builds the box, ubx [p] [v] reads its upper bound
        """
        outcome = self.run_sample(self.nat, 'box')
        self.assertTrue(outcome.computable)
        outputs = {str(label): value for label, value in outcome.outputs.items()}
        # p feeds eltbx and ubx, so v is the only primary output
        self.assertEqual(list(outputs), ['v'])
        self.assertEqual(outputs['v'].tolist(), [3, 3])
        self.assertEqual(render_value(BoxRegion([0, 0], [3, 3])), '[[0 0] [3 3]]')

    def test_102_orbit(self):
        """
        Four tent steps from 3 with N=8 end at 0
        """
        outcome = self.run_sample(self.nat, 'orbit', f=tent_map(8))
        self.assertTrue(outcome.computable)
        outputs = {str(label): value for label, value in outcome.outputs.items()}
        self.assertEqual(list(outputs), ['v'])
        self.assertEqual(outputs['v'].tolist(), [0])

    def test_103_program_values(self):
        """
        sub and conc on program values
        """
        outcome = self.run_sample(self.pecr, 'sub')
        self.assertTrue(outcome.computable)
        r = next(value for label, value in outcome.outputs.items() if str(label) == 'r')
        self.assertIsInstance(r, ProgramList)
        self.assertEqual(len(r), 3)
        self.assertEqual(str(r[2]), 'eqn [b c] []')

    def test_104_execution_error(self):
        """
        A false item stops the run at that item
        """
        program = parse_program('lt [a b] []\nlt [b c] []\n', self.nat.sig)
        outcome = Evaluator(self.nat.sig).execute(program, self.nat_va(a=1, b=4, c=2))
        self.assertEqual(outcome.status, ExecutionStatus.EXECUTION_ERROR)
        self.assertEqual(outcome.failed_item, 2)
        self.assertIn('lt fails', outcome.cause)

    def test_105_budget(self):
        """
        itf charges one step per iteration
        """
        outcome = self.run_sample(self.nat, 'orbit', f=tent_map(8), budget=3)
        self.assertEqual(outcome.status, ExecutionStatus.BUDGET_EXHAUSTED)
        self.assertEqual(outcome.failed_item, 1)

    def test_106_bindings(self):
        """
        Value assignments cover exactly the free inputs
        """
        program = parse_program('lt [a b] []\n', self.nat.sig)
        with self.assertRaises(ExecutionError):
            Evaluator(self.nat.sig).execute(program, self.nat_va(a=1))
        with self.assertRaises(ExecutionError):
            Evaluator(self.nat.sig).execute(program, self.nat_va(a=1, b=2, c=3))

    def test_107_disjunction(self):
        """
        le runs lt, then eqn
        """
        program = parse_program('le [a b] []\n', self.nat.sig)
        evaluator = Evaluator(self.nat.sig)
        self.assertTrue(evaluator.execute(program, self.nat_va(a=1, b=2)).computable)
        self.assertTrue(evaluator.execute(program, self.nat_va(a=2, b=2)).computable)
        outcome = evaluator.execute(program, self.nat_va(a=3, b=2))
        self.assertFalse(outcome.computable)
        self.assertIn('no operand of le', outcome.cause)

    def test_108_trichotomy(self):
        program = parse_program('trich [a b] []\n', self.nat.sig)
        evaluator = Evaluator(self.nat.sig)
        for a in range(4):
            for b in range(4):
                self.assertTrue(evaluator.execute(program, self.nat_va(a=a, b=b)).computable)

    def test_109_false_program(self):
        """
        ord3 never computes
        """
        program = self.nat.sig.false_programs['ord3']
        evaluator = Evaluator(self.nat.sig)
        for a in range(5):
            self.assertFalse(evaluator.execute(program, self.nat_va(a=a)).computable)

    def test_110_zero_iterations(self):
        program = parse_program('itf [u n] [v]\n', self.nat.sig)
        outcome = Evaluator(self.nat.sig, f=tent_map(8)).execute(program, self.nat_va(u=np.array([5]), n=0))
        self.assertTrue(outcome.computable)
        self.assertEqual(list(outcome.outputs.values())[0].tolist(), [5])

    def test_111_escape(self):
        """
        Outside [0 N] the tent map goes negative
        """
        program = parse_program('f [u] [v]\n', self.nat.sig)
        outcome = Evaluator(self.nat.sig, f=tent_map(8)).execute(program, self.nat_va(u=np.array([9])))
        self.assertEqual(outcome.status, ExecutionStatus.EXECUTION_ERROR)

    def test_112_not_executable(self):
        program = parse_program('ext [p c] []\n', self.pecr.sig)
        with self.assertRaises(ExecutionError):
            Evaluator(self.pecr.sig).require_executable(program)

    def test_113_value_syntax(self):
        program = parse_program('box [a b] [p]\nlt [n m] []\n', self.nat.sig)
        parser = ValueAssignmentParser(self.nat.sig)
        va = parser.parse('a = [1 2]\nb = [[3] [4]]\nn = mnat\n', program)
        self.assertEqual(va[self.nat.sig.labels.intern('n')], self.nat.sig.mach.mnat)
        for text in ('a 2', 'z = 1', 'n = [1]', 'a = [1 2'):
            with self.assertRaises(PecrParseError, msg=text):
                parser.parse(text, program)

    def test_114_facade(self):
        self.assertEqual(Application.builtin('nat').name, 'nat')
        self.assertEqual(set(Application.register_builtin_apps()), {'pecr', 'nat'})
        with self.assertRaises(ApplicationError):
            Application.builtin('group')
        program = parse_program(self.loader.read('nat', 'lt.prog'), self.nat.sig)
        va = ValueAssignment.parse(self.loader.read('nat', 'lt.va'), self.nat.sig, program)
        self.assertTrue(Application.execute(self.nat, program, va).computable)
        outcome = Application.execute(self.nat, program, va, budget=1)
        self.assertIs(outcome.status, ExecutionStatus.BUDGET_EXHAUSTED)
        statistics = Application.probe(self.nat, 'ord1', trials=50, seed=2)
        self.assertEqual((statistics.trials, statistics.violations), (50, 0))
        # Corpus theorems are found after checking their proofs
        statistics = Application.probe(self.nat, 'thm1', trials=50, seed=1)
        self.assertEqual((statistics.trials, statistics.violations), (50, 0))
        with self.assertRaises(ApplicationError):
            Application.probe(self.nat, 'thm99')


class SoundnessProbeTest(CommonTest):
    """
    Test that no random assignment separates premise and conclusion of the nat rules
    """
    probed_axioms = ['ord1', 'ord2b', 'le1', 'le2', 'axa2', 'axa3a', 'axa3b', 'axa3c', 'axa3d',
                     'bx2c', 'bx3a', 'bx3b', 'bx3c', 'bx4a', 'bx4b', 'bx4c', 'bx5a', 'btwa1', 'btwa2a']

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.store = cls.loader.checked_store('nat')

    def test_100_axioms(self):
        probe = SoundnessProbe(self.nat.sig)
        for label in self.probed_axioms:
            with self.subTest(rule=label):
                statistics = probe.probe(self.store.get(label), trials=200, seed=11)
                self.assertEqual(statistics.trials, 200)
                self.assertEqual(statistics.violations, 0, msg=str(statistics))
                self.assertEqual(statistics.premise_ok, statistics.both_ok)

    def test_101_theorems(self):
        """
        Corpus theorems hold on random boxes
        """
        probe = SoundnessProbe(self.nat.sig)
        for i in range(1, 7):
            label = 'thm{}'.format(i)
            with self.subTest(rule=label):
                statistics = probe.probe(self.store.get(label), trials=200, seed=i)
                self.assertEqual(statistics.violations, 0, msg=str(statistics))
                self.assertGreater(statistics.premise_ok, 0)

    def test_102_exhaustive(self):
        """
        Exhaustive enumeration of a, b, c in 0..10 for ord1
        """
        statistics = SoundnessProbe(self.nat.sig).probe(self.store.get('ord1'), trials=0, exhaustive_bound=10)
        self.assertEqual(statistics.trials, 11 ** 3)
        # a < b < c
        self.assertEqual(statistics.premise_ok, 165)
        self.assertEqual(statistics.violations, 0)

    def test_103_unsound_rule(self):
        """
        lt [a b] does not give lt [b a]
        """
        iep = Iep('swap', ProgramList.of(self.statement('lt [a b] []')), self.statement('lt [b a] []'),
                  Provenance.THEOREM)
        statistics = SoundnessProbe(self.nat.sig).probe(iep, trials=50, seed=3, exhaustive_bound=3)
        self.assertGreater(statistics.violations, 0)
        self.assertEqual(statistics.violations, statistics.premise_ok)
        self.assertTrue(statistics.counterexamples)

    def test_104_tent_orbit_rules(self):
        """
        itf rules under the tent map with N=10
        """
        probe = SoundnessProbe(self.nat.sig, Evaluator(self.nat.sig, f=tent_map(10)))
        for label in ('itf1', 'itf2a', 'itf2c'):
            with self.subTest(rule=label):
                statistics = probe.probe(self.store.get(label), trials=100, seed=5)
                self.assertEqual(statistics.violations, 0, msg=str(statistics))
