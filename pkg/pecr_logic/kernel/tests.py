from pecr_logic.common.services import CapacityError, RuleApplicationError
from pecr_logic.common.tests import CommonTest
from pecr_logic.kernel.models import FreshLabelAllocator, Iep, IepStore, Provenance
from pecr_logic.kernel.services import Kernel
from pecr_logic.programs.models import CNJ, DSJ, ProgramList


class KernelTest(CommonTest):
    """
    Test rule matching, application and the schemas
    """

    def program(self, *lines, pack=None):
        return ProgramList(tuple(self.statement(line, pack or self.nat) for line in lines))

    def nat_kernel(self) -> Kernel:
        return Kernel(self.nat.sig, self.nat.fresh_store())

    def test_100_make_iep(self):
        """
        Test a well formed extension
        """
        iep = self.nat_kernel().make_iep('t', self.program('lt [a b] []'), self.statement('le [a b] []'),
                                         Provenance.THEOREM)
        self.assertEqual(iep.label, 't')
        self.assertEqual(len(iep.program), 2)

    def test_101_make_iep_unbound_input(self):
        """
        Conclusion inputs come from the premise or are constants
        """
        kernel = self.nat_kernel()
        with self.assertRaises(RuleApplicationError):
            kernel.make_iep('t', self.program('lt [a b] []'), self.statement('le [a c] []'), Provenance.THEOREM)
        kernel.make_iep('t', self.program('lt [a b] []'), self.statement('le [0 b] []'), Provenance.THEOREM)

    def test_102_make_iep_capacity(self):
        kernel = self.nat_kernel()
        premise = self.program(*['typen [a] []'] * (self.nat.sig.mach.nprem + 1))
        with self.assertRaises(CapacityError):
            kernel.make_iep('t', premise, self.statement('eqn [a a] []'), Provenance.THEOREM)

    def test_103_match_repeated_line(self):
        """
        cr4b matches line 2 twice in the proof of pecr thm1
        """
        kernel = Kernel(self.pecr.sig, self.pecr.fresh_store())
        proof = self.program('typep [a] []', 'sub [a a] []', pack=self.pecr)
        matches = kernel.match_premise(proof, self.pecr.store.get('cr4b'))
        self.assertEqual([m.clist for m in matches], [(2, 2)])
        self.assertEqual(str(matches[0].subst), '{p->a, q->a}')

    def test_104_match_with_constant(self):
        """
        per binds its q to the constant ep
        """
        kernel = Kernel(self.pecr.sig, self.pecr.fresh_store())
        proof = self.program('ext [ep c] []', 'conc [p c] [s]', 'typep [p] []', 'sub [ep p] []', pack=self.pecr)
        matches = kernel.match_premise(proof, self.pecr.store.get('per'))
        self.assertEqual([m.clist for m in matches], [(1, 4, 2)])
        q = self.pecr.sig.labels.intern('q')
        self.assertEqual(str(matches[0].subst[q]), 'ep')

    def test_105_empty_premise(self):
        """
        ord2a applies with an empty connection list
        """
        kernel = self.nat_kernel()
        iep = self.nat.store.get('ord2a')
        matches = kernel.match_premise(self.program('typen [a] []'), iep)
        self.assertEqual([m.clist for m in matches], [()])
        alloc = FreshLabelAllocator(self.nat.sig.labels)
        self.assertEqual(str(kernel.apply_iep(ProgramList(), iep, matches[0], alloc)), 'lt [0 1] []')

    def test_106_frontier_and_limit(self):
        kernel = self.nat_kernel()
        proof = self.program('lt [a b] []', 'lt [b c] []', 'lt [c d] []')
        iep = self.nat.store.get('ord1')
        self.assertEqual([m.clist for m in kernel.match_premise(proof, iep)], [(1, 2), (2, 3)])
        self.assertEqual([m.clist for m in kernel.match_premise(proof, iep, frontier=2)], [(2, 3)])
        self.assertEqual(len(kernel.match_premise(proof, iep, limit=1)), 1)

    def test_107_apply_with_fresh_outputs(self):
        """
        Fresh outputs take the smallest unused variable id
        """
        kernel = self.nat_kernel()
        proof = self.program('typebx [p] []')
        iep = self.nat.store.get('bx2a')
        alloc = FreshLabelAllocator(self.nat.sig.labels)
        alloc.reserve_program(proof)
        statement = kernel.apply_iep(proof, iep, kernel.match_premise(proof, iep)[0], alloc)
        self.assertEqual(str(statement), 'lbx [p] [a]')
        self.assertEqual(alloc.allocate().text, 'b')

    def test_108_iot(self):
        kernel = self.nat_kernel()
        instances = kernel.iot_instances(self.statement('lbx [p] [a]'))
        self.assertEqual([str(i) for i in instances], ['typebx [p] []', 'typea [a] []'])

    def test_109_substitution(self):
        """
        sr1 rewrites lbx under eqbx, sr2 equates the outputs
        """
        kernel = self.nat_kernel()
        original, equality = self.statement('lbx [p] [c]'), self.statement('eqbx [p p] []')
        candidates = kernel.substitution_candidates(self.statement('lbx [p] [a]'), equality)
        self.assertEqual([(tuple(map(str, x)), kind) for x, kind in candidates], [(('p',), 'equality')])
        instances = kernel.sr2_instances(original, equality, self.statement('lbx [p] [a]'))
        self.assertEqual([str(i) for i in instances], ['eqa [a c] []'])
        equality = self.statement('eqbx [p q] []')
        self.assertEqual(str(kernel.substitution_instance(original, equality)), 'lbx [q] [c]')
        sr2 = kernel.substitution_instance(original, equality, self.statement('lbx [q] [d]'))
        self.assertEqual(str(sr2), 'eqa [d c] []')

    def test_110_substitution_refused(self):
        """
        ext admits no substitution and unrelated equalities do not apply
        """
        kernel = Kernel(self.pecr.sig, self.pecr.fresh_store())
        with self.assertRaises(RuleApplicationError):
            kernel.substitution_candidates(self.statement('ext [p c] []', self.pecr),
                                           self.statement('equiv [p q] []', self.pecr))
        with self.assertRaises(RuleApplicationError):
            self.nat_kernel().substitution_candidates(self.statement('lt [a b] []'), self.statement('eqn [c d] []'))

    def test_111_application_programs(self):
        """
        le is a disjunction and lubx a conjunction of the nat application
        """
        le = self.nat.sig.program('le')
        self.assertEqual(le.subtype, DSJ)
        self.assertEqual(len(le.operands), 2)
        lubx = self.nat.sig.program('lubx')
        self.assertEqual(lubx.subtype, CNJ)
        self.assertEqual(lubx.outputs, ('arr', 'arr'))
        trich = self.nat.sig.program('trich')
        self.assertEqual(str(trich.statement), 'trich [a b] []')

    def test_112_build_disjunction_mismatch(self):
        kernel = self.nat_kernel()
        with self.assertRaises(RuleApplicationError):
            kernel.build_disjunction(self.program('lt [a b] []'), self.program('typen [a] []'), 'bad')

    def test_113_reducing_sublists(self):
        """
        A premise line not needed for the conclusion makes the rule reducible
        """
        kernel = self.nat_kernel()
        iep = Iep('t', self.program('lt [a b] []', 'typen [c] []'), self.statement('le [a b] []'),
                  Provenance.THEOREM)
        self.assertIn((1,), kernel.reducing_sublists(iep))
        self.assertEqual(kernel.reducing_sublists(self.nat.store.get('ord1')), [])

    def test_114_sr2_missing_outputs(self):
        """
        sr2 needs every output of the original statement
        """
        with self.assertRaises(RuleApplicationError):
            self.nat_kernel().sr2_instances(self.statement('lbx [p] []'), self.statement('eqbx [p q] []'),
                                            self.statement('lbx [q] []'))


class StoreTest(CommonTest):
    """
    Test the rule store
    """

    def test_100_duplicates(self):
        store = self.nat.fresh_store()
        with self.assertRaises(RuleApplicationError):
            store.add(store.get('ord1'))
        with self.assertRaises(RuleApplicationError):
            store.add(Iep('sr1', ProgramList(), self.statement('lt [0 1] []')))

    def test_101_copy(self):
        """
        Copies are independent and keep insertion order
        """
        store = self.nat.fresh_store()
        copy = store.copy()
        copy.add(Iep('extra', ProgramList(), self.statement('lt [0 1] []'), Provenance.THEOREM))
        self.assertNotIn('extra', store)
        self.assertEqual(copy.labels[:len(store)], store.labels)
        self.assertEqual([iep.label for iep in copy.theorems()], ['extra'])

    def test_102_allocator(self):
        labels = self.nat.sig.labels
        alloc = FreshLabelAllocator(labels, [labels.intern('a'), labels.intern('c'), labels.intern('0')])
        self.assertEqual(alloc.allocate().text, 'b')
        self.assertEqual(alloc.allocate().text, 'd')
        self.assertEqual(IepStore().labels, [])
