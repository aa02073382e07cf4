import dataclasses

from pecr_logic.common.services import ApplicationError, PecrParseError
from pecr_logic.common.tests import CommonTest
from pecr_logic.matrices.models import matrix_from_text
from pecr_logic.proofs.models import Justification, ProofDocument, ProofLine
from pecr_logic.proofs.serializers import CheckVerdictSerializer, ReductionTraceSerializer
from pecr_logic.proofs.services import (
    ProofChecker, check_proofs, export_proof_matrix, load_rule_ids, parse_application, parse_proof,
    parse_proofs, parse_theorems, print_application, print_proof, print_theorem, reduce_connection_lists,
)

REDUNDANT_PROOF = """
theorem thm2
1 equiv [a b] []
2 typep [a] []                 iot [1]
3 typep [b] []                 iot [1]
4 equiv [a a] []               thm1 [2]
5 equiv [b a] []               sr1 [4 1]
"""

# nat thm2 as [i pn x1 x2 y1 atl clist1..clist6]
THM2_MATRIX = """
1 13 16 17 0 0 0 0 0 0 0 0
2 13 17 18 0 0 0 0 0 0 0 0
3 10 16 0 0 38 1 0 0 0 0 0
4 10 17 0 0 38 1 0 0 0 0 0
5 10 18 0 0 38 2 0 0 0 0 0
6 14 16 0 1 18 3 0 0 0 0 0
7 14 17 0 2 18 4 0 0 0 0 0
8 14 18 0 3 18 5 0 0 0 0 0
9 15 16 0 4 19 3 0 0 0 0 0
10 15 17 0 5 19 4 0 0 0 0 0
11 15 18 0 6 19 5 0 0 0 0 0
12 9 2 1 0 25 7 6 1 0 0 0
13 9 3 2 0 25 8 7 2 0 0 0
14 9 4 5 0 26 10 9 1 0 0 0
15 9 5 6 0 26 11 10 2 0 0 0
16 9 3 1 0 15 13 12 0 0 0 0
17 9 4 6 0 15 14 15 0 0 0 0
18 13 16 18 0 27 8 6 16 11 9 17
"""

THM2_TRACE = [
    [6, 8, 9, 11, 16, 17],
    [6, 8, 9, 11, 14, 15, 16],
    [6, 8, 9, 11, 12, 13, 14, 15],
    [2, 6, 8, 9, 10, 11, 12, 13, 14],
    [1, 2, 6, 8, 9, 10, 11, 12, 13],
    [1, 2, 6, 7, 8, 9, 10, 11, 12],
    [1, 2, 6, 7, 8, 9, 10, 11],
    [1, 2, 5, 6, 7, 8, 9, 10],
    [1, 2, 4, 5, 6, 7, 8, 9],
    [1, 2, 3, 4, 5, 6, 7, 8],
    [1, 2, 3, 4, 5, 6, 7],
    [1, 2, 3, 4, 5, 6],
    [1, 2, 3, 4, 5],
    [1, 2, 3, 4],
    [1, 2, 3],
    [1, 2],
]


def renumbered(label: str, lines) -> ProofDocument:
    """
    Document from (statement, justification) pairs, numbered from 1
    """
    return ProofDocument(label, [ProofLine(i, statement, justification)
                                 for i, (statement, justification) in enumerate(lines, start=1)])


def swap_clist_pair(document: ProofDocument):
    lines = [(line.statement, line.justification) for line in document.lines]
    for n, (statement, justification) in enumerate(lines):
        if justification is None:
            continue
        clist = list(justification.clist)
        distinct = [j for j in range(1, len(clist)) if clist[j] != clist[0]]
        if distinct:
            j = distinct[0]
            clist[0], clist[j] = clist[j], clist[0]
            lines[n] = (statement, Justification(justification.rule, tuple(clist)))
            return renumbered(document.label, lines)
    return None


def clash_output(document: ProofDocument, labels):
    """
    First derived output renamed to the first input of line 1; first derived input renamed otherwise
    """
    lines = [(line.statement, line.justification) for line in document.lines]
    first = document.lines[0].statement
    for n, (statement, justification) in enumerate(lines):
        if justification is not None and statement.y and first.x:
            lines[n] = (dataclasses.replace(statement, y=(first.x[0],) + statement.y[1:]), justification)
            return renumbered(document.label, lines)
    m = document.premise_count
    statement, justification = lines[m]
    lines[m] = (dataclasses.replace(statement, x=(labels.intern('z9'),) + statement.x[1:]), justification)
    return renumbered(document.label, lines)


def change_last_name(document: ProofDocument, sig):
    lines = [(line.statement, line.justification) for line in document.lines]
    statement, justification = lines[-1]
    other = next(name for name in sig.pname if name != statement.pn)
    lines[-1] = (dataclasses.replace(statement, pn=other), justification)
    return renumbered(document.label, lines)


def drop_first_premise(document: ProofDocument):
    lines = []
    for line in document.lines[1:]:
        justification = line.justification
        if justification is not None:
            justification = Justification(justification.rule, tuple(max(c - 1, 1) for c in justification.clist))
        lines.append((line.statement, justification))
    return renumbered(document.label, lines)


class CorpusTest(CommonTest):
    """
    Test the shipped theorem corpora
    """

    def test_100_pecr_corpus(self):
        """
        All 26 pecr proofs are accepted in file order
        """
        verdicts = check_proofs(self.pecr, self.pecr_theorems, self.pecr_proofs)
        self.assertEqual(len(verdicts), 26)
        for verdict in verdicts:
            self.assertTrue(verdict.accepted, msg=str(verdict))

    def test_101_nat_corpus(self):
        """
        All 6 nat proofs are accepted in file order
        """
        verdicts = check_proofs(self.nat, self.nat_theorems, self.nat_proofs)
        self.assertEqual([verdict.label for verdict in verdicts], ['thm{}'.format(i) for i in range(1, 7)])
        for verdict in verdicts:
            self.assertTrue(verdict.accepted, msg=str(verdict))
            self.assertEqual(verdict.status, 0)

    def _test_mutations(self, pack, theorems, documents):
        """
        Every mutation of every proof is rejected by a store holding the preceding theorems
        """
        statements = {theorem.label: theorem for theorem in theorems}
        store = pack.fresh_store()
        for document in documents:
            mutations = {
                'swap': swap_clist_pair(document),
                'clash': clash_output(document, pack.sig.labels),
                'name': change_last_name(document, pack.sig),
                'drop': drop_first_premise(document),
            }
            if pack.name == 'pecr' and document.label == 'thm1':
                mutations.pop('swap')
            for kind, mutated in mutations.items():
                with self.subTest(theorem=document.label, mutation=kind):
                    self.assertIsNotNone(mutated)
                    checker = ProofChecker(pack.sig, store.copy())
                    verdict = checker.check_proof(mutated, statements[document.label])
                    self.assertFalse(verdict.accepted)
                    self.assertEqual(verdict.status, 1)
            ProofChecker(pack.sig, store).check_proof(document, statements[document.label], commit=True)

    def test_102_pecr_mutations(self):
        self._test_mutations(self.pecr, self.pecr_theorems, self.pecr_proofs)

    def test_103_nat_mutations(self):
        self._test_mutations(self.nat, self.nat_theorems, self.nat_proofs)

    def test_104_rejected_line(self):
        """
        Changing the clist of line 12 of nat thm2 rejects that line
        """
        document = self.proof(self.nat_proofs, 'thm2')
        lines = [(line.statement, line.justification) for line in document.lines]
        lines[11] = (lines[11][0], Justification('bx4a', (7, 6, 2)))
        store = self.loader.checked_store('nat')
        verdict = ProofChecker(self.nat.sig, store.copy()).check_proof(
            renumbered('thm2', lines), self.theorem(self.nat_theorems, 'thm2'))
        self.assertFalse(verdict.accepted)
        self.assertEqual(verdict.failed_line, 12)
        data = CheckVerdictSerializer(verdict).data
        self.assertEqual(data['failed_line'], 12)
        self.assertEqual(data['status'], 1)

    def test_105_unknown_rule(self):
        document = parse_proof('1 typebx [p] []\n2 subbx [p p] []  nosuch [1]\n', self.nat.sig)
        verdict = ProofChecker(self.nat.sig, self.nat.fresh_store()).check_proof(document)
        self.assertFalse(verdict.accepted)
        self.assertIn('nosuch', verdict.reason)

    def test_106_premise_only(self):
        document = parse_proof('1 typebx [p] []\n', self.nat.sig)
        verdict = ProofChecker(self.nat.sig, self.nat.fresh_store()).check_proof(document)
        self.assertFalse(verdict.accepted)

    def test_107_commit(self):
        """
        Accepted proofs are stored as theorems only on commit
        """
        store = self.nat.fresh_store()
        checker = ProofChecker(self.nat.sig, store)
        document = self.proof(self.nat_proofs, 'thm1')
        theorem = self.theorem(self.nat_theorems, 'thm1')
        self.assertTrue(checker.check_proof(document, theorem).accepted)
        self.assertNotIn('thm1', store)
        self.assertTrue(checker.check_proof(document, theorem, commit=True).accepted)
        self.assertEqual(str(store.get('thm1').conclusion), 'subbx [p p] []')


class ProofMatrixTest(CommonTest):
    """
    Test proof matrix export and connection list reduction on nat thm2
    """

    def test_100_export(self):
        """
        18 rows of [i pn x y atl clist] with nx=2, ny=1 and six clist columns
        """
        rule_ids = load_rule_ids(self.loader.read('nat', 'nat.ruleids'))
        document = self.proof(self.nat_proofs, 'thm2')
        rows = export_proof_matrix(document, self.nat.sig, rule_ids, nx=2, ny=1, width=6)
        self.assertEqual(rows.shape, (18, 12))
        self.assertEqual(rows.tolist(), matrix_from_text(THM2_MATRIX).tolist())

    def test_101_export_missing_rule_id(self):
        document = self.proof(self.nat_proofs, 'thm2')
        with self.assertRaises(ApplicationError):
            export_proof_matrix(document, self.nat.sig, {'iot': 38})

    def test_102_reduction_trace(self):
        """
        16 connection lists from [6 8 9 11 16 17] down to the premise [1 2]
        """
        trace = reduce_connection_lists(self.proof(self.nat_proofs, 'thm2'))
        self.assertEqual(trace.steps, THM2_TRACE)
        self.assertEqual(trace.redundant_lines, [])
        self.assertEqual(trace.unused_premises, [])
        data = ReductionTraceSerializer(trace.as_dict()).data
        self.assertEqual(data['final'], [1, 2])

    def test_103_redundant_line(self):
        """
        A derived line outside the trace is reported and the proof is still accepted
        """
        store = self.pecr.fresh_store()
        check_proofs(self.pecr, self.pecr_theorems, [self.proof(self.pecr_proofs, 'thm1')], store)
        document = parse_proof(REDUNDANT_PROOF, self.pecr.sig)
        trace = document.reduce()
        self.assertEqual(trace.steps, [[1, 4], [1, 2], [1]])
        self.assertEqual(trace.redundant_lines, [3])
        verdict = ProofChecker(self.pecr.sig, store).check_proof(document, self.theorem(self.pecr_theorems, 'thm2'))
        self.assertTrue(verdict.accepted)
        self.assertEqual(len(verdict.warnings), 1)

    def test_104_corpus_traces_reach_premise(self):
        """
        Every corpus trace ends inside the premise and its largest line number keeps falling
        """
        for documents in (self.pecr_proofs, self.nat_proofs):
            for document in documents:
                trace = reduce_connection_lists(document)
                self.assertTrue(all(i <= document.premise_count for i in trace.final), msg=document.label)
                maxima = [max(step) for step in trace.steps if step]
                self.assertTrue(all(a > b for a, b in zip(maxima, maxima[1:])), msg=document.label)


class ParserTest(CommonTest):
    """
    Test file parsing and printing
    """

    def test_100_proof_round_trip(self):
        for pack, documents in ((self.pecr, self.pecr_proofs), (self.nat, self.nat_proofs)):
            text = ''.join(print_proof(document) for document in documents)
            self.assertEqual(parse_proofs(text, pack.sig), documents)

    def test_101_theorem_round_trip(self):
        text = '\n'.join(print_theorem(theorem) for theorem in self.nat_theorems)
        self.assertEqual(parse_theorems(text, self.nat.sig), self.nat_theorems)

    def test_102_application_round_trip(self):
        """
        A printed application parses back to the same programs and rules
        """
        for pack in (self.pecr, self.nat):
            again = parse_application(print_application(pack))
            self.assertEqual(again.sig.pname, pack.sig.pname)
            self.assertEqual(again.store.labels, pack.store.labels)
            self.assertEqual(again.sig.axiom_labels, pack.sig.axiom_labels)
            for iep in pack.store:
                self.assertEqual(again.store.get(iep.label).program, iep.program)

    def test_103_thm1_proof(self):
        document = self.proof(self.pecr_proofs, 'thm1')
        self.assertEqual(len(document), 3)
        self.assertEqual(document.premise_count, 1)
        self.assertEqual(document.clist(3), (2, 2))

    def test_104_forward_reference(self):
        text = '1 lt [a b] []\n2 lt [b c] []\n3 lt [c d] []\n4 lt [d e] []\n5 lt [a e] [] ord1 [9]\n'
        with self.assertRaisesRegex(PecrParseError, 'clist references line'):
            parse_proofs(text, self.nat.sig)

    def test_105_numbering(self):
        with self.assertRaises(PecrParseError):
            parse_proofs('1 lt [a b] []\n3 lt [b c] []\n', self.nat.sig)

    def test_106_premise_after_derived(self):
        text = '1 typen [a] []\n2 eqn [a a] [] axn1 [1]\n3 typen [b] []\n'
        with self.assertRaises(PecrParseError):
            parse_proofs(text, self.nat.sig)

    def test_107_unknown_program(self):
        with self.assertRaises(PecrParseError):
            parse_proofs('1 foo [a] []\n', self.nat.sig)
        with self.assertRaises(PecrParseError):
            parse_theorems('theorem t\nfoo [a] []\n-----\nlt [a a] []\n', self.nat.sig)

    def test_108_empty_proof(self):
        with self.assertRaises(PecrParseError):
            parse_proofs('theorem empty\n', self.nat.sig)

    def test_109_malformed_application(self):
        """
        Missing separator, unknown keyword and unclosed block
        """
        head = 'NAME t\nTYPES n\nPROGRAM g (n;) fatm subst\nPROGRAM h (n;) fatm subst\n'
        with self.assertRaises(ApplicationError):
            parse_application(head + 'AXIOM a1\ng [a] []\nEND\n')
        with self.assertRaises(ApplicationError):
            parse_application(head + 'BOGUS x\n')
        with self.assertRaises(ApplicationError):
            parse_application(head + 'AXIOM a1\ng [a] []\n-----\nh [a] []\n')
        pack = parse_application(head + 'AXIOM a1\ng [a] []\n-----\nh [a] []\nEND\n')
        self.assertEqual(pack.store.labels, ['a1'])

    def test_110_false_programs(self):
        """
        ord3 registers lt [a a] as a false program
        """
        self.assertEqual(str(self.nat.sig.false_programs['ord3']), 'lt [a a] []')
        self.assertNotIn('ord3', self.nat.store)
