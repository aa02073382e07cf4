import json
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from pecr_logic.cli.services import Prover, load_pack, preload_store
from pecr_logic.common.tests import CommonTest
from pecr_logic.proofs.services import ProofChecker, parse_proof, parse_theorems


def data(name: str, filename: str) -> str:
    return str(Path(settings.PECR_DATA_DIR) / name / filename)


class CommandTest(SimpleTestCase):
    """
    Base test case running the pecr_* management commands
    """

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, filename: str, text: str) -> str:
        path = Path(self.tmp.name) / filename
        path.write_text(text)
        return str(path)

    def call(self, *args) -> str:
        out = StringIO()
        call_command(*args, stdout=out)
        return out.getvalue()

    def call_error(self, *args):
        """
        :return: exit status and output of a failing command
        """
        out = StringIO()
        with self.assertRaises(CommandError) as e:
            call_command(*args, stdout=out)
        return e.exception.returncode, out.getvalue()


class CheckCommandTest(CommandTest):
    """
    Test pecr_check
    """

    def test_100_pecr_corpus(self):
        output = self.call('pecr_check', 'pecr', data('pecr', 'theorems.thm'), data('pecr', 'proofs.proof'))
        accepted = [line for line in output.splitlines() if line.endswith(': accepted')]
        self.assertEqual(len(accepted), 26)
        self.assertEqual(accepted[-1], 'thm26: accepted')

    def test_101_nat_corpus_json(self):
        output = self.call('pecr_check', 'nat', data('nat', 'theorems.thm'), data('nat', 'proofs.proof'), '--json')
        verdicts = json.loads(output)
        self.assertEqual([v['label'] for v in verdicts], ['thm{}'.format(i) for i in range(1, 7)])
        self.assertTrue(all(v['accepted'] for v in verdicts))

    def test_102_stop_after(self):
        output = self.call('pecr_check', 'nat', data('nat', 'theorems.thm'), data('nat', 'proofs.proof'),
                           '--theorem', 'thm2')
        self.assertEqual(output.split(), ['thm1:', 'accepted', 'thm2:', 'accepted'])

    def test_103_rejected(self):
        """
        A wrong line exits with status 1 and names the line
        """
        proof = self.write('bad.proof', 'theorem t\n1 lt [a b] []\n2 lt [b a] [] le1 [1]\n')
        status, output = self.call_error('pecr_check', 'nat', proof)
        self.assertEqual(status, 1)
        self.assertIn('t: rejected at line 2', output)

    def test_104_parse_error_json(self):
        """
        Parse errors exit with status 2 and print an error payload under --json
        """
        proof = self.write('bad.proof', '1 nosuch [a] []\n')
        status, output = self.call_error('pecr_check', 'nat', proof, '--json')
        self.assertEqual(status, 2)
        payload = json.loads(output)
        self.assertEqual(payload['code'], 'PecrParseError')
        self.assertEqual(payload['status'], 2)

    def test_105_unknown_application(self):
        status, _output = self.call_error('pecr_check', str(Path(self.tmp.name) / 'none.app'), 'x.proof')
        self.assertEqual(status, 2)

    def test_106_machine_flags(self):
        status, _output = self.call_error('pecr_check', 'nat', data('nat', 'proofs.proof'), '--mlst', '9,0,3,2')
        self.assertEqual(status, 2)


class ProveCommandTest(CommandTest):
    """
    Test pecr_prove
    """

    def test_100_pecr_thm1(self):
        output = self.call('pecr_prove', 'pecr', data('pecr', 'theorems.thm'), '--theorem', 'thm1')
        lines = output.strip().splitlines()
        self.assertEqual(lines[0], 'theorem thm1')
        self.assertTrue(lines[-1].split(None, 1)[1].startswith('equiv [a a] []'))

    def test_101_pecr_thm2(self):
        output = self.call('pecr_prove', 'pecr', data('pecr', 'theorems.thm'), '--theorem', 'thm2')
        self.assertTrue(output.strip().splitlines()[-1].split(None, 1)[1].startswith('equiv [b a] []'))

    def test_102_nat_thm5_output_file(self):
        """
        The written proof checks against the axioms
        """
        target = str(Path(self.tmp.name) / 'thm5.proof')
        self.call('pecr_prove', 'nat', data('nat', 'theorems.thm'), '--theorem', 'thm5', '--output', target)
        pack = load_pack('nat')
        theorem = next(t for t in parse_theorems(Path(data('nat', 'theorems.thm')).read_text(), pack.sig)
                       if t.label == 'thm5')
        document = parse_proof(Path(target).read_text(), pack.sig)
        self.assertTrue(ProofChecker(pack.sig, pack.fresh_store()).check_proof(document, theorem).accepted)

    def test_103_nat_thm6_preloaded(self):
        output = self.call('pecr_prove', 'nat', data('nat', 'theorems.thm'), '--theorem', 'thm6',
                           '--preload', data('nat', 'proofs.proof'))
        self.assertTrue(output.strip().splitlines()[-1].split(None, 1)[1].startswith('subbx [p q] []'))

    def test_104_false_goal(self):
        """
        lt [a a] is an instance of ord3 and is refused before searching
        """
        theorems = self.write('bad.thm', 'theorem bad\ntypen [a] []\n-----\nlt [a a] []\n')
        status, _output = self.call_error('pecr_prove', 'nat', theorems)
        self.assertEqual(status, 1)

    def test_105_budget(self):
        """
        One round is not enough for thm2
        """
        status, _output = self.call_error('pecr_prove', 'nat', data('nat', 'theorems.thm'), '--theorem', 'thm2',
                                          '--depth', '1')
        self.assertEqual(status, 3)

    def test_106_invalid_config(self):
        status, _output = self.call_error('pecr_prove', 'nat', data('nat', 'theorems.thm'), '--depth', '0')
        self.assertEqual(status, 2)


class ProverTest(CommonTest):
    """
    Test the prover service directly, with the preceding corpus theorems preloaded
    """

    def prove(self, pack, theorems, proofs, label: str):
        """
        Prove label, re-check the emitted proof and trace it back to the premise
        """
        store = preload_store(pack, theorems, proofs, before=label)
        self.assertNotIn(label, store)
        theorem = self.theorem(theorems, label)
        document = Prover(pack, store).prove(theorem)
        verdict = ProofChecker(pack.sig, store.copy()).check_proof(document, theorem)
        self.assertTrue(verdict.accepted, msg=str(verdict))
        trace = document.reduce()
        self.assertEqual(document.premise_count, len(theorem.premise))
        self.assertTrue(set(trace.final) <= set(range(1, document.premise_count + 1)), msg=str(trace.final))
        self.assertEqual(trace.redundant_lines, [])
        return document

    def test_100_pecr_thm1(self):
        self.prove(self.pecr, self.pecr_theorems, self.pecr_proofs, 'thm1')

    def test_101_pecr_thm2(self):
        self.prove(self.pecr, self.pecr_theorems, self.pecr_proofs, 'thm2')

    def test_102_pecr_thm5(self):
        self.prove(self.pecr, self.pecr_theorems, self.pecr_proofs, 'thm5')

    def test_103_pecr_thm6(self):
        self.prove(self.pecr, self.pecr_theorems, self.pecr_proofs, 'thm6')

    def test_104_nat_thm1(self):
        """
        subbx [p p] needs the outputs of lbx and ubx
        """
        document = self.prove(self.nat, self.nat_theorems, self.nat_proofs, 'thm1')
        self.assertIn('lbx', [line.statement.pn for line in document.lines])

    def test_105_nat_thm5(self):
        self.prove(self.nat, self.nat_theorems, self.nat_proofs, 'thm5')

    def test_106_nat_thm6(self):
        """
        Emitted proofs have no redundant lines
        """
        document = self.prove(self.nat, self.nat_theorems, self.nat_proofs, 'thm6')
        self.assertFalse(document.reduce().has_redundancy)
        self.assertEqual(len(document.premise), 1)


class MatrixCommandTest(CommandTest):
    """
    Test pecr_encode, pecr_decompose, pecr_ioeq and pecr_reduce
    """

    def test_100_encode_program(self):
        output = self.call('pecr_encode', 'pecr', data('pecr', 'derivation.prog'))
        self.assertEqual(output.strip(), '6 17 3 0\n4 17 16 0\n8 16 3 19')

    def test_101_encode_proof(self):
        output = self.call('pecr_encode', 'nat', data('nat', 'proofs.proof'), '--proof', '--theorem', 'thm2',
                           '--nx', '2', '--ny', '1', '--width', '6')
        lines = output.strip().splitlines()
        self.assertEqual(len(lines), 18)
        self.assertEqual(lines[0], '1 13 16 17 0 0 0 0 0 0 0 0')
        self.assertEqual(lines[17], '18 13 16 18 0 27 8 6 16 11 9 17')

    def test_102_decompose(self):
        lines = self.call('pecr_decompose', 'pecr', data('pecr', 'derivation.prog')).splitlines()
        self.assertEqual(lines[0], '1 q (binding)')
        self.assertIn('4 s (non-binding)', lines)

    def test_103_ioeq(self):
        repeated = self.write('repeated.prog', 'eqn [c c] []\n')
        distinct = self.write('distinct.prog', 'eqn [a b] []\n')
        output = self.call('pecr_ioeq', 'nat', repeated, distinct)
        lines = output.splitlines()
        self.assertEqual(lines[0], 'ioeq: true')
        self.assertEqual(sorted(lines[1:]), ['a -> c', 'b -> c'])
        output = self.call('pecr_ioeq', 'nat', distinct, repeated)
        self.assertTrue(output.startswith('ioeq: false'))

    def test_104_reduce(self):
        lines = self.call('pecr_reduce', 'nat', data('nat', 'proofs.proof'), '--theorem', 'thm2').splitlines()
        self.assertEqual(len(lines), 18)
        self.assertEqual(lines[0], '[6 8 9 11 16 17]')
        self.assertEqual(lines[15], '[1 2]')
        self.assertEqual(lines[16:], ['redundant lines: []', 'unused premises: []'])

    def test_105_encode_rejected_proof(self):
        """
        Only checked proofs are exported
        """
        proof = self.write('bad.proof', 'theorem t\n1 lt [a b] []\n2 lt [b a] [] le1 [1]\n')
        status, output = self.call_error('pecr_encode', 'nat', proof, '--proof')
        self.assertEqual(status, 1)
        self.assertEqual(output, '')


class RunCommandTest(CommandTest):
    """
    Test pecr_run and pecr_probe
    """

    def test_100_box(self):
        output = self.call('pecr_run', 'nat', data('nat', 'box.prog'), data('nat', 'box.va'))
        self.assertIn('v = [3 3]', output)
        self.assertNotIn('p = ', output)

    def test_101_orbit(self):
        output = self.call('pecr_run', 'nat', data('nat', 'orbit.prog'), data('nat', 'orbit.va'),
                           '--map', 'tent', '--N', '8')
        self.assertIn('v = [0]', output)

    def test_102_budget(self):
        status, _output = self.call_error('pecr_run', 'nat', data('nat', 'orbit.prog'), data('nat', 'orbit.va'),
                                          '--map', 'tent', '--N', '8', '--budget', '3')
        self.assertEqual(status, 3)

    def test_103_execution_error(self):
        va = self.write('lt.va', 'a = 7\nb = 5\nc = 5\n')
        status, output = self.call_error('pecr_run', 'nat', data('nat', 'lt.prog'), va)
        self.assertEqual(status, 1)
        self.assertIn('execution-error at item 1', output)

    def test_104_program_values(self):
        output = self.call('pecr_run', 'pecr', data('pecr', 'sub.prog'), data('pecr', 'sub.va'), '--json')
        self.assertEqual(json.loads(output)['status'], 'computable')

    def test_105_probe(self):
        output = self.call('pecr_probe', 'nat', 'ord1', '--trials', '0', '--exhaustive', '3')
        self.assertEqual(output.strip(), 'trials=64 premise_ok=4 both_ok=4 violations=0')

    def test_106_probe_theorem(self):
        output = self.call('pecr_probe', 'nat', 'thm2', '--theorems', data('nat', 'theorems.thm'),
                           '--proofs', data('nat', 'proofs.proof'), '--json')
        self.assertEqual(json.loads(output)['violations'], 0)

    def test_107_probe_unknown_rule(self):
        status, _output = self.call_error('pecr_probe', 'nat', 'thm9')
        self.assertEqual(status, 2)


class DynCommandTest(CommandTest):
    """
    Test pecr_dyn
    """

    def test_100_cycle(self):
        """
        3, 6, 4, 8, 0, 0 under the tent map with N=8
        """
        output = self.call('pecr_dyn', 'cycle', 'tent', '--N', '8', '--u0', '3')
        self.assertEqual(output.strip(), 'tcyc=4 pcyc=1')

    def test_101_iterate(self):
        output = self.call('pecr_dyn', 'iterate', 'tent', '--N', '8', '--u0', '3', '--n', '4', '--every', '2')
        self.assertEqual(output.splitlines(), ['0 3', '2 4', '4 0'])
        output = self.call('pecr_dyn', 'iterate', 'tent', '--N', '8', '--u0', '3', '--n', '3')
        self.assertEqual(output.strip(), '3 8')

    def test_102_certify(self):
        output = self.call('pecr_dyn', 'certify', 'tent', '--N', '64')
        self.assertTrue(output.startswith('certified'))
        status, _output = self.call_error('pecr_dyn', 'certify', 'shift', '--c', '1',
                                          '--lower', '0', '--upper', '64')
        self.assertEqual(status, 1)

    def test_103_bound_json(self):
        output = self.call('pecr_dyn', 'bound', 'involution', '--N', '8', '--lower', '1,2', '--upper', '3,5',
                           '--json')
        self.assertEqual(json.loads(output), {'a': [5, 3], 'b': [7, 6]})

    def test_104_no_cycle(self):
        status, _output = self.call_error('pecr_dyn', 'cycle', 'shift', '--u0', '1', '--limit', '5')
        self.assertEqual(status, 3)
