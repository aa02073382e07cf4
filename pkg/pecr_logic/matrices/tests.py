import random

import numpy as np

from pecr_logic.common.services import MatrixShapeError
from pecr_logic.common.tests import CommonTest
from pecr_logic.matrices.models import matrix_from_text, matrix_to_text
from pecr_logic.matrices.services import AND, OR, MatrixCodec, decompose_io_matrix, gate
from pecr_logic.programs.models import (
    AppSignature, AtomicProgram, ConstantDescriptor, MachineParams, ProgramDescriptor, ProgramList,
)
from pecr_logic.proofs.services import parse_program


def reference_ioeq(q: ProgramList, p: ProgramList) -> bool:
    """
    Label conditions of I/O equivalence checked slot by slot
    """
    if len(q) != len(p):
        return False
    for a, b in zip(q, p):
        if a.pn != b.pn or len(a.x) != len(b.x) or len(a.y) != len(b.y):
            return False
    for m in range(len(p)):
        for i, label in enumerate(p[m].x):
            for k in range(len(p)):
                for j, other in enumerate(p[k].x):
                    if other == label and q[k].x[j] != q[m].x[i]:
                        return False
            for k in range(m):
                for j, other in enumerate(p[k].y):
                    if other == label and q[k].y[j] != q[m].x[i]:
                        return False
            if label.is_constant and q[m].x[i] != label:
                return False
    return True


class ProgramGenerator:
    """
    Seeded random valid programs over a small signature
    """
    arities = {'g0': (1, 0), 'g1': (2, 0), 'g2': (1, 1), 'g3': (3, 1), 'h': (2, 2)}

    def __init__(self, seed: int):
        self.rng = random.Random(seed)
        self.sig = AppSignature(
            'gen', MachineParams(128, 4096, 100, 9, 64, 3, 2), ('t',),
            (ConstantDescriptor('k', '0', 't'),),
            [ProgramDescriptor(name, ('t',) * nx, ('t',) * ny) for name, (nx, ny) in self.arities.items()])
        self.labels = self.sig.labels

    def program(self, n: int = None) -> ProgramList:
        n = n or self.rng.randint(1, 6)
        pool = [self.labels.intern(text) for text in 'abcd'] + [self.labels.intern('k')]
        fresh = iter(self.labels.intern(text) for text in 'efghijlmnopqrstuvwxyz')
        items = []
        for _m in range(n):
            name = self.rng.choice(list(self.arities))
            nx, ny = self.arities[name]
            x = tuple(self.rng.choice(pool) for _i in range(nx))
            y = tuple(next(fresh) for _j in range(ny))
            pool.extend(y)
            items.append(AtomicProgram(name, x, y))
        return ProgramList(tuple(items))

    def variant(self, p: ProgramList) -> ProgramList:
        """
        p under a random, possibly merging, relabeling, sometimes with one cell replaced
        """
        targets = [self.labels.intern(text) for text in 'abcdefghij'] + [self.labels.intern('k')]
        mapping = {label: self.rng.choice(targets) for item in p for label in item.labels if label.is_variable}
        if self.rng.random() < 0.3:
            mapping = {label: label for label in mapping}
        q = [item.rename(mapping) for item in p]
        if self.rng.random() < 0.5:
            m = self.rng.randrange(len(q))
            cells = list(q[m].labels)
            i = self.rng.randrange(len(cells))
            cells[i] = self.rng.choice(targets)
            nx = len(q[m].x)
            q[m] = AtomicProgram(q[m].pn, tuple(cells[:nx]), tuple(cells[nx:]))
        return ProgramList(tuple(q))


class GateTest(CommonTest):
    """
    Test AND/OR gates
    """

    def test_100_square_example(self):
        u = np.array([[1, 1, 0], [0, 1, 0], [1, 0, 0]])
        v = np.array([[0, 1, 0], [1, 1, 0], [1, 0, 1]])
        self.assertEqual(gate(u, v, AND).tolist(), [[0, 1, 0], [0, 1, 0], [1, 0, 0]])
        self.assertEqual(gate(u, v, OR).tolist(), [[1, 1, 0], [1, 1, 0], [1, 0, 1]])

    def test_101_rectangular_example(self):
        u = np.array([[1, 1, 1, 0], [1, 0, 0, 1], [0, 1, 0, 1]])
        v = np.array([[0, 1, 0, 0], [0, 1, 1, 0], [0, 0, 0, 1]])
        self.assertEqual(gate(u, v, AND).tolist(), [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]])
        self.assertEqual(gate(u, v, OR).tolist(), [[1, 1, 1, 0], [1, 1, 1, 1], [0, 1, 0, 1]])

    def test_102_idempotence(self):
        u = np.array([[1, 0], [0, 1]])
        self.assertEqual(gate(u, u, AND).tolist(), u.tolist())
        self.assertEqual(gate(u, u, OR).tolist(), u.tolist())

    def test_103_errors(self):
        """
        Shape mismatch, non binary operand and unknown mode
        """
        with self.assertRaises(MatrixShapeError):
            gate(np.zeros((2, 2)), np.zeros((2, 3)))
        with self.assertRaises(MatrixShapeError):
            gate(np.array([[2]]), np.array([[1]]))
        with self.assertRaises(MatrixShapeError):
            gate(np.array([[1]]), np.array([[1]]), 'xor')


class CodecTest(CommonTest):
    """
    Test program encoding and decomposition
    """

    def test_100_derivation_program(self):
        """
        Test the integer encoding of the derivation program
        """
        program = parse_program(self.loader.read('pecr', 'derivation.prog'), self.pecr.sig)
        matrix = MatrixCodec(self.pecr.sig).encode_program(program)
        self.assertEqual(matrix.tolist(), [[6, 17, 3, 0], [4, 17, 16, 0], [8, 16, 3, 19]])
        self.assertEqual(matrix.pn_ids, [6, 4, 8])

    def test_101_round_trip(self):
        """
        decode(encode(p)) = p for every corpus proof program
        """
        for pack, documents in ((self.pecr, self.pecr_proofs), (self.nat, self.nat_proofs)):
            codec = MatrixCodec(pack.sig)
            for document in documents:
                self.assertEqual(codec.decode_program(codec.encode_program(document.program)), document.program)

    def test_102_matrix_text(self):
        rows = np.array([[6, 17, 3, 0], [4, 17, 16, 0]])
        text = matrix_to_text(rows)
        self.assertEqual(text, '6 17 3 0\n4 17 16 0')
        self.assertEqual(matrix_from_text(text).tolist(), rows.tolist())

    def test_103_axc_decomposition(self):
        """
        The axc I/O matrix splits into 6 matrices, the last one non binding
        """
        iep = self.nat.store.get('axc')
        decomposition = MatrixCodec(self.nat.sig).decompose_program(iep.program)
        self.assertEqual([label.id for label in decomposition.lio], [16, 17, 21, 261, 14, 23])
        self.assertEqual([m.binding for m in decomposition], [True, True, True, True, True, False])
        io = MatrixCodec(self.nat.sig).encode_program(iep.program).io.rows
        self.assertEqual(decomposition.reconstruct().tolist(), io.tolist())
        for m in decomposition:
            self.assertEqual((m.template * m.label.id).tolist(), m.matrix.tolist())
        self.assertEqual(decomposition.for_label(self.nat.sig.labels.intern('w')).cells, 1)

    def test_104_small_decompositions(self):
        labels = self.nat.sig.labels
        single = decompose_io_matrix(np.array([[5, 0, 0]]), labels)
        self.assertEqual(len(single), 1)
        self.assertFalse(single.matrices[0].binding)
        repeated = decompose_io_matrix(np.array([[3, 3, 0]]), labels)
        self.assertEqual(len(repeated), 1)
        self.assertTrue(repeated.matrices[0].binding)

    def test_105_random_reconstruction(self):
        """
        The binding matrices sum to the I/O matrix
        """
        generator = ProgramGenerator(7)
        codec = MatrixCodec(generator.sig)
        for _case in range(300):
            p = generator.program()
            decomposition = codec.decompose_program(p)
            self.assertEqual(decomposition.reconstruct().tolist(), codec.encode_program(p).io.rows.tolist())


class IoeqTest(CommonTest):
    """
    Test I/O equivalence
    """

    def program(self, *lines, pack=None):
        pack = pack or self.nat
        return ProgramList(tuple(self.statement(line, pack) for line in lines))

    def test_100_asymmetry(self):
        """
        A repetition in the tested program is allowed, one in the reference must be kept
        """
        codec = MatrixCodec(self.nat.sig)
        q, p = self.program('eqn [c c] []'), self.program('eqn [a b] []')
        self.assertTrue(codec.ioeq_check(q, p))
        self.assertFalse(codec.ioeq_check(p, q))

    def test_101_relabeled_derivation(self):
        codec = MatrixCodec(self.pecr.sig)
        p = self.program('ext [q c] []', 'sub [q p] []', 'conc [p c] [s]', pack=self.pecr)
        q = self.program('ext [m n] []', 'sub [m o] []', 'conc [o n] [t]', pack=self.pecr)
        result = codec.ioeq_check(q, p)
        self.assertTrue(result)
        self.assertEqual({str(k): str(v) for k, v in result.witness.items()},
                         {'q': 'm', 'c': 'n', 'p': 'o', 's': 't'})
        self.assertTrue(codec.ioeq_check(p, q))

    def test_102_constants(self):
        """
        Constants of the reference are kept under the same constant
        """
        codec = MatrixCodec(self.nat.sig)
        self.assertFalse(codec.ioeq_check(self.program('lt [a 1] []'), self.program('lt [a 0] []')))
        self.assertTrue(codec.ioeq_check(self.program('lt [0 1] []'), self.program('lt [a 1] []')))

    def test_103_names_and_lengths(self):
        codec = MatrixCodec(self.nat.sig)
        self.assertFalse(codec.ioeq_check(self.program('lt [a b] []'), self.program('eqn [a b] []')))
        self.assertFalse(codec.ioeq_check(self.program('lt [a b] []', 'lt [b c] []'), self.program('lt [a b] []')))

    def test_104_reference_oracle(self):
        """
        Matrix form and slot conditions agree on 1000 seeded pairs
        """
        generator = ProgramGenerator(2024)
        codec = MatrixCodec(generator.sig)
        outcomes = set()
        for _case in range(1000):
            p = generator.program()
            q = generator.variant(p)
            expected = reference_ioeq(q, p)
            outcomes.add(expected)
            self.assertEqual(bool(codec.ioeq_check(q, p)), expected, msg='{}\n vs\n{}'.format(q, p))
        self.assertEqual(outcomes, {True, False})

    def test_105_constructed_asymmetric_pairs(self):
        """
        Merging every variable keeps equivalence one way only
        """
        generator = ProgramGenerator(99)
        codec = MatrixCodec(generator.sig)
        a, b = generator.labels.intern('a'), generator.labels.intern('b')
        for _case in range(60):
            p = ProgramList.of(AtomicProgram('g1', (a, b), ())) + generator.program(generator.rng.randint(1, 5))
            q = ProgramList(tuple(item.rename({label: a for label in item.labels if label.is_variable})
                                  for item in p))
            self.assertTrue(reference_ioeq(q, p))
            self.assertTrue(codec.ioeq_check(q, p))
            self.assertFalse(reference_ioeq(p, q))
            self.assertFalse(codec.ioeq_check(p, q))

    def test_106_reflexive_and_transitive(self):
        generator = ProgramGenerator(5)
        codec = MatrixCodec(generator.sig)
        for _case in range(200):
            p = generator.program()
            self.assertTrue(codec.ioeq_check(p, p))
            q = generator.variant(p)
            r = generator.variant(q)
            if codec.ioeq_check(q, p) and codec.ioeq_check(r, q):
                self.assertTrue(codec.ioeq_check(r, p))
