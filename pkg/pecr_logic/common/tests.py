"""
Common test cases
"""
from django.conf import settings
from django.test import SimpleTestCase

from pecr_logic.applications.services import ApplicationLoader
from pecr_logic.common.serializers import ErrorSerializer
from pecr_logic.common.services import BudgetExhausted, PecrParseError, PecrService, ProofRejected
from pecr_logic.proofs.services import StatementParser


class CommonTest(SimpleTestCase):
    """
    Loads the shipped applications and their corpora once per class
    """
    loader = None
    pecr = nat = None
    pecr_theorems = pecr_proofs = None
    nat_theorems = nat_proofs = None

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.loader = ApplicationLoader()
        cls.pecr, cls.pecr_theorems, cls.pecr_proofs = cls.loader.corpus('pecr')
        cls.nat, cls.nat_theorems, cls.nat_proofs = cls.loader.corpus('nat')

    def statement(self, text: str, pack=None):
        return StatementParser((pack or self.nat).sig.labels).parse(text)

    def theorem(self, theorems, label: str):
        return next(theorem for theorem in theorems if theorem.label == label)

    def proof(self, documents, label: str):
        return next(document for document in documents if document.label == label)


class ErrorTest(SimpleTestCase):
    """
    Test the error hierarchy and its serializer
    """

    def test_100_default_status(self):
        """
        Exit statuses: rejection 1, parse error 2, budget exhausted 3
        """
        self.assertEqual(ProofRejected().status, 1)
        self.assertEqual(PecrParseError().status, 2)
        self.assertEqual(BudgetExhausted().status, 3)

    def test_101_status_override(self):
        """
        Test status given at construction
        """
        error = ProofRejected('bad line', status=4, line=7)
        self.assertEqual(error.status, 4)
        self.assertEqual(error.line, 7)
        self.assertEqual(str(error), 'bad line')

    def test_102_error_serializer(self):
        """
        Test the JSON payload of an error
        """
        data = ErrorSerializer.from_error(PecrParseError('unexpected token')).data
        self.assertEqual(data['status'], 2)
        self.assertEqual(data['code'], 'PecrParseError')
        self.assertEqual(data['description'], 'unexpected token')

    def test_103_cached(self):
        """
        Builder runs once per key
        """
        calls = []
        service = PecrService()

        def builder():
            calls.append(1)
            return 'value'

        self.assertEqual(service.cached(builder, 'test_103'), 'value')
        self.assertEqual(service.cached(builder, 'test_103'), 'value')
        self.assertEqual(len(calls), 1)

    def test_104_no_persistence(self):
        """
        The project runs without a database or the auth apps
        """
        self.assertNotIn('django.contrib.auth', settings.INSTALLED_APPS)
        self.assertNotIn('django.contrib.contenttypes', settings.INSTALLED_APPS)
        self.assertEqual(settings.DATABASES['default']['ENGINE'], 'django.db.backends.dummy')
