from django.utils.translation import gettext as _

from pecr_logic.cli.management.base import PecrCommand
from pecr_logic.common.services import ProofRejected
from pecr_logic.proofs.serializers import CheckVerdictSerializer
from pecr_logic.proofs.services import ProofChecker, parse_proofs, parse_theorems


class Command(PecrCommand):
    help = 'Check proofs against an application, in file order'

    def add_command_arguments(self, parser):
        parser.add_argument('files', nargs='+', help='.thm theorem files and .proof proof files')
        parser.add_argument('--theorem', help='Stop after this theorem')
        parser.add_argument('--irreducible', action='store_true',
                            help='Also report reducible premises of accepted theorems')

    def run(self, pack, **options):
        theorems, documents = [], []
        for path in options['files']:
            if path.endswith('.thm'):
                theorems.extend(parse_theorems(self.read(path), pack.sig))
            else:
                documents.extend(parse_proofs(self.read(path), pack.sig))
        if options['theorem']:
            labels = [document.label for document in documents]
            if options['theorem'] not in labels:
                raise ProofRejected(_("No proof of {}").format(options['theorem']))
            documents = documents[:labels.index(options['theorem']) + 1]
        statements = {theorem.label: theorem for theorem in theorems}
        checker = ProofChecker(pack.sig, pack.fresh_store(), check_irreducible=options['irreducible'])
        verdicts = []
        for document in documents:
            verdict = checker.check_proof(document, statements.get(document.label), commit=True)
            verdicts.append(verdict)
            if not verdict.accepted:
                break
        text = []
        for verdict in verdicts:
            text.append(str(verdict))
            text.extend('  warning: {}'.format(warning) for warning in verdict.warnings)
        self.emit(CheckVerdictSerializer(verdicts, many=True).data, '\n'.join(text))
        if verdicts and not verdicts[-1].accepted:
            raise ProofRejected(str(verdicts[-1]), line=verdicts[-1].failed_line)
