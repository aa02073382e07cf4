from django.utils.translation import gettext as _

from pecr_logic.applications.services import BUILTIN_APPS, ApplicationLoader
from pecr_logic.cli.management.base import PecrCommand
from pecr_logic.common.services import PecrParseError, ProofRejected
from pecr_logic.matrices.models import matrix_to_text
from pecr_logic.matrices.services import MatrixCodec
from pecr_logic.proofs.services import check_proofs, export_proof_matrix, load_rule_ids, parse_program, parse_proofs


class Command(PecrCommand):
    help = 'Encode a program, or with --proof a proof, as an integer matrix'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Program file, or proof file with --proof')
        parser.add_argument('--proof', action='store_true', help='Export a proof matrix')
        parser.add_argument('--theorem', help='Proof label, the first proof of the file by default')
        parser.add_argument('--rule-ids', dest='rule_ids',
                            help='`label id` fixture, the shipped one of the application by default')
        parser.add_argument('--nx', type=int, help='Input width')
        parser.add_argument('--ny', type=int, help='Output width')
        parser.add_argument('--width', type=int, help='Connection list width of proof rows')

    def run(self, pack, **options):
        text = self.read(options['file'])
        if not options['proof']:
            matrix = MatrixCodec(pack.sig).encode_program(parse_program(text, pack.sig), options['nx'], options['ny'])
            self.emit(matrix.tolist(), matrix.to_text())
            return
        documents = parse_proofs(text, pack.sig)
        if not documents:
            raise PecrParseError(_("No proof in {}").format(options['file']))
        index = 0
        if options['theorem']:
            labels = [document.label for document in documents]
            if options['theorem'] not in labels:
                raise PecrParseError(_("No proof {} in {}").format(options['theorem'], options['file']))
            index = labels.index(options['theorem'])
        # Earlier proofs of the file supply the theorems the exported one may cite
        verdicts = check_proofs(pack, [], documents[:index + 1])
        if not verdicts[-1].accepted:
            raise ProofRejected(str(verdicts[-1]), line=verdicts[-1].failed_line)
        if options['rule_ids']:
            rule_ids = load_rule_ids(self.read(options['rule_ids']))
        elif pack.name in BUILTIN_APPS:
            rule_ids = load_rule_ids(ApplicationLoader().read(pack.name, '{}.ruleids'.format(pack.name)))
        else:
            raise PecrParseError(_("--rule-ids is required for {}").format(pack.name))
        rows = export_proof_matrix(documents[index], pack.sig, rule_ids, options['nx'], options['ny'], options['width'])
        self.emit(rows.tolist(), matrix_to_text(rows))
