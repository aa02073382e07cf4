from django.utils.translation import gettext as _

from pecr_logic.cli.management.base import PecrCommand
from pecr_logic.common.services import PecrParseError
from pecr_logic.proofs.serializers import ReductionTraceSerializer
from pecr_logic.proofs.services import parse_proofs, reduce_connection_lists


def _bracket(values) -> str:
    return '[' + ' '.join(str(v) for v in values) + ']'


class Command(PecrCommand):
    help = 'Trace connection lists from the conclusion back to the premise'

    def add_command_arguments(self, parser):
        parser.add_argument('proofs', help='.proof file')
        parser.add_argument('--theorem', help='Proof label, the first proof of the file by default')

    def run(self, pack, **options):
        documents = parse_proofs(self.read(options['proofs']), pack.sig)
        if options['theorem']:
            documents = [document for document in documents if document.label == options['theorem']]
            if not documents:
                raise PecrParseError(_("No proof {} in {}").format(options['theorem'], options['proofs']))
        trace = reduce_connection_lists(documents[0])
        text = [_bracket(step) for step in trace.steps]
        text.append('redundant lines: {}'.format(_bracket(trace.redundant_lines)))
        text.append('unused premises: {}'.format(_bracket(trace.unused_premises)))
        self.emit(ReductionTraceSerializer(trace.as_dict()).data, '\n'.join(text))
