from django.utils.translation import gettext as _

from pecr_logic.cli.management.base import PecrCommand
from pecr_logic.cli.serializers import ProverConfigSerializer
from pecr_logic.cli.services import Prover, preload_store
from pecr_logic.common.services import PecrParseError
from pecr_logic.proofs.services import parse_proofs, parse_theorems, print_proof


class Command(PecrCommand):
    help = 'Search a proof of one theorem by bounded forward chaining'

    def add_command_arguments(self, parser):
        parser.add_argument('theorems', help='.thm file holding the target')
        parser.add_argument('--theorem', help='Target label, the first theorem of the file by default')
        parser.add_argument('--preload', help='.proof file whose theorems preceding the target are stored first')
        parser.add_argument('--depth', type=int, help='Search rounds')
        parser.add_argument('--facts', type=int, help='Fact limit')
        parser.add_argument('--time', type=int, help='Time budget in seconds')
        parser.add_argument('--seed', type=int, help='Rule order seed')
        parser.add_argument('--output', help='Write the proof to this file')

    def run(self, pack, **options):
        serializer = ProverConfigSerializer.from_options(options)
        if not serializer.is_valid():
            raise PecrParseError(_("Invalid prover configuration: {}").format(serializer.errors))
        theorems = parse_theorems(self.read(options['theorems']), pack.sig)
        if not theorems:
            raise PecrParseError(_("No theorem in {}").format(options['theorems']))
        label = options['theorem'] or theorems[0].label
        targets = [theorem for theorem in theorems if theorem.label == label]
        if not targets:
            raise PecrParseError(_("No theorem {} in {}").format(label, options['theorems']))
        if options['preload']:
            documents = parse_proofs(self.read(options['preload']), pack.sig)
            store = preload_store(pack, theorems, documents, before=label)
        else:
            store = pack.fresh_store()
        document = Prover(pack, store, serializer.save()).prove(targets[0])
        text = print_proof(document)
        if options['output']:
            with open(options['output'], 'w') as f:
                f.write(text)
        self.emit({'label': document.label, 'proof': text}, text.rstrip('\n'))
