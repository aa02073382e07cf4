from django.utils.translation import gettext as _

from pecr_logic.applications.services import Evaluator, SoundnessProbe
from pecr_logic.cli.management.base import PecrCommand
from pecr_logic.cli.services import map_params, preload_store
from pecr_logic.common.services import ExecutionError, PecrParseError
from pecr_logic.dynsys.services import get_map
from pecr_logic.proofs.services import parse_proofs, parse_theorems


class Command(PecrCommand):
    help = 'Run a stored rule on random value assignments and count soundness violations'

    def add_command_arguments(self, parser):
        parser.add_argument('label', help='Axiom or theorem label')
        parser.add_argument('--theorems', help='.thm file, with --proofs, to probe checked theorems')
        parser.add_argument('--proofs', help='.proof file checked before probing')
        parser.add_argument('--trials', type=int, default=100)
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--exhaustive', type=int, help='Also enumerate natural numbers up to this bound')
        parser.add_argument('--map', default='identity', help='Map run by f, itf and bndf')
        parser.add_argument('--N', type=int, help='Map parameter N')
        parser.add_argument('--c', type=int, help='Map parameter c')

    def run(self, pack, **options):
        if options['proofs']:
            theorems = parse_theorems(self.read(options['theorems']), pack.sig) if options['theorems'] else []
            store = preload_store(pack, theorems, parse_proofs(self.read(options['proofs']), pack.sig))
        else:
            store = pack.store
        iep = store.get(options['label'])
        if iep is None:
            raise PecrParseError(_("No stored rule {}").format(options['label']))
        evaluator = Evaluator(pack.sig, f=get_map(options['map'], **map_params(options)))
        statistics = SoundnessProbe(pack.sig, evaluator).probe(
            iep, options['trials'], options['seed'], options['exhaustive'])
        text = [str(statistics)]
        text.extend('counterexample:\n{}'.format(va) for va in statistics.counterexamples)
        self.emit({
            'label': statistics.label,
            'trials': statistics.trials,
            'premise_ok': statistics.premise_ok,
            'both_ok': statistics.both_ok,
            'violations': statistics.violations,
        }, '\n'.join(text))
        if statistics.violations:
            raise ExecutionError(_("{} violations of {}").format(statistics.violations, iep.label))
