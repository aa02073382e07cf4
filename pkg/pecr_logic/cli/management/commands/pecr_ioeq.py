from pecr_logic.cli.management.base import PecrCommand
from pecr_logic.matrices.services import MatrixCodec
from pecr_logic.proofs.services import parse_program


class Command(PecrCommand):
    help = 'Test whether a program is I/O equivalent to a reference program'

    def add_command_arguments(self, parser):
        parser.add_argument('program', help='Program file')
        parser.add_argument('reference', help='Reference program file whose binding patterns must be kept')

    def run(self, pack, **options):
        q = parse_program(self.read(options['program']), pack.sig)
        p = parse_program(self.read(options['reference']), pack.sig)
        result = MatrixCodec(pack.sig).ioeq_check(q, p)
        witness = {str(k): str(v) for k, v in result.witness.items()}
        if result.ok:
            text = 'ioeq: true\n' + '\n'.join('{} -> {}'.format(k, v) for k, v in witness.items())
        else:
            text = 'ioeq: false ({})'.format(result.reason)
        self.emit({'ok': result.ok, 'witness': witness, 'reason': result.reason}, text.rstrip('\n'))
