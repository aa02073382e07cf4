from pecr_logic.cli.management.base import PecrCommand
from pecr_logic.matrices.models import matrix_to_text
from pecr_logic.matrices.services import MatrixCodec
from pecr_logic.proofs.services import parse_program


class Command(PecrCommand):
    help = 'Split the I/O matrix of a program into one matrix per I/O label'

    def add_command_arguments(self, parser):
        parser.add_argument('file', help='Program file')

    def run(self, pack, **options):
        decomposition = MatrixCodec(pack.sig).decompose_program(parse_program(self.read(options['file']), pack.sig))
        data, text = [], []
        for k, m in enumerate(decomposition, start=1):
            data.append({'label': str(m.label), 'id': m.label.id, 'binding': m.binding, 'matrix': m.matrix.tolist()})
            text.append('{} {} ({})'.format(k, m.label, 'binding' if m.binding else 'non-binding'))
            text.append(matrix_to_text(m.matrix))
        self.emit(data, '\n'.join(text))
