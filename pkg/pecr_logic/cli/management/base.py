"""
Base class of the pecr_* management commands
"""
import json

from django.core.management.base import BaseCommand, CommandError

from pecr_logic.cli.services import load_pack, read_text
from pecr_logic.common.serializers import ErrorSerializer
from pecr_logic.common.services import PecrServiceError
from pecr_logic.proofs.models import ApplicationPack


class PecrCommand(BaseCommand):
    """
    Adds --mach, --mlst and --json to every command and turns service errors into exit statuses:
    0 success, 1 rejection or runtime error, 2 parse or application error, 3 budget exhausted
    """
    requires_system_checks = []
    # Commands working without a proof context read --application instead
    takes_application = True

    def add_arguments(self, parser):
        if self.takes_application:
            parser.add_argument('application', help='Shipped application name (pecr, nat) or application file')
        else:
            parser.add_argument('--application', default='nat', help='Application supplying mnat')
        self.add_command_arguments(parser)
        parser.add_argument('--mach', default='', help='msym,mstr,mnat')
        parser.add_argument('--mlst', default='', help='nprem,npmax,nx,ny')
        parser.add_argument('--json', action='store_true', help='Print results as JSON')

    def add_command_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        self.options = options
        try:
            pack = load_pack(options['application'], options['mach'], options['mlst'])
            self.run(pack, **options)
        except PecrServiceError as e:
            if options['json']:
                self.stdout.write(json.dumps(ErrorSerializer.from_error(e).data))
            raise CommandError(e.message, returncode=e.status)

    def run(self, pack: ApplicationPack, **options):
        raise NotImplementedError

    def read(self, path: str) -> str:
        return read_text(path)

    def emit(self, data, text: str):
        """
        Print data as JSON under --json, text otherwise
        """
        if self.options['json']:
            self.stdout.write(json.dumps(data))
        else:
            self.stdout.write(text)
