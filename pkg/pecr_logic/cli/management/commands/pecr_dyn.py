import numpy as np
from django.utils.translation import gettext as _

from pecr_logic.cli.management.base import PecrCommand
from pecr_logic.cli.services import map_params
from pecr_logic.common.services import BudgetExhausted, DynamicsError
from pecr_logic.dynsys.models import BoxRegion, as_state
from pecr_logic.dynsys.serializers import AxcCertificateSerializer, BoxRegionSerializer, CycleReportSerializer
from pecr_logic.dynsys.services import DiscreteDynamics, get_map, state_count

ACTIONS = ('iterate', 'bound', 'certify', 'cycle')


def int_list(value: str) -> np.ndarray:
    try:
        return as_state([int(v) for v in value.split(',')])
    except ValueError:
        raise DynamicsError(_("Expected comma separated integers, got '{}'").format(value))


class Command(PecrCommand):
    help = 'Iterate a discrete map, bound its range on a box, certify axc or detect a cycle'
    takes_application = False

    def add_command_arguments(self, parser):
        parser.add_argument('action', choices=ACTIONS)
        parser.add_argument('map', help='Registered map name: tent, identity, constant, involution, shift')
        parser.add_argument('--N', type=int, help='Map parameter N, also the default box [0 N]')
        parser.add_argument('--c', type=int, help='Map parameter c')
        parser.add_argument('--u0', help='Initial state, comma separated')
        parser.add_argument('--n', type=int, default=1, help='Number of steps')
        parser.add_argument('--every', type=int, help='Print the state every k steps')
        parser.add_argument('--lower', help='Lower box bound, comma separated')
        parser.add_argument('--upper', help='Upper box bound, comma separated')
        parser.add_argument('--limit', type=int, help='Steps searched for a cycle, the box state count by default')

    def box(self, options) -> BoxRegion:
        if options['lower'] and options['upper']:
            return BoxRegion(int_list(options['lower']), int_list(options['upper']))
        if options['N'] is None:
            raise DynamicsError(_("Give --lower and --upper, or --N for the box [0 N]"))
        size = int_list(options['u0']).shape if options['u0'] else (1,)
        return BoxRegion(np.zeros(size, dtype=np.int64), np.full(size, options['N'], dtype=np.int64))

    def u0(self, options) -> np.ndarray:
        if not options['u0']:
            raise DynamicsError(_("--u0 is required for {}").format(options['action']))
        return int_list(options['u0'])

    def run(self, pack, **options):
        dynamics = DiscreteDynamics(get_map(options['map'], **map_params(options)), pack.sig.mach.mnat)
        action = options['action']
        if action == 'iterate':
            trace = dynamics.iterate(self.u0(options), options['n'], options['every'])
            lines = trace.lines() or ['{} {}'.format(trace.steps, ' '.join(map(str, trace.final.tolist())))]
            self.emit({'steps': trace.steps, 'final': trace.final.tolist(),
                       'snapshots': [[t, u.tolist()] for t, u in trace.snapshots]}, '\n'.join(lines))
        elif action == 'bound':
            q = dynamics.bound_range(self.box(options))
            self.emit(BoxRegionSerializer(q).data, str(q))
        elif action == 'certify':
            certificate = dynamics.certify_axc(self.box(options))
            self.emit(AxcCertificateSerializer(certificate).data, str(certificate))
            if not certificate.certified:
                raise DynamicsError(certificate.reason)
        else:
            limit = options['limit'] or state_count(self.box(options), dynamics.mnat)
            report = dynamics.detect_cycle(self.u0(options), limit)
            if report is None:
                raise BudgetExhausted(_("No cycle within {} steps").format(limit))
            self.emit(CycleReportSerializer(report).data, str(report))
