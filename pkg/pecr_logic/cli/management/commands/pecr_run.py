from django.utils.translation import gettext as _

from pecr_logic.applications.models import ExecutionStatus, render_value
from pecr_logic.applications.services import Evaluator, ValueAssignmentParser
from pecr_logic.cli.management.base import PecrCommand
from pecr_logic.cli.services import map_params
from pecr_logic.common.services import BudgetExhausted, ExecutionError
from pecr_logic.dynsys.services import get_map
from pecr_logic.proofs.services import parse_program


class Command(PecrCommand):
    help = 'Execute a zero-order program on a value assignment'

    def add_command_arguments(self, parser):
        parser.add_argument('program', help='Program file')
        parser.add_argument('va', help='Value assignment file of `label = value` lines')
        parser.add_argument('--budget', type=int, help='Deadline in atomic program executions')
        parser.add_argument('--map', default='identity', help='Map run by f, itf and bndf')
        parser.add_argument('--N', type=int, help='Map parameter N')
        parser.add_argument('--c', type=int, help='Map parameter c')

    def run(self, pack, **options):
        program = parse_program(self.read(options['program']), pack.sig)
        va = ValueAssignmentParser(pack.sig).parse(self.read(options['va']), program)
        evaluator = Evaluator(pack.sig, budget=options['budget'], f=get_map(options['map'], **map_params(options)))
        outcome = evaluator.execute(program, va)
        data = {
            'status': outcome.status.value,
            'outputs': {str(k): render_value(v) for k, v in outcome.outputs.items()},
            'failed_item': outcome.failed_item,
            'cause': outcome.cause,
            'steps': outcome.steps,
        }
        text = str(outcome)
        if outcome.outputs:
            text += '\n' + str(outcome.outputs)
        self.emit(data, text)
        if outcome.status is ExecutionStatus.BUDGET_EXHAUSTED:
            raise BudgetExhausted(outcome.cause)
        if outcome.status is ExecutionStatus.EXECUTION_ERROR:
            raise ExecutionError(_("item {}: {}").format(outcome.failed_item, outcome.cause))
