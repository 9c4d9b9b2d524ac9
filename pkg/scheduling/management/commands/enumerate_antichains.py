"""
Comando para listar las anticadenas de profundidad acotada de una instancia
"""
import json

from django.core.management.base import BaseCommand, CommandError

from scheduling.core import validate_instance
from scheduling.exceptions import InvalidInstanceError
from scheduling.poset import PrecedenceGraph, enumerate_antichains, ids_of
from scheduling.services import EXIT_USAGE, command_error, load_for_command


class Command(BaseCommand):
    help = 'Enumera las anticadenas de G^t con profundidad <= k'

    def add_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='Archivo JSON de la instancia')
        parser.add_argument('--k', type=int, required=True, help='Cota de profundidad')
        parser.add_argument('--t', type=int, help='Slot del subgrafo G^t (default: todos los trabajos)')
        parser.add_argument('--pretty', action='store_true', help='Salida legible en lugar de JSON')

    def handle(self, *args, **options):
        inst = load_for_command(options['instance'])
        if options['k'] < 0:
            raise CommandError('--k must be non-negative', returncode=EXIT_USAGE)
        report = validate_instance(inst)
        if not report.ok:
            raise command_error(InvalidInstanceError(report))
        graph = PrecedenceGraph.from_instance(inst)

        t = options['t'] if options['t'] is not None else max(graph.rho, default=0)
        antichains = [ids_of(inst, mask) for mask in enumerate_antichains(graph, t, options['k'])]

        if not options['pretty']:
            self.stdout.write(json.dumps({
                't': t, 'k': options['k'], 'count': len(antichains), 'antichains': antichains,
            }))
            return

        self.stdout.write(f'🔍 G^{t} con profundidad <= {options["k"]}: {len(antichains)} anticadenas')
        for antichain in antichains:
            self.stdout.write(f'   • {{{", ".join(antichain)}}}')
