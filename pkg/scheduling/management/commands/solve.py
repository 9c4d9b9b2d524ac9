"""
Comando para resolver una instancia k-sched con el solver de su fila o uno forzado
"""
import json
import logging

from django.core.management.base import BaseCommand, CommandError

from scheduling.exceptions import SchedulingError
from scheduling.services import (
    ALGORITHM_CHOICES, EXIT_USAGE, command_error, load_for_command, solve_instance,
)

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Resuelve una instancia (JSON) y escribe el resultado como un objeto JSON'

    def add_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='Archivo JSON de la instancia')
        parser.add_argument(
            '--algorithm',
            choices=ALGORITHM_CHOICES,
            default='auto',
            help='Solver a usar (default: auto, el de la fila de la tabla)',
        )
        parser.add_argument('--cmax', type=int, help='Cota de makespan (sustituye a la de la instancia)')
        parser.add_argument('--trials', type=int, help='Coloraciones para color coding')
        parser.add_argument('--seed', type=int, help='Semilla de las coloraciones')
        parser.add_argument('--mode', choices=['faithful', 'lazy'], help='Modo de la DP de anticadenas')
        parser.add_argument('--emit-schedule', help='Archivo donde escribir el schedule encontrado')
        parser.add_argument('--pretty', action='store_true', help='Salida legible en lugar de JSON')

    def handle(self, *args, **options):
        inst = load_for_command(options['instance'])
        try:
            outcome = solve_instance(
                inst,
                algorithm=options['algorithm'],
                cmax=options['cmax'],
                trials=options['trials'],
                seed=options['seed'],
                mode=options['mode'],
            )
        except SchedulingError as e:
            logger.warning(f'solve falló: {e}')
            raise command_error(e)

        if options['emit_schedule']:
            self._emit_schedule(outcome, options['emit_schedule'])

        payload = outcome.to_dict()
        if not options['pretty']:
            self.stdout.write(json.dumps(payload))
            return

        row = outcome.result.row
        self.stdout.write(f'📋 Fila {row.row_id}: {row.problem} ({row.complexity.value})')
        self.stdout.write(f'⚙️  Algoritmo: {payload["algorithm"]}')
        if payload['feasible']:
            self.stdout.write(self.style.SUCCESS(
                f'✅ Factible: {payload["jobs_done"]} trabajos, makespan {payload["makespan"]}'
            ))
        else:
            self.stdout.write(self.style.WARNING('❌ Infactible: ningún schedule cumple las cotas'))

    def _emit_schedule(self, outcome, path):
        schedule = outcome.schedule_dict()
        if schedule is None:
            logger.info('Sin schedule que escribir: la instancia es infactible')
            return
        try:
            with open(path, 'w', encoding='utf-8') as handle:
                json.dump(schedule, handle, indent=2)
                handle.write('\n')
        except OSError as e:
            raise CommandError(f'cannot write schedule {path}: {e}', returncode=EXIT_USAGE)
