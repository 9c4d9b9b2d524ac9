"""
Comando para ejecutar el benchmark sobre un directorio de instancias
"""
import json
import logging

from django.core.management.base import BaseCommand, CommandError

from benchmarks.harness import corpus_paths, run_bench, store_records, summarize, write_csv
from scheduling.exceptions import SchedulingError
from scheduling.services import ALGORITHM_CHOICES, EXIT_USAGE, build_options, command_error

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = 'Resuelve todas las instancias de un corpus y escribe un CSV de resultados'

    def add_arguments(self, parser):
        parser.add_argument('--corpus', required=True, help='Directorio con instancias JSON')
        parser.add_argument('--out', required=True, help='Archivo CSV de salida')
        parser.add_argument('--algorithm', choices=ALGORITHM_CHOICES, default='auto',
                            help='Solver a usar (default: auto)')
        parser.add_argument('--workers', type=int, default=1, help='Procesos en paralelo (default: 1)')
        parser.add_argument('--seed', type=int, help='Semilla de color coding')
        parser.add_argument('--trials', type=int, help='Coloraciones por instancia')
        parser.add_argument('--mode', choices=['faithful', 'lazy'], help='Modo de la DP de anticadenas')
        parser.add_argument('--store', action='store_true', help='Guarda cada fila como BenchRecord')
        parser.add_argument('--pretty', action='store_true', help='Salida legible en lugar de JSON')

    def handle(self, *args, **options):
        paths = corpus_paths(options['corpus'])
        if not paths:
            raise CommandError(f'no instance JSON files in {options["corpus"]}', returncode=EXIT_USAGE)
        if options['workers'] < 1:
            raise CommandError('--workers must be at least 1', returncode=EXIT_USAGE)

        try:
            solve_options = build_options(options['trials'], options['seed'], options['mode'])
            records = run_bench(paths, solve_options, options['algorithm'], options['workers'])
        except SchedulingError as e:
            raise command_error(e)

        try:
            write_csv(records, options['out'])
        except OSError as e:
            raise CommandError(f'cannot write {options["out"]}: {e}', returncode=EXIT_USAGE)

        summary = summarize(records)
        summary['out'] = options['out']
        summary['stored'] = store_records(records) if options['store'] else 0

        if not options['pretty']:
            self.stdout.write(json.dumps(summary))
            return
        self.stdout.write(f'📊 {summary["instances"]} instancias: '
                          f'{summary["feasible"]} factibles, {summary["infeasible"]} infactibles')
        if summary['errors']:
            self.stdout.write(self.style.WARNING(f'⚠️  {summary["errors"]} con errores (ver columna status)'))
        if summary['stored']:
            self.stdout.write(f'💾 {summary["stored"]} registros guardados')
        self.stdout.write(self.style.SUCCESS(f'✅ CSV escrito en {summary["out"]}'))
