"""
Comando que ejecuta las comprobaciones cruzadas entre solvers
"""
from django.core.management.base import BaseCommand, CommandError

from scheduling.exceptions import SchedulingError
from scheduling.selftest import FULL, QUICK, run_selftest
from scheduling.services import command_error, solver_settings


class Command(BaseCommand):
    help = 'Verifica que todos los solvers coinciden con el oráculo en el corpus incorporado'

    def add_arguments(self, parser):
        parser.add_argument('--seed', type=int, help='Semilla del corpus (default: PARSCHED_SEED)')
        parser.add_argument(
            '--count', type=int,
            help=f'Instancias del corpus (default: {QUICK.corpus}, {FULL.corpus} con --full)',
        )
        parser.add_argument(
            '--full', action='store_true',
            help=f'{FULL.convolutions} convoluciones con k <= {FULL.max_k} y '
                 f'{FULL.moore_inputs} entradas de Moore con {FULL.moore_n} trabajos',
        )

    def handle(self, *args, **options):
        seed = options['seed'] if options['seed'] is not None else solver_settings()['DEFAULT_SEED']
        sizes = FULL if options['full'] else QUICK
        count = options['count'] if options['count'] is not None else sizes.corpus
        self.stdout.write(f'🔍 Selftest con {count} instancias (seed={seed})...')

        try:
            results = run_selftest(seed=seed, count=count, progress=self._report, sizes=sizes)
        except SchedulingError as e:
            raise command_error(e)

        failed = [result for result in results if not result.passed]
        if failed:
            raise CommandError(f'{len(failed)} de {len(results)} comprobaciones fallaron', returncode=1)
        self.stdout.write(self.style.SUCCESS(f'✅ {len(results)} comprobaciones superadas'))

    def _report(self, result):
        if result.passed:
            self.stdout.write(f'   ✅ {result.name}: {result.checked} casos')
            return
        self.stdout.write(self.style.ERROR(f'   ❌ {result.name}: {len(result.failures)} fallos'))
        for failure in result.failures[:10]:
            self.stdout.write(f'      • {failure}')
