"""
Comando para generar instancias desde reducciones o corpus aleatorios
"""
import json
import logging

from django.core.management.base import BaseCommand, CommandError

from generators.corpus import corpus, write_corpus
from generators.reductions import (
    gen_3coloring, gen_clique, gen_partition, gen_psi, gen_psi_2machine, load_source_graph,
)
from scheduling.core import dump_instance
from scheduling.exceptions import SchedulingError
from scheduling.services import EXIT_USAGE, command_error, solver_settings

logger = logging.getLogger(__name__)

KINDS = ['3col', 'clique', 'psi', 'psi2', 'partition', 'random']


class Command(BaseCommand):
    help = 'Genera una instancia (o un corpus) en formato JSON'

    def add_arguments(self, parser):
        parser.add_argument('kind', choices=KINDS, help='Tipo de generador')
        parser.add_argument('-o', '--output', required=True, help='Archivo (o directorio para random) de salida')
        parser.add_argument('--graph', help='Grafo fuente JSON (objetivo con chi para psi/psi2)')
        parser.add_argument('--pattern', help='Grafo patrón JSON (psi/psi2)')
        parser.add_argument('--clique-size', type=int, default=3, help='Tamaño del clique (default: 3)')
        parser.add_argument('--values', help='Valores de la partición separados por comas')
        parser.add_argument('--target', type=int, help='Objetivo de subset sum (partition)')
        parser.add_argument('--count', type=int, default=100, help='Instancias del corpus random (default: 100)')
        parser.add_argument('--seed', type=int, help='Semilla del corpus random')
        parser.add_argument('--pretty', action='store_true', help='Salida legible en lugar de JSON')

    def handle(self, *args, **options):
        kind = options['kind']
        try:
            if kind == 'random':
                summary = self._random(options)
            else:
                inst = self._build(kind, options)
                dump_instance(inst, options['output'])
                summary = {
                    'kind': kind, 'output': options['output'],
                    'jobs': inst.n, 'k': inst.k, 'cmax': inst.cmax,
                }
        except SchedulingError as e:
            raise command_error(e)
        except OSError as e:
            raise CommandError(str(e), returncode=EXIT_USAGE)

        logger.info(f'Generado {kind}: {summary}')
        if not options['pretty']:
            self.stdout.write(json.dumps(summary))
        elif kind == 'random':
            self.stdout.write(self.style.SUCCESS(f'✅ {summary["count"]} instancias en {summary["output"]}'))
        else:
            self.stdout.write(self.style.SUCCESS(
                f'✅ {kind}: {summary["jobs"]} trabajos, k={summary["k"]}, cmax={summary["cmax"]} -> {summary["output"]}'
            ))

    def _require(self, options, name):
        if not options[name]:
            raise CommandError(f'--{name} is required for {options["kind"]}', returncode=EXIT_USAGE)
        return options[name]

    def _build(self, kind, options):
        if kind == 'partition':
            raw = self._require(options, 'values')
            try:
                values = [int(value) for value in raw.split(',') if value.strip()]
            except ValueError:
                raise CommandError(f'--values must be comma-separated integers: {raw}', returncode=EXIT_USAGE)
            return gen_partition(values, options['target'])

        graph = load_source_graph(self._require(options, 'graph'))
        if kind == '3col':
            return gen_3coloring(graph)
        if kind == 'clique':
            return gen_clique(graph, options['clique_size'])

        pattern = load_source_graph(self._require(options, 'pattern'))
        if kind == 'psi':
            return gen_psi(graph, pattern)
        return gen_psi_2machine(graph, pattern)

    def _random(self, options):
        seed = options['seed'] if options['seed'] is not None else solver_settings()['DEFAULT_SEED']
        paths = write_corpus(options['output'], corpus(seed=seed, count=options['count']))
        return {'kind': 'random', 'output': options['output'], 'count': len(paths), 'seed': seed}
