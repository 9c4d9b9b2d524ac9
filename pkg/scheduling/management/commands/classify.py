"""
Comando para clasificar una instancia según la tabla de complejidad
"""
import json

from django.core.management.base import BaseCommand

from scheduling.exceptions import SchedulingError
from scheduling.services import classify_instance, command_error, load_for_command


class Command(BaseCommand):
    help = 'Muestra la fila, la clase de complejidad y el solver de una instancia'

    def add_arguments(self, parser):
        parser.add_argument('--instance', required=True, help='Archivo JSON de la instancia')
        parser.add_argument('--pretty', action='store_true', help='Salida legible en lugar de JSON')

    def handle(self, *args, **options):
        inst = load_for_command(options['instance'])
        try:
            info = classify_instance(inst)
        except SchedulingError as e:
            raise command_error(e)

        if not options['pretty']:
            self.stdout.write(json.dumps(info))
            return

        self.stdout.write(f'📋 Fila {info["row"]}: {info["problem"]}')
        self.stdout.write(f'📊 Clase: {info["class"]} (tipo {info["result_type"]}, {info["runtime"]})')
        self.stdout.write(f'⚙️  Algoritmo: {info["algorithm"]}')
        if info['bound_note']:
            self.stdout.write(self.style.WARNING(f'⚠️  {info["bound_note"]}'))
