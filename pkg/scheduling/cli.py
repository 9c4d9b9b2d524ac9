"""
Punto de entrada `run(argv)`: despacha los subcomandos de la suite y devuelve
el código de salida en lugar de terminar el proceso.

    python -m scheduling.cli solve --instance tree.json --algorithm dp
"""
import logging
import os
import sys
from typing import List, Optional

import django
from django.core.management import call_command, get_commands, load_command_class
from django.core.management.base import CommandError

logger = logging.getLogger(__name__)

SUBCOMMANDS = ['solve', 'classify', 'generate', 'enumerate-antichains', 'bench', 'selftest']

EXIT_USAGE = 2


def _setup():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'parsched_project.settings')
    django.setup()


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    _setup()
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    if not argv or argv[0] not in SUBCOMMANDS:
        stderr.write(f'usage: parsched {{{",".join(SUBCOMMANDS)}}} [options]\n')
        return EXIT_USAGE

    name = argv[0].replace('-', '_')
    command = load_command_class(get_commands()[name], name)
    try:
        command.create_parser('parsched', argv[0]).parse_args(argv[1:])
    except CommandError as e:
        stderr.write(f'{e}\n')
        return EXIT_USAGE

    try:
        call_command(name, *argv[1:], stdout=stdout, stderr=stderr)
    except CommandError as e:
        stderr.write(f'{e}\n')
        return e.returncode
    return 0


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
