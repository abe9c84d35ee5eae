"""
Management command: python manage.py snake <subcommand> ...

Thin wrapper over dimers.cli; see ``python manage.py snake --help``.
"""

from django.core.management.base import BaseCommand, CommandError

from dimers import cli


class Command(BaseCommand):
    help = "Mixed dimer covers on snake graphs: counts, matrices, lattices, duality and networks."

    def add_arguments(self, parser):
        cli.add_subcommands(parser)

    def handle(self, *args, **options):
        status = cli.execute(options, self.stdout, self.stderr)
        if status != cli.EXIT_OK:
            raise CommandError("snake %s failed" % options['subcommand'], returncode=status)
