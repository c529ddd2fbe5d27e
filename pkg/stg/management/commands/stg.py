import importlib
import pkgutil
from typing import Dict, Type

from django.core.management.base import BaseCommand, CommandError

from ._base import USAGE_ERROR, StgCommand


def discover_subcommands() -> Dict[str, Type[StgCommand]]:
    """Subcommand classes of the sibling modules, keyed by kebab-case name."""
    package = importlib.import_module(__package__)
    found: Dict[str, Type[StgCommand]] = {}
    for info in sorted(pkgutil.iter_modules(package.__path__), key=lambda m: m.name):
        if info.name.startswith("_") or info.name == __name__.rsplit(".", 1)[-1]:
            continue
        module = importlib.import_module(f"{__package__}.{info.name}")
        command = getattr(module, "Command", None)
        if isinstance(command, type) and issubclass(command, StgCommand):
            found[info.name.replace("_", "-")] = command
    return found


class Command(BaseCommand):
    help = "State-transition grammar parser: train, parse, eval, inspect"

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        self.subcommands = discover_subcommands()
        subparsers = parser.add_subparsers(title="subcommands", dest="subcommand")
        for name, command_class in self.subcommands.items():
            command_class().add_arguments(subparsers.add_parser(name, help=command_class.help))
        return parser

    def handle(self, *args, **options):
        name = options["subcommand"]
        if not name:
            self.print_help("manage.py", "stg")
            raise CommandError("missing subcommand", returncode=USAGE_ERROR)
        command_class = self.subcommands.get(name)
        if command_class is None:
            raise CommandError(f"unknown subcommand {name}", returncode=USAGE_ERROR)
        command = command_class(stdout=self.stdout._out, stderr=self.stderr._out, no_color=options["no_color"])
        command.handle(*args, **options)
