"""Console entry point: ``stg <train|parse|eval|inspect> ...``."""

import os
import sys
from typing import Optional, Sequence, TextIO

import django
from django.core.management import call_command
from django.core.management.base import CommandError


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Run one stg subcommand.

    Returns:
        0 on success, 1 on a usage error, 2 on a data or format error
    """
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "core.settings")
    django.setup()
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        call_command("stg", *argv, stdout=stdout, stderr=stderr)
    except CommandError as e:
        stderr.write(f"{e}\n")
        return e.returncode
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    return 0


def main() -> None:
    sys.exit(run())
