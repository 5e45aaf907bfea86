import json
import logging
import sys

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from analysis.serializers import parse_document
from linalg.hermitian import EigensolverError

logger = logging.getLogger(__name__)

INPUT_ERROR = 2
NUMERICAL_ERROR = 3


def describe(exc):
    if isinstance(exc, serializers.ValidationError):
        return f"invalid document: {json.dumps(exc.detail)}"
    return str(exc)


class PptkitCommand(BaseCommand):
    """
    Shared plumbing for the pptkit commands.

    Subclasses implement ``run``. Input errors exit with status 2, eigensolver
    failures with status 3.
    """

    stealth_options = ("stdin",)

    def add_tolerance_argument(self, parser):
        parser.add_argument(
            "--tol",
            type=float,
            default=None,
            help="PSD/PPT tolerance (default: PPTKIT['TOLERANCE'], env PPTKIT_TOL)",
        )

    def add_input_argument(self, parser):
        parser.add_argument(
            "--in",
            dest="input",
            default=None,
            help="document file to read (default: stdin)",
        )

    def add_output_argument(self, parser):
        parser.add_argument(
            "--out", default=None, help="file to write instead of stdout"
        )

    def tolerance(self, options):
        tol = options.get("tol")
        if tol is None:
            tol = settings.PPTKIT["TOLERANCE"]
        if tol < 0:
            raise ValueError(f"tolerance must be non-negative, got {tol}")
        return tol

    def read_document(self, options):
        if options.get("input"):
            with open(options["input"], encoding="utf-8") as handle:
                text = handle.read()
        else:
            text = (options.get("stdin") or sys.stdin).read()
        return parse_document(text)

    def emit(self, text, options):
        if options.get("out"):
            with open(options["out"], "w", encoding="utf-8") as handle:
                handle.write(text if text.endswith("\n") else text + "\n")
        else:
            self.stdout.write(text)

    def handle(self, *args, **options):
        try:
            self.run(*args, **options)
        except EigensolverError as exc:
            logger.error("%s: eigensolver failed after %s sweeps", self.command_name, exc.sweeps)
            raise CommandError(f"eigensolver failed: {exc}", returncode=NUMERICAL_ERROR) from exc
        except (ValueError, IndexError, OSError, serializers.ValidationError) as exc:
            logger.error("%s: %s", self.command_name, describe(exc))
            raise CommandError(describe(exc), returncode=INPUT_ERROR) from exc

    @property
    def command_name(self):
        return self.__module__.rsplit(".", 1)[-1]

    def run(self, *args, **options):
        raise NotImplementedError("subclasses of PptkitCommand must provide a run() method")
