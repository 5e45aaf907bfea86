import csv
import io
import re

from django.conf import settings

from analysis.documents import DocumentKind
from analysis.reports import SWEEP_COLUMNS, parse_eps_grid, sweep

from ._base import PptkitCommand

# eps grids such as -1:1/3:41 start with a dash but are values
NEGATIVE_GRID = re.compile(r"^-[\d.]")


class Command(PptkitCommand):
    help = (
        "Sweep eps for Werner or isotropic states and write a CSV of the minimal "
        "partial-transpose eigenvalue, negativity and verdict."
    )

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser._negative_number_matcher = NEGATIVE_GRID
        return parser

    def add_arguments(self, parser):
        parser.add_argument("kind", choices=[DocumentKind.WERNER, DocumentKind.ISOTROPIC])
        parser.add_argument("--d", type=int, required=True)
        parser.add_argument(
            "--eps-grid",
            required=True,
            help="START:STOP:NUM, inclusive; fractions such as -1/3 are accepted",
        )
        parser.add_argument(
            "--workers",
            type=int,
            default=None,
            help="worker threads (default: PPTKIT['SWEEP_WORKERS'])",
        )
        self.add_tolerance_argument(parser)
        self.add_output_argument(parser)

    def run(self, kind, **options):
        grid = parse_eps_grid(options["eps_grid"])
        workers = options["workers"] or settings.PPTKIT["SWEEP_WORKERS"]
        rows = sweep(DocumentKind(kind), options["d"], grid, self.tolerance(options), workers)

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        writer.writerows(row.as_row() for row in rows)
        self.emit(buffer.getvalue().rstrip("\n"), options)
