import json

from states.family import validate

from analysis.reports import ValidationReportSerializer

from ._base import PptkitCommand


class Command(PptkitCommand):
    help = "Check hermiticity, unit trace and positive semidefiniteness of a document."

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        self.add_tolerance_argument(parser)
        self.add_output_argument(parser)

    def run(self, **options):
        document = self.read_document(options)
        report = validate(document.validation_target(), self.tolerance(options))
        self.emit(json.dumps(ValidationReportSerializer(report).data, indent=2), options)
