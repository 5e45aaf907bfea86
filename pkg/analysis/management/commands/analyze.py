import json

from django.conf import settings

from analysis.reports import AnalysisReportSerializer, analyze_document

from ._base import PptkitCommand


class Command(PptkitCommand):
    help = "Partial-transpose spectrum, negativity and separability verdict of a document."

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        self.add_tolerance_argument(parser)
        self.add_output_argument(parser)

    def run(self, **options):
        document = self.read_document(options)
        report = analyze_document(
            document,
            self.tolerance(options),
            dense_max_dim=settings.PPTKIT["DENSE_SPECTRUM_MAX_DIM"],
        )
        self.emit(json.dumps(AnalysisReportSerializer(report).data, indent=2), options)
