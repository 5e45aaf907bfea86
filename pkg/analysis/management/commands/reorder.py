import json

from analysis.reports import ReorderReportSerializer, reorder_document

from ._base import PptkitCommand


class Command(PptkitCommand):
    help = "Reorder the basis so the partial transpose of a family state is block diagonal."

    def add_arguments(self, parser):
        self.add_input_argument(parser)
        self.add_output_argument(parser)

    def run(self, **options):
        report = reorder_document(self.read_document(options))
        self.emit(json.dumps(ReorderReportSerializer(report).data, indent=2), options)
