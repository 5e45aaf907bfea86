from states.family import sample_qubit_qudit, sample_random
from states.named import (
    IsotropicSpec,
    WernerSpec,
    isotropic_eps_range,
    werner_eps_range,
)

from analysis.documents import DocumentKind, MatrixDocument
from analysis.serializers import render_document

from ._base import PptkitCommand


def _require(options, *names):
    missing = [f"--{name}" for name in names if options.get(name) is None]
    if missing:
        raise ValueError(f"missing required option(s): {', '.join(missing)}")


class Command(PptkitCommand):
    help = "Generate a Werner, isotropic or sampled family state as a JSON document."

    def add_arguments(self, parser):
        parser.add_argument(
            "kind",
            choices=[
                DocumentKind.WERNER,
                DocumentKind.ISOTROPIC,
                DocumentKind.FAMILY,
                DocumentKind.QUBIT_QUDIT,
            ],
        )
        parser.add_argument("--d", type=int, help="local dimension of Werner/isotropic states")
        parser.add_argument("--dA", type=int, help="Alice's dimension (family)")
        parser.add_argument("--dB", type=int, help="Bob's dimension (family, qubit_qudit)")
        parser.add_argument("--eps", type=float)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument(
            "--bias", type=float, default=0.5, help="entanglement bias in [0, 1] for samples"
        )
        self.add_output_argument(parser)

    def run(self, kind, **options):
        kind = DocumentKind(kind)
        if kind in (DocumentKind.WERNER, DocumentKind.ISOTROPIC):
            _require(options, "d", "eps")
            spec_class, eps_range = {
                DocumentKind.WERNER: (WernerSpec, werner_eps_range),
                DocumentKind.ISOTROPIC: (IsotropicSpec, isotropic_eps_range),
            }[kind]
            spec = spec_class(options["d"], options["eps"])
            if not spec.is_valid:
                lo, hi = eps_range(spec.d)
                raise ValueError(
                    f"eps={spec.eps} violates the PSD range [{lo}, {hi}] of {kind} states, d={spec.d}"
                )
            document = MatrixDocument(kind, (spec.d, spec.d), spec)
        elif kind == DocumentKind.FAMILY:
            _require(options, "dA", "dB")
            state = sample_random(
                options["dA"], options["dB"], options["seed"], entanglement_bias=options["bias"]
            )
            document = MatrixDocument(kind, state.dims, state)
        else:
            _require(options, "dB")
            state = sample_qubit_qudit(
                options["dB"], options["seed"], entanglement_bias=options["bias"]
            )
            document = MatrixDocument(kind, state.dims, state)
        self.emit(render_document(document), options)
