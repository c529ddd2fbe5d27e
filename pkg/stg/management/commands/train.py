from django.core.management.base import CommandError

from stg.services.model_store import save_model
from stg.services.training import train_model

from ._base import DATA_ERROR, StgCommand, parse_weights


class Command(StgCommand):
    help = "Estimate a model from a hand-parsed treebank"

    def add_arguments(self, parser):
        parser.add_argument("--corpus", required=True, help="Treebank to estimate from")
        parser.add_argument("--out", required=True, help="Model file to write")
        parser.add_argument("--lambda", dest="weights", type=parse_weights, help="Blend weights w,a,b,p")
        parser.add_argument("--k", type=float, help="Count constant for the word weight")
        parser.add_argument("--tau", type=float, help="Paradigm merge threshold in bits")
        self.add_root_argument(parser)
        self.add_strictness_arguments(parser)

    def handle(self, *args, **options):
        stg_settings = self.load_settings(options)
        root = self.root_category(stg_settings)
        corpus = self.read_corpus(options["corpus"], root, stg_settings.corpus.strict)
        if not len(corpus):
            raise CommandError(f"{options['corpus']} holds no valid sentences", returncode=DATA_ERROR)

        model = train_model(corpus, stg_settings.estimation, root)
        try:
            save_model(model, options["out"])
        except OSError as e:
            raise CommandError(f"Cannot write model {options['out']}: {e}", returncode=DATA_ERROR)
        self.log_success(
            f"Trained on {len(corpus)} sentences ({corpus.token_count} tokens), "
            f"{len(model.counts)} lexemes; model written to {options['out']}"
        )
